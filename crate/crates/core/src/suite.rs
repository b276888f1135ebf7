//! The end-to-end verification suite behind `verify-all`.
//!
//! Criteria run in a fixed order. Most are hard pass/fail checks; the
//! connected-sum sweep is an adjudication report whose criterion is that the
//! certificate is complete and agrees with a serial recomputation, whatever
//! it finds.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::RingSpec;
use crate::commands::{self, Report};
use crate::endo::{compare_table1, lefschetz, validate_ring_hom, GeneratorMatrix};
use crate::error::Result;
use crate::fpp::{crosscheck_minors_vs_engine, sweep_fpp, verify_trace_claims, FppCertificate, SweepMode, MAX_EXCEPTIONAL};
use crate::gf2::{matrix_space_size, Gf2Matrix, DEFAULT_ENUMERATION_CAP_BITS};
use crate::sympow::{euler_sym_square, SimplicialComplex, DEFAULT_POSET_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionKind {
    Hard,
    Adjudication,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub kind: CriterionKind,
    pub pass: bool,
    pub summary: String,
    pub details: Value,
}

pub const CRITERIA: [(u8, &str, CriterionKind); 8] = [
    (1, "ring structure", CriterionKind::Hard),
    (2, "ring axioms and Poincaré duality", CriterionKind::Hard),
    (3, "minor trace claims, exhaustive", CriterionKind::Hard),
    (4, "minor formula vs tensor engine", CriterionKind::Hard),
    (5, "connected-sum sweep certificate", CriterionKind::Adjudication),
    (6, "symmetric-square formula", CriterionKind::Hard),
    (7, "symmetric-square simplicial oracle", CriterionKind::Hard),
    (8, "determinism and parallel soundness", CriterionKind::Hard),
];

/// Generator matrix of the cyclic permutation `x1 ↦ x2 ↦ x3 ↦ x1`.
pub fn cyclic_probe() -> Gf2Matrix {
    "010\n001\n100\n".parse().expect("valid rows")
}

fn outcome(id: u8, pass: bool, summary: String, details: Value) -> CriterionOutcome {
    let (_, name, kind) = CRITERIA[id as usize - 1];
    CriterionOutcome {
        id,
        name,
        kind,
        pass,
        summary,
        details,
    }
}

fn ring_structure() -> Result<CriterionOutcome> {
    let r = commands::ring_describe(RingSpec::RpSum { n: 3, k: 2 })?;
    let dims: Vec<usize> = serde_json::from_value(r.results["graded_dims"].clone()).expect("dims");
    let chi = r.results["euler"].as_i64().expect("euler");
    let pass = dims == [1, 3, 3, 3, 1] && chi == -1;
    Ok(outcome(
        1,
        pass,
        format!("rpsum:n=3,k=2 graded dimensions {dims:?}, χ = {chi}"),
        json!({ "graded_dims": dims, "euler": chi }),
    ))
}

fn ring_axioms() -> Result<CriterionOutcome> {
    let specs = (1..=4)
        .map(|n| RingSpec::RpSum { n, k: 2 })
        .chain((1..=3).map(|n| RingSpec::Cp2Pow { n }));
    let mut details = Vec::new();
    let mut failing = Vec::new();
    for spec in specs {
        let r = commands::ring_describe(spec)?;
        if !r.pass {
            failing.push(spec.to_string());
        }
        details.push(json!({
            "ring": spec,
            "pass": r.pass,
            "triples_checked": r.results["axioms"]["triples_checked"],
            "poincare_nondegenerate": r.results["poincare"]["nondegenerate"],
        }));
    }
    let summary = if failing.is_empty() {
        format!("{} rings satisfy all axioms with nondegenerate pairing", details.len())
    } else {
        format!("failing rings: {}", failing.join(", "))
    };
    Ok(outcome(2, failing.is_empty(), summary, Value::Array(details)))
}

fn trace_claims(jobs: usize) -> Result<CriterionOutcome> {
    let mut details = Vec::new();
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 1..=4 {
        let r = verify_trace_claims(n, jobs, DEFAULT_ENUMERATION_CAP_BITS)?;
        let expected = matrix_space_size(n, DEFAULT_ENUMERATION_CAP_BITS)?;
        pass &= r.pass && r.matrices == expected && r.passing == expected;
        parts.push(format!("n={n} {}/{}", r.passing, r.matrices));
        details.push(json!({ "n": n, "matrices": r.matrices, "passing": r.passing, "pass": r.pass }));
    }
    Ok(outcome(3, pass, parts.join(", "), Value::Array(details)))
}

fn crosscheck(jobs: usize) -> Result<CriterionOutcome> {
    let mut details = Vec::new();
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 2..=3 {
        let r = crosscheck_minors_vs_engine(n, jobs, DEFAULT_ENUMERATION_CAP_BITS)?;
        pass &= r.pass && r.lefschetz_histogram.one == r.matrices;
        parts.push(format!(
            "n={n} {} coefficients, {} deviations, L=1 for {}/{}",
            r.monomials_checked, r.coefficient_deviations, r.lefschetz_histogram.one, r.matrices
        ));
        details.push(json!({
            "n": n,
            "matrices": r.matrices,
            "monomials_checked": r.monomials_checked,
            "coefficient_deviations": r.coefficient_deviations,
            "degree_trace_deviations": r.degree_trace_deviations,
            "lefschetz_one": r.lefschetz_histogram.one,
        }));
    }
    Ok(outcome(4, pass, parts.join("; "), Value::Array(details)))
}

/// Expected exceptional list recomputed serially with the full
/// multiplicativity check, compared with the parallel certificate.
fn audit_certificate(cert: &FppCertificate) -> Result<Vec<String>> {
    let spec = RingSpec::RpSum { n: 3, k: 2 };
    let alg = spec.build()?;
    let mut problems = Vec::new();
    let total = matrix_space_size(3, DEFAULT_ENUMERATION_CAP_BITS)?;
    let (mut valid, mut zero, mut one, mut mismatches) = (0u64, 0u64, 0u64, 0u64);
    let mut expected = Vec::new();
    for index in 0..total {
        let m = Gf2Matrix::from_index(3, index);
        let endo = GeneratorMatrix::new(&alg, m.clone())?.induce();
        if !validate_ring_hom(&alg, &endo).is_ring_hom {
            continue;
        }
        valid += 1;
        let l = lefschetz(&endo);
        let cmp = compare_table1(&alg, &m, &l)?;
        if l.lefschetz.is_one() {
            one += 1;
        } else {
            zero += 1;
        }
        if !cmp.all_match() {
            mismatches += 1;
        }
        if l.lefschetz.is_zero() || !cmp.all_match() {
            expected.push((index, l.traces, l.lefschetz, cmp));
        }
    }
    let mut check = |ok: bool, what: String| {
        if !ok {
            problems.push(what);
        }
    };
    check(cert.total_matrices == total, format!("total {} != {total}", cert.total_matrices));
    check(cert.valid_homs == valid, format!("valid homs {} != {valid}", cert.valid_homs));
    check(cert.valid_homs + cert.invalid == cert.total_matrices, "valid + invalid != total".into());
    check(
        cert.lefschetz_histogram.zero == zero && cert.lefschetz_histogram.one == one,
        "histogram differs from recomputation".into(),
    );
    check(cert.table1_mismatches == mismatches, "table mismatch count differs".into());
    check(
        cert.exceptional_count == expected.len() as u64,
        format!("exceptional count {} != {}", cert.exceptional_count, expected.len()),
    );
    let listed = expected.len().min(MAX_EXCEPTIONAL);
    check(cert.exceptional.len() == listed, "exceptional list length".into());
    for (e, (index, traces, l, cmp)) in cert.exceptional.iter().zip(&expected) {
        let same = e.index == *index
            && e.is_ring_hom
            && &e.traces == traces
            && e.lefschetz == *l
            && e.table1.as_ref() == Some(cmp)
            && e.matrix == Gf2Matrix::from_index(3, *index);
        check(same, format!("listed matrix #{} disagrees with the engine", e.index));
    }
    Ok(problems)
}

fn connected_sum_sweep(jobs: usize) -> Result<CriterionOutcome> {
    let spec = RingSpec::RpSum { n: 3, k: 2 };
    let report = commands::verify_fpp(spec, Some(SweepMode::ValidOnly), jobs, DEFAULT_ENUMERATION_CAP_BITS)?;
    let cert = sweep_fpp(spec, Some(SweepMode::ValidOnly), jobs, DEFAULT_ENUMERATION_CAP_BITS)?;
    let rerun = commands::verify_fpp(spec, Some(SweepMode::ValidOnly), jobs, DEFAULT_ENUMERATION_CAP_BITS)?;
    let mut problems = audit_certificate(&cert)?;
    if report.to_json() != rerun.to_json() {
        problems.push("rerun produced different JSON".into());
    }
    let probe_index = cyclic_probe().to_index().expect("3x3");
    let probe = cert.exceptional.iter().find(|e| e.index == probe_index);
    let probe_traces: Option<Vec<u8>> = probe.map(|e| e.traces.iter().map(|g| g.as_u8()).collect());
    match &probe_traces {
        Some(t) if t == &[1, 0, 0, 0, 1] => {}
        Some(t) => problems.push(format!("cyclic probe traces {t:?}, expected [1, 0, 0, 0, 1]")),
        None => problems.push("cyclic probe missing from the exceptional list".into()),
    }
    let summary = format!(
        "{} matrices, {} valid homs, L=0 for {}, L=1 for {}, {} reference-table mismatches; claim \"{}\" {}; cyclic probe traces {}",
        cert.total_matrices,
        cert.valid_homs,
        cert.lefschetz_histogram.zero,
        cert.lefschetz_histogram.one,
        cert.table1_mismatches,
        cert.claim,
        if cert.claim_holds { "holds" } else { "does not hold for the engine's maps" },
        probe_traces.map_or("absent".into(), |t| format!("{t:?}")),
    );
    Ok(outcome(
        5,
        problems.is_empty(),
        summary,
        json!({
            "certificate": report.results,
            "consistency_problems": problems,
            "cyclic_probe_index": probe_index,
        }),
    ))
}

pub const SYM_SQUARE_PAIRS: [(i64, i64); 4] = [(-1, 0), (2, 3), (1, 1), (0, 0)];

fn sym_square_formula() -> Result<CriterionOutcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for (chi, want) in SYM_SQUARE_PAIRS {
        let got = euler_sym_square(chi)?;
        pass &= got == want;
        parts.push(format!("{chi}↦{got}"));
    }
    Ok(outcome(6, pass, parts.join(", "), json!(SYM_SQUARE_PAIRS)))
}

fn sym_square_oracle() -> Result<CriterionOutcome> {
    let cases = [
        ("boundary of the 2-simplex", SimplicialComplex::boundary_of_simplex(2), 0i64, false),
        ("boundary of the 3-simplex", SimplicialComplex::boundary_of_simplex(3), 3, true),
        ("6-vertex projective plane", SimplicialComplex::rp2_six_vertex(), 1, true),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    let mut details = Vec::new();
    for (name, complex, want, surface) in &cases {
        let r = commands::sympow_complex(complex, name, DEFAULT_POSET_CAP)?;
        let q = r.results["chi_quotient"].as_i64().expect("chi_quotient");
        let is_surface = r.results["surface"]["pure_2d"] == true
            && r.results["surface"]["edges_in_two_triangles"] == true
            && r.results["surface"]["vertex_links_are_cycles"] == true;
        let ok = r.pass && q == *want && (!surface || is_surface);
        pass &= ok;
        parts.push(format!("{name}: χ(X(2)) = {q}"));
        details.push(json!({
            "complex": name,
            "chi": r.results["chi_x"],
            "chi_quotient": q,
            "total": r.results["total"],
            "fixed": r.results["fixed"],
            "closed_surface": is_surface,
            "pass": ok,
        }));
    }
    Ok(outcome(7, pass, parts.join(", "), Value::Array(details)))
}

/// Criteria 1 to 7 with the given worker count.
fn core_criteria(jobs: usize) -> Result<Vec<(CriterionOutcome, Duration)>> {
    let mut out = Vec::new();
    for id in 1..=7u8 {
        let start = Instant::now();
        let o = match id {
            1 => ring_structure()?,
            2 => ring_axioms()?,
            3 => trace_claims(jobs)?,
            4 => crosscheck(jobs)?,
            5 => connected_sum_sweep(jobs)?,
            6 => sym_square_formula()?,
            _ => sym_square_oracle()?,
        };
        out.push((o, start.elapsed()));
    }
    Ok(out)
}

fn payload(outcomes: &[(CriterionOutcome, Duration)]) -> String {
    let v: Vec<&CriterionOutcome> = outcomes.iter().map(|(o, _)| o).collect();
    serde_json::to_string(&v).expect("outcomes serialize")
}

/// Runs every criterion. Criterion 8 repeats criteria 1 to 7 with one and
/// with eight workers and compares the serialized outcomes byte for byte.
pub fn run_suite(jobs: usize) -> Result<Vec<(CriterionOutcome, Duration)>> {
    let mut all = core_criteria(jobs)?;
    let start = Instant::now();
    let base = payload(&all);
    let serial = payload(&core_criteria(1)?);
    let parallel = payload(&core_criteria(8)?);
    let pass = base == serial && serial == parallel;
    let summary = format!(
        "repeat run {}, 1 vs 8 workers {}",
        if base == serial { "identical" } else { "DIFFERS" },
        if serial == parallel { "identical" } else { "DIFFERS" }
    );
    all.push((
        outcome(8, pass, summary, json!({ "runs_compared": 3, "identical": pass })),
        start.elapsed(),
    ));
    Ok(all)
}

#[derive(Serialize)]
struct SuiteResults<'a> {
    criteria: Vec<&'a CriterionOutcome>,
}

/// `verify-all`: passes when every hard criterion holds and the adjudication
/// criterion produced a complete, consistent report.
pub fn verify_all(jobs: usize) -> Result<Report> {
    let all = run_suite(jobs)?;
    let pass = all.iter().all(|(o, _)| o.pass);
    let mut t = String::new();
    let mut total = Duration::ZERO;
    for (o, dt) in &all {
        total += *dt;
        let tag = match o.kind {
            CriterionKind::Hard => "",
            CriterionKind::Adjudication => " (report)",
        };
        writeln!(
            t,
            "[{}] {}. {}{tag}: {} ({} ms)",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.summary,
            dt.as_millis()
        )
        .unwrap();
    }
    writeln!(t, "{} in {} ms", if pass { "all criteria pass" } else { "some criteria FAILED" }, total.as_millis()).unwrap();
    let r = SuiteResults {
        criteria: all.iter().map(|(o, _)| o).collect(),
    };
    Ok(Report::new("verify-all", json!({}), &r, pass, t))
}
