//! Report-producing commands shared by the command line and the verification
//! suite. Each command yields a [`Report`] whose JSON and text renderings come
//! from the same result object.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{AxiomReport, PoincareReport, RingDescription, RingSpec};
use crate::endo::{compare_table1, lefschetz, top_representative, validate_ring_hom, GeneratorMatrix, HomViolation, Table1Comparison};
use crate::error::{Error, Result};
use crate::fpp::{crosscheck_minors_vs_engine, sweep_fpp, verify_trace_claims, CrosscheckReport, FppCertificate, SweepMode, TraceClaimsReport};
use crate::gf2::{Gf2, Gf2Matrix};
use crate::sympow::{euler_sym_square, sym_square_oracle, SimplicialComplex, SurfaceCheck, SymSquareReport};

pub const SCHEMA_VERSION: &str = "1";

/// Outcome of one command: a canonical JSON payload plus its text rendering.
///
/// Wall-clock timing is deliberately not part of the payload so that reruns
/// are byte-identical.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub pass: bool,
    text: String,
}

impl Report {
    pub(crate) fn new<T: Serialize>(command: &str, inputs: Value, results: &T, pass: bool, text: String) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            results: serde_json::to_value(results).expect("report payloads serialize"),
            pass,
            text,
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "pass": self.pass,
        })
    }

    /// Pretty-printed, keys sorted, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

fn bits(v: &[Gf2]) -> String {
    v.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn read_input(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input {
        source_name: path.display().to_string(),
        message: e.to_string(),
    })
}

#[derive(Serialize)]
pub struct RingResults {
    #[serde(flatten)]
    pub description: RingDescription,
    pub axioms: AxiomReport,
    pub poincare: PoincareReport,
}

/// `ring describe`: structure, Euler characteristic, ring axioms and the
/// Poincaré pairing.
pub fn ring_describe(spec: RingSpec) -> Result<Report> {
    let alg = spec.build()?;
    let r = RingResults {
        description: alg.describe(),
        axioms: alg.check_ring_axioms(),
        poincare: alg.poincare_pairing()?,
    };
    let d = &r.description;
    let mut t = String::new();
    writeln!(t, "ring {}", d.ring).unwrap();
    let gens: Vec<String> = d.generators.iter().map(|g| format!("{} (degree {})", g.name, g.degree)).collect();
    writeln!(t, "generators: {}", gens.join(", ")).unwrap();
    let dims: Vec<String> = d.graded_dims.iter().map(usize::to_string).collect();
    writeln!(t, "graded dimensions: ({})", dims.join(", ")).unwrap();
    writeln!(t, "χ = {}", d.euler).unwrap();
    writeln!(t, "relations: {}", d.relations.join(", ")).unwrap();
    writeln!(t, "basis:").unwrap();
    for (deg, b) in d.basis.iter().enumerate() {
        if !b.is_empty() {
            writeln!(t, "  degree {deg}: {}", b.join(", ")).unwrap();
        }
    }
    let a = &r.axioms;
    writeln!(
        t,
        "axioms: unit {}, commutative {}, graded {}, associative {} ({} pairs, {} triples)",
        mark(a.unit),
        mark(a.commutative),
        mark(a.graded),
        mark(a.associative),
        a.pairs_checked,
        a.triples_checked
    )
    .unwrap();
    for v in &a.violations {
        writeln!(t, "  {v}").unwrap();
    }
    let bad: Vec<String> = r
        .poincare
        .degrees
        .iter()
        .filter(|p| !p.nondegenerate)
        .map(|p| p.degree.to_string())
        .collect();
    if bad.is_empty() {
        writeln!(t, "Poincaré pairing: nondegenerate in every degree").unwrap();
    } else {
        writeln!(t, "Poincaré pairing: degenerate in degrees {}", bad.join(", ")).unwrap();
    }
    let pass = r.axioms.holds() && r.poincare.nondegenerate;
    Ok(Report::new("ring describe", json!({ "ring": spec }), &r, pass, t))
}

#[derive(Serialize)]
pub struct LefschetzResults {
    pub ring: RingSpec,
    pub matrix: Gf2Matrix,
    pub is_ring_hom: bool,
    pub violations: Vec<HomViolation>,
    pub coefficient_field: &'static str,
    pub traces: Vec<Gf2>,
    pub lefschetz: Gf2,
    pub top_representative: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table1: Option<Table1Comparison>,
}

/// `lefschetz`: induced traces and Lefschetz number of one generator matrix,
/// optionally compared with the reference trace table.
///
/// Passes when the map is not a ring endomorphism or has `L = 1`, and the
/// table comparison (if requested) matches in every degree.
pub fn lefschetz_report(spec: RingSpec, matrix: Gf2Matrix, table1: bool) -> Result<Report> {
    let alg = spec.build()?;
    let gm = GeneratorMatrix::new(&alg, matrix)?;
    let endo = gm.induce();
    let check = validate_ring_hom(&alg, &endo);
    let l = lefschetz(&endo);
    let table = if table1 {
        Some(compare_table1(&alg, gm.matrix(), &l)?)
    } else {
        None
    };
    let r = LefschetzResults {
        ring: spec,
        matrix: gm.matrix().clone(),
        is_ring_hom: check.is_ring_hom,
        violations: check.violations,
        coefficient_field: l.coefficient_field,
        traces: l.traces,
        lefschetz: l.lefschetz,
        top_representative: top_representative(&alg),
        table1: table,
    };
    lefschetz_from_results(r, json!({ "ring": spec, "table1": table1 }))
}

fn lefschetz_from_results(r: LefschetzResults, inputs: Value) -> Result<Report> {
    let mut t = String::new();
    writeln!(t, "ring {}", r.ring).unwrap();
    writeln!(t, "matrix: {}", r.matrix.row_strings().join(" ")).unwrap();
    writeln!(t, "ring homomorphism: {}", if r.is_ring_hom { "yes" } else { "no" }).unwrap();
    for v in r.violations.iter().take(8) {
        writeln!(
            t,
            "  f({}) f({}) = {} but f({} {}) = {}",
            v.left, v.right, v.product_of_images, v.left, v.right, v.image_of_product
        )
        .unwrap();
    }
    if r.violations.len() > 8 {
        writeln!(t, "  ... {} violations in total", r.violations.len()).unwrap();
    }
    writeln!(t, "traces by degree: {}", bits(&r.traces)).unwrap();
    writeln!(t, "L = {} in {}", r.lefschetz, r.coefficient_field).unwrap();
    if let Some(rep) = &r.top_representative {
        writeln!(t, "top class represented by {rep}").unwrap();
    }
    let mut pass = !r.is_ring_hom || r.lefschetz.is_one();
    if let Some(tb) = &r.table1 {
        writeln!(t, "reference table: predicted {} | computed {}", bits(&tb.predicted), bits(&tb.computed)).unwrap();
        let off: Vec<String> = tb
            .matches
            .iter()
            .enumerate()
            .filter(|(_, m)| !**m)
            .map(|(d, _)| d.to_string())
            .collect();
        if off.is_empty() {
            writeln!(t, "reference table: match in every degree").unwrap();
        } else {
            writeln!(t, "reference table: MISMATCH in degrees {}", off.join(", ")).unwrap();
        }
        pass &= tb.all_match();
    }
    Ok(Report::new("lefschetz", inputs, &r, pass, t))
}

/// Same as [`lefschetz_report`], reading the matrix from a file.
pub fn lefschetz_file(spec: RingSpec, path: &Path, table1: bool) -> Result<Report> {
    let text = read_input(path)?;
    let matrix = Gf2Matrix::parse_text(&text).map_err(|e| e.with_source(&path.display().to_string()))?;
    let mut report = lefschetz_report(spec, matrix, table1)?;
    if let Value::Object(m) = &mut report.inputs {
        m.insert("matrix".into(), Value::String(path.display().to_string()));
    }
    Ok(report)
}

/// `verify-fpp`: exhaustive sweep certificate. Passes when no exceptional
/// matrix was found.
pub fn verify_fpp(spec: RingSpec, mode: Option<SweepMode>, jobs: usize, cap_bits: usize) -> Result<Report> {
    let cert = sweep_fpp(spec, mode, jobs, cap_bits)?;
    let t = render_certificate(&cert);
    let pass = cert.exceptional_count == 0;
    Ok(Report::new(
        "verify-fpp",
        json!({ "ring": spec, "mode": cert.mode, "enum_cap": cap_bits }),
        &cert,
        pass,
        t,
    ))
}

fn render_certificate(c: &FppCertificate) -> String {
    let mut t = String::new();
    writeln!(t, "ring {}, mode {}, {} matrices ({})", c.ring, c.mode.as_str(), c.total_matrices, c.enumeration_order).unwrap();
    writeln!(t, "ring endomorphisms: {} valid, {} invalid", c.valid_homs, c.invalid).unwrap();
    writeln!(
        t,
        "Lefschetz numbers over {} matrices: L=0 for {}, L=1 for {}",
        c.covered, c.lefschetz_histogram.zero, c.lefschetz_histogram.one
    )
    .unwrap();
    if c.table1_checked {
        writeln!(t, "reference-table mismatches: {}", c.table1_mismatches).unwrap();
    }
    if let Some(rep) = &c.top_representative {
        writeln!(t, "top class represented by {rep}").unwrap();
    }
    writeln!(t, "claim: {}: {}", c.claim, if c.claim_holds { "holds" } else { "FAILS" }).unwrap();
    writeln!(t, "exceptional matrices: {} ({} not listed)", c.exceptional_count, c.exceptional_overflow).unwrap();
    for e in &c.exceptional {
        let mut line = format!(
            "  #{:<4} {}  traces {}  L={}  {}",
            e.index,
            e.matrix.row_strings().join(" "),
            bits(&e.traces),
            e.lefschetz,
            e.reasons.join(",")
        );
        if let Some(tb) = &e.table1 {
            write!(line, "  predicted {}", bits(&tb.predicted)).unwrap();
        }
        if !e.is_ring_hom {
            line.push_str("  (not a ring endomorphism)");
        }
        writeln!(t, "{line}").unwrap();
    }
    t
}

/// `theorem3`: exhaustive check of the principal-minor trace claims.
pub fn trace_claims(n: usize, jobs: usize, cap_bits: usize) -> Result<Report> {
    let r = verify_trace_claims(n, jobs, cap_bits)?;
    let t = render_claims(&r);
    Ok(Report::new("theorem3", json!({ "n": n, "enum_cap": cap_bits }), &r, r.pass, t))
}

fn render_claims(r: &TraceClaimsReport) -> String {
    let mut t = String::new();
    let total = if r.claim_counts.total_is_one == r.matrices { ", ΣT = 1" } else { "" };
    writeln!(
        t,
        "{}/{} matrices pass all trace claims (T00 = 1, t_IJ = t_JI, T_kk = 0){total}",
        r.passing, r.matrices
    )
    .unwrap();
    let c = &r.claim_counts;
    writeln!(
        t,
        "  T00 = 1: {}  symmetry: {}  T_kk = 0: {}  ΣT = 1: {}",
        c.unit_trace, c.symmetric, c.diagonal_vanishes, c.total_is_one
    )
    .unwrap();
    if let Some(ce) = &r.first_counterexample {
        writeln!(t, "first counterexample #{}: {} fails {}", ce.index, ce.matrix.row_strings().join(" "), ce.failed.join(", ")).unwrap();
    }
    t
}

/// `crosscheck`: minor formula against the tensor engine on `(CP²)ⁿ`.
pub fn crosscheck(n: usize, jobs: usize, cap_bits: usize) -> Result<Report> {
    let r = crosscheck_minors_vs_engine(n, jobs, cap_bits)?;
    let t = render_crosscheck(&r);
    Ok(Report::new("crosscheck", json!({ "n": n, "enum_cap": cap_bits }), &r, r.pass, t))
}

fn render_crosscheck(r: &CrosscheckReport) -> String {
    let mut t = String::new();
    writeln!(
        t,
        "{}: {} matrices, {} diagonal coefficients compared",
        r.ring, r.matrices, r.monomials_checked
    )
    .unwrap();
    writeln!(
        t,
        "deviations: {} coefficients, {} degree traces",
        r.coefficient_deviations, r.degree_trace_deviations
    )
    .unwrap();
    writeln!(
        t,
        "engine Lefschetz numbers: L=1 for {}/{}",
        r.lefschetz_histogram.one,
        r.lefschetz_histogram.total()
    )
    .unwrap();
    if let Some(d) = &r.first_deviation {
        writeln!(
            t,
            "first deviation #{}: {} at {}: engine {} vs minors {}",
            d.index,
            d.matrix.row_strings().join(" "),
            d.monomial,
            d.engine,
            d.minor_formula
        )
        .unwrap();
    }
    t
}

#[derive(Serialize)]
pub struct SymFormulaResults {
    pub chi: i64,
    pub chi_sym_square: i64,
}

/// `sympow --chi`: the closed formula alone.
pub fn sympow_formula(chi: i64) -> Result<Report> {
    let r = SymFormulaResults {
        chi,
        chi_sym_square: euler_sym_square(chi)?,
    };
    let t = format!("χ(X) = {}\nχ(X(2)) = {}\n", r.chi, r.chi_sym_square);
    Ok(Report::new("sympow", json!({ "chi": chi }), &r, true, t))
}

#[derive(Serialize)]
pub struct SymComplexResults {
    pub face_counts: Vec<u64>,
    pub surface: SurfaceCheck,
    #[serde(flatten)]
    pub oracle: SymSquareReport,
}

/// `sympow --complex`: equivariant chain count on a complex, checked against
/// the formula.
pub fn sympow_complex(complex: &SimplicialComplex, source: &str, poset_cap: usize) -> Result<Report> {
    let r = SymComplexResults {
        face_counts: complex.face_counts(),
        surface: complex.check_closed_surface(),
        oracle: sym_square_oracle(complex, poset_cap)?,
    };
    let o = &r.oracle;
    let counts = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    let mut t = String::new();
    writeln!(t, "complex {source}: face counts {}, χ(K) = {}", counts(&r.face_counts), o.chi_x).unwrap();
    if r.surface.is_closed_surface() {
        writeln!(t, "closed surface: yes").unwrap();
    }
    writeln!(t, "face poset {} elements, product poset {}", o.face_poset_size, o.product_poset_size).unwrap();
    writeln!(t, "chains by dimension:  {}", counts(&o.total)).unwrap();
    writeln!(t, "swap-fixed chains:    {}", counts(&o.fixed)).unwrap();
    writeln!(t, "orbits:               {}", counts(&o.orbit)).unwrap();
    writeln!(t, "χ(K×K) = {}, χ(diagonal) = {}", o.chi_x_times_x, o.chi_diagonal).unwrap();
    writeln!(t, "χ(X(2)) = {} by orbit count, {} by formula", o.chi_quotient, o.formula).unwrap();
    writeln!(t, "2·χ(X(2)) = χ + χ²: {}", if o.identity_holds { "yes" } else { "NO" }).unwrap();
    if !o.free_parts_even {
        writeln!(t, "free chain counts are not even").unwrap();
    }
    let pass = o.identity_holds && o.free_parts_even && o.chi_quotient == o.formula && o.chi_diagonal == o.chi_x;
    Ok(Report::new(
        "sympow",
        json!({ "complex": source, "poset_cap": poset_cap }),
        &r,
        pass,
        t,
    ))
}

/// Reads and runs [`sympow_complex`] on a facet file.
pub fn sympow_file(path: &Path, poset_cap: usize) -> Result<Report> {
    let name = path.display().to_string();
    let text = read_input(path)?;
    let complex = SimplicialComplex::parse(&text).map_err(|e| match e {
        Error::Validation(message) => Error::Input {
            source_name: name.clone(),
            message,
        },
        e @ Error::Capacity { .. } => Error::Input {
            source_name: name.clone(),
            message: e.to_string(),
        },
        other => other.with_source(&name),
    })?;
    sympow_complex(&complex, &name, poset_cap)
}
