//! Exhaustive sweeps over generator matrices.
//!
//! * [`sweep_fpp`] induces every matrix on a ring and tallies Lefschetz
//!   numbers into an [`FppCertificate`].
//! * [`minor_traces`] evaluates the principal-minor products `t(I,J)` and
//!   their aggregates `T[k][l]` for one matrix.
//! * [`verify_trace_claims`] and [`crosscheck_minors_vs_engine`] run those
//!   over the whole matrix space, the latter against the tensor engine.
//!
//! Sweeps split the index range into fixed chunks, process them on a rayon
//! pool of the requested size and merge the per-chunk tallies in chunk order,
//! so results do not depend on the worker count.

use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{cp2_power, GradedAlgebra, RingKind, RingSpec};
use crate::endo::{compare_table1, lefschetz, GeneratorMatrix, Table1Comparison};
use crate::error::{Error, Result};
use crate::gf2::{matrix_space_size, Gf2, Gf2Matrix};

/// Maximum number of exceptional matrices kept in a certificate.
pub const MAX_EXCEPTIONAL: usize = 64;

/// Largest `n` for the engine cross-check; the `(CP²)ⁿ` basis has `3ⁿ` elements.
pub const MAX_CROSSCHECK_N: usize = 3;

pub const ENUMERATION_ORDER: &str = "lexicographic, row-major, entry (1,1) most significant";

const CHUNK: u64 = 256;

fn chunks(total: u64) -> Vec<Range<u64>> {
    (0..total.div_ceil(CHUNK))
        .map(|c| c * CHUNK..((c + 1) * CHUNK).min(total))
        .collect()
}

fn run_chunked<T, F>(total: u64, jobs: usize, work: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync + Send,
{
    if jobs == 0 {
        return Err(Error::Domain("worker count must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
    let ranges = chunks(total);
    Ok(pool.install(|| ranges.into_par_iter().map(&work).collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepMode {
    /// Only matrices inducing ring homomorphisms enter the histogram.
    ValidOnly,
    /// Every matrix enters the histogram.
    All,
}

impl SweepMode {
    /// `All` for `(CP²)ⁿ`, whose trace argument holds for every matrix;
    /// `ValidOnly` for connected sums.
    pub fn default_for(spec: &RingSpec) -> Self {
        match spec {
            RingSpec::Cp2Pow { .. } => SweepMode::All,
            RingSpec::RpSum { .. } => SweepMode::ValidOnly,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SweepMode::ValidOnly => "valid-only",
            SweepMode::All => "all",
        }
    }
}

impl std::str::FromStr for SweepMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "valid-only" => Ok(SweepMode::ValidOnly),
            "all" => Ok(SweepMode::All),
            other => Err(Error::Domain(format!(
                "unknown sweep mode {other:?} (expected valid-only or all)"
            ))),
        }
    }
}

impl Serialize for SweepMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LefschetzHistogram {
    pub zero: u64,
    pub one: u64,
}

impl LefschetzHistogram {
    fn record(&mut self, l: Gf2) {
        if l.is_one() {
            self.one += 1;
        } else {
            self.zero += 1;
        }
    }

    fn merge(&mut self, other: &Self) {
        self.zero += other.zero;
        self.one += other.one;
    }

    pub fn total(&self) -> u64 {
        self.zero + self.one
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalMatrix {
    /// Position in the enumeration.
    pub index: u64,
    pub matrix: Gf2Matrix,
    pub is_ring_hom: bool,
    pub traces: Vec<Gf2>,
    pub lefschetz: Gf2,
    /// `lefschetz_zero` and/or `table1_mismatch`.
    pub reasons: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table1: Option<Table1Comparison>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FppCertificate {
    pub ring: RingSpec,
    pub mode: SweepMode,
    pub enumeration_order: &'static str,
    pub total_matrices: u64,
    pub valid_homs: u64,
    pub invalid: u64,
    /// Matrices entering the histogram (valid homs, or all in `All` mode).
    pub covered: u64,
    pub lefschetz_histogram: LefschetzHistogram,
    pub table1_checked: bool,
    pub table1_mismatches: u64,
    /// Total exceptional matrices; only the first [`MAX_EXCEPTIONAL`] are listed.
    pub exceptional_count: u64,
    pub exceptional_overflow: u64,
    pub exceptional: Vec<ExceptionalMatrix>,
    pub claim: &'static str,
    pub claim_holds: bool,
    pub top_representative: Option<String>,
}

#[derive(Default)]
struct SweepTally {
    valid: u64,
    covered: u64,
    histogram: LefschetzHistogram,
    table1_mismatches: u64,
    exceptional_count: u64,
    exceptional: Vec<ExceptionalMatrix>,
}

/// Sweeps every `n × n` generator matrix of `spec`'s ring. `mode` defaults to
/// [`SweepMode::default_for`].
pub fn sweep_fpp(spec: RingSpec, mode: Option<SweepMode>, jobs: usize, cap_bits: usize) -> Result<FppCertificate> {
    let algebra = spec.build()?;
    let mode = mode.unwrap_or_else(|| SweepMode::default_for(&spec));
    let n = algebra.generators().len();
    let total = matrix_space_size(n, cap_bits)?;
    let table1 = algebra.kind() == (RingKind::ConnectedSum { n: 3, k: 2 });
    // Validate the ring once; per-matrix construction cannot fail after this.
    GeneratorMatrix::new(&algebra, Gf2Matrix::zeros(n, n))?;

    let tallies = run_chunked(total, jobs, |range| sweep_range(&algebra, n, range, mode, table1))?;
    let mut acc = SweepTally::default();
    for t in tallies {
        acc.valid += t.valid;
        acc.covered += t.covered;
        acc.histogram.merge(&t.histogram);
        acc.table1_mismatches += t.table1_mismatches;
        acc.exceptional_count += t.exceptional_count;
        let room = MAX_EXCEPTIONAL - acc.exceptional.len();
        acc.exceptional.extend(t.exceptional.into_iter().take(room));
    }
    Ok(FppCertificate {
        ring: spec,
        mode,
        enumeration_order: ENUMERATION_ORDER,
        total_matrices: total,
        valid_homs: acc.valid,
        invalid: total - acc.valid,
        covered: acc.covered,
        lefschetz_histogram: acc.histogram,
        table1_checked: table1,
        table1_mismatches: acc.table1_mismatches,
        exceptional_overflow: acc.exceptional_count - acc.exceptional.len() as u64,
        exceptional_count: acc.exceptional_count,
        exceptional: acc.exceptional,
        claim: match mode {
            SweepMode::ValidOnly => "L = 1 for every generator matrix inducing a ring endomorphism",
            SweepMode::All => "L = 1 for every generator matrix",
        },
        claim_holds: acc.histogram.zero == 0,
        top_representative: crate::endo::top_representative(&algebra),
    })
}

fn sweep_range(algebra: &GradedAlgebra, n: usize, range: Range<u64>, mode: SweepMode, table1: bool) -> SweepTally {
    let mut t = SweepTally::default();
    for index in range {
        let matrix = Gf2Matrix::from_index(n, index);
        let gm = GeneratorMatrix::new(algebra, matrix).expect("ring validated before sweep");
        let endo = gm.induce();
        let valid = endo.is_ring_hom();
        if valid {
            t.valid += 1;
        }
        if mode == SweepMode::ValidOnly && !valid {
            continue;
        }
        t.covered += 1;
        let report = lefschetz(&endo);
        t.histogram.record(report.lefschetz);
        let mut reasons = Vec::new();
        if report.lefschetz.is_zero() {
            reasons.push("lefschetz_zero");
        }
        let comparison = if table1 {
            let cmp = compare_table1(algebra, gm.matrix(), &report).expect("table applies to this ring");
            if !cmp.all_match() {
                t.table1_mismatches += 1;
                reasons.push("table1_mismatch");
            }
            Some(cmp)
        } else {
            None
        };
        if !reasons.is_empty() {
            t.exceptional_count += 1;
            if t.exceptional.len() < MAX_EXCEPTIONAL {
                t.exceptional.push(ExceptionalMatrix {
                    index,
                    matrix: gm.matrix().clone(),
                    is_ring_hom: valid,
                    traces: report.traces,
                    lefschetz: report.lefschetz,
                    reasons,
                    table1: comparison,
                });
            }
        }
    }
    t
}

/// Principal-minor trace data for one matrix.
///
/// Index sets are bitmasks over `0..n`. The pair `(I, J)` stands for the
/// basis monomial `Π_{i∈I} x_i² · Π_{j∈J} x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorTraceTable {
    n: usize,
    /// `minors[mask] = det A[mask, mask]`
    minors: Vec<Gf2>,
    /// `totals[k][l] = T(k,l)`
    totals: Vec<Vec<Gf2>>,
}

/// Subsets of `0..n` as bitmasks, by cardinality and then lexicographically.
pub fn subsets_in_order(n: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|&m| {
        let elems: Vec<u32> = (0..n as u32).filter(|i| m >> i & 1 == 1).collect();
        (m.count_ones(), elems)
    });
    masks
}

/// `det A[I,I]` for a mask `I`, with the empty minor equal to 1.
fn principal_minor(a: &Gf2Matrix, mask: u32) -> Gf2 {
    let idx: Vec<usize> = (0..a.n_rows()).filter(|&i| mask >> i & 1 == 1).collect();
    let mut rows: Vec<u64> = idx
        .iter()
        .map(|&r| {
            idx.iter()
                .enumerate()
                .fold(0u64, |acc, (c, &j)| acc | (a.get(r, j).as_u8() as u64) << c)
        })
        .collect();
    let k = rows.len();
    for col in 0..k {
        let bit = 1u64 << col;
        let Some(p) = (col..k).find(|&r| rows[r] & bit != 0) else {
            return Gf2::ZERO;
        };
        rows.swap(col, p);
        let pivot = rows[col];
        for row in rows.iter_mut().skip(col + 1) {
            if *row & bit != 0 {
                *row ^= pivot;
            }
        }
    }
    Gf2::ONE
}

impl MinorTraceTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn minor(&self, mask: u32) -> Gf2 {
        self.minors[mask as usize]
    }

    /// `t(I,J) = det A[I,I] · det A[J,J]`.
    pub fn t(&self, squared: u32, linear: u32) -> Gf2 {
        debug_assert_eq!(squared & linear, 0);
        self.minors[squared as usize] * self.minors[linear as usize]
    }

    /// `T(k,l)`, zero outside `k + l ≤ n`.
    pub fn total(&self, k: usize, l: usize) -> Gf2 {
        self.totals
            .get(k)
            .and_then(|row| row.get(l))
            .copied()
            .unwrap_or(Gf2::ZERO)
    }

    pub fn totals(&self) -> &[Vec<Gf2>] {
        &self.totals
    }

    pub fn grand_total(&self) -> Gf2 {
        self.totals.iter().flatten().copied().sum()
    }

    /// Every ordered disjoint pair `(I, J)` in aggregation order.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let order = subsets_in_order(self.n);
        let mut out = Vec::with_capacity(3usize.pow(self.n as u32));
        for &i in &order {
            for &j in &order {
                if i & j == 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

pub fn minor_traces(a: &Gf2Matrix) -> Result<MinorTraceTable> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "minor traces need a square matrix, got {}x{}",
            a.n_rows(),
            a.n_cols()
        )));
    }
    let n = a.n_rows();
    if n > 16 {
        return Err(Error::Capacity {
            what: "minor table size n",
            requested: n,
            cap: 16,
        });
    }
    let minors: Vec<Gf2> = (0..1u32 << n).map(|m| principal_minor(a, m)).collect();
    let mut totals: Vec<Vec<Gf2>> = (0..=n).map(|k| vec![Gf2::ZERO; n - k + 1]).collect();
    let full = (1u32 << n) - 1;
    for i in 0..=full {
        let rest = full & !i;
        // Iterate submasks of the complement.
        let mut j = rest;
        loop {
            let t = minors[i as usize] * minors[j as usize];
            totals[i.count_ones() as usize][j.count_ones() as usize] += t;
            if j == 0 {
                break;
            }
            j = (j - 1) & rest;
        }
    }
    Ok(MinorTraceTable { n, minors, totals })
}

/// Serializable view of a [`MinorTraceTable`] with 1-based index sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorTraceView {
    pub n: usize,
    pub pairs: Vec<MinorPair>,
    pub totals: Vec<Vec<Gf2>>,
    pub grand_total: Gf2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorPair {
    pub squared: Vec<usize>,
    pub linear: Vec<usize>,
    pub t: Gf2,
}

fn mask_to_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

impl From<&MinorTraceTable> for MinorTraceView {
    fn from(table: &MinorTraceTable) -> Self {
        MinorTraceView {
            n: table.n,
            pairs: table
                .pairs()
                .into_iter()
                .map(|(i, j)| MinorPair {
                    squared: mask_to_indices(i),
                    linear: mask_to_indices(j),
                    t: table.t(i, j),
                })
                .collect(),
            totals: table.totals.clone(),
            grand_total: table.grand_total(),
        }
    }
}

/// Which of the four trace claims a matrix satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimStatus {
    /// `T(0,0) = 1`
    pub unit_trace: bool,
    /// `t(I,J) = t(J,I)` for all disjoint pairs
    pub symmetric: bool,
    /// `T(k,k) = 0` for `k ≥ 1`
    pub diagonal_vanishes: bool,
    /// `Σ T(k,l) = 1`
    pub total_is_one: bool,
}

impl ClaimStatus {
    pub fn all(&self) -> bool {
        self.unit_trace && self.symmetric && self.diagonal_vanishes && self.total_is_one
    }

    fn failed(&self) -> Vec<&'static str> {
        let mut f = Vec::new();
        if !self.unit_trace {
            f.push("unit_trace");
        }
        if !self.symmetric {
            f.push("symmetric");
        }
        if !self.diagonal_vanishes {
            f.push("diagonal_vanishes");
        }
        if !self.total_is_one {
            f.push("total_is_one");
        }
        f
    }
}

pub fn check_claims(table: &MinorTraceTable) -> ClaimStatus {
    let n = table.n;
    let full = (1u32 << n) - 1;
    let mut symmetric = true;
    'outer: for i in 0..=full {
        let rest = full & !i;
        let mut j = rest;
        loop {
            if table.t(i, j) != table.t(j, i) {
                symmetric = false;
                break 'outer;
            }
            if j == 0 {
                break;
            }
            j = (j - 1) & rest;
        }
    }
    ClaimStatus {
        unit_trace: table.total(0, 0).is_one(),
        symmetric,
        diagonal_vanishes: (1..=n / 2).all(|k| table.total(k, k).is_zero()),
        total_is_one: table.grand_total().is_one(),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClaimCounts {
    pub unit_trace: u64,
    pub symmetric: u64,
    pub diagonal_vanishes: u64,
    pub total_is_one: u64,
}

impl ClaimCounts {
    fn record(&mut self, s: &ClaimStatus) {
        self.unit_trace += s.unit_trace as u64;
        self.symmetric += s.symmetric as u64;
        self.diagonal_vanishes += s.diagonal_vanishes as u64;
        self.total_is_one += s.total_is_one as u64;
    }

    fn merge(&mut self, o: &Self) {
        self.unit_trace += o.unit_trace;
        self.symmetric += o.symmetric;
        self.diagonal_vanishes += o.diagonal_vanishes;
        self.total_is_one += o.total_is_one;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCounterexample {
    pub index: u64,
    pub matrix: Gf2Matrix,
    pub failed: Vec<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceClaimsReport {
    pub n: usize,
    pub matrices: u64,
    pub passing: u64,
    pub claim_counts: ClaimCounts,
    pub first_counterexample: Option<ClaimCounterexample>,
    pub pass: bool,
}

/// Checks the four trace claims for every `n × n` matrix.
pub fn verify_trace_claims(n: usize, jobs: usize, cap_bits: usize) -> Result<TraceClaimsReport> {
    let total = matrix_space_size(n, cap_bits)?;
    let parts = run_chunked(total, jobs, |range| {
        let mut counts = ClaimCounts::default();
        let mut passing = 0u64;
        let mut first = None;
        for index in range {
            let a = Gf2Matrix::from_index(n, index);
            let table = minor_traces(&a).expect("square by construction");
            let status = check_claims(&table);
            counts.record(&status);
            if status.all() {
                passing += 1;
            } else if first.is_none() {
                first = Some(ClaimCounterexample {
                    index,
                    matrix: a,
                    failed: status.failed(),
                });
            }
        }
        (counts, passing, first)
    })?;
    let mut counts = ClaimCounts::default();
    let mut passing = 0;
    let mut first = None;
    for (c, p, f) in parts {
        counts.merge(&c);
        passing += p;
        if first.is_none() {
            first = f;
        }
    }
    Ok(TraceClaimsReport {
        n,
        matrices: total,
        passing,
        claim_counts: counts,
        first_counterexample: first,
        pass: passing == total,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckDeviation {
    pub index: u64,
    pub matrix: Gf2Matrix,
    pub monomial: String,
    pub engine: Gf2,
    pub minor_formula: Gf2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub n: usize,
    pub ring: String,
    pub matrices: u64,
    pub monomials_checked: u64,
    pub coefficient_deviations: u64,
    pub degree_trace_deviations: u64,
    pub first_deviation: Option<CrosscheckDeviation>,
    pub lefschetz_histogram: LefschetzHistogram,
    pub pass: bool,
}

#[derive(Default)]
struct CrossTally {
    monomials: u64,
    coeff_dev: u64,
    trace_dev: u64,
    first: Option<CrosscheckDeviation>,
    hist: LefschetzHistogram,
}

/// Compares, for every matrix, the engine's diagonal coefficient on each
/// basis monomial `x_I² x_J` of `(CP²)ⁿ` with `t(I,J)`, and each degree-`2m`
/// trace with `Σ_{2k+l=m} T(k,l)`.
pub fn crosscheck_minors_vs_engine(n: usize, jobs: usize, cap_bits: usize) -> Result<CrosscheckReport> {
    if n > MAX_CROSSCHECK_N {
        return Err(Error::Capacity {
            what: "cross-check size n",
            requested: n,
            cap: MAX_CROSSCHECK_N,
        });
    }
    let total = matrix_space_size(n, cap_bits)?;
    let algebra = cp2_power(n)?;
    // (squared mask, linear mask) of each basis monomial.
    let shape: Vec<(u32, u32)> = algebra
        .basis()
        .iter()
        .map(|m| {
            m.iter().fold((0u32, 0u32), |(sq, lin), (g, e)| match e {
                2 => (sq | 1 << g, lin),
                1 => (sq, lin | 1 << g),
                _ => unreachable!("(CP²)ⁿ exponents are at most 2"),
            })
        })
        .collect();

    let parts = run_chunked(total, jobs, |range| {
        let mut t = CrossTally::default();
        for index in range {
            let a = Gf2Matrix::from_index(n, index);
            let endo = GeneratorMatrix::new(&algebra, a.clone())
                .expect("cp2 power accepts n x n matrices")
                .induce();
            let table = minor_traces(&a).expect("square by construction");
            for (b, &(sq, lin)) in shape.iter().enumerate() {
                t.monomials += 1;
                let engine = endo.diagonal(b);
                let formula = table.t(sq, lin);
                if engine != formula {
                    t.coeff_dev += 1;
                    if t.first.is_none() {
                        t.first = Some(CrosscheckDeviation {
                            index,
                            matrix: a.clone(),
                            monomial: algebra.render_basis(b),
                            engine,
                            minor_formula: formula,
                        });
                    }
                }
            }
            let report = lefschetz(&endo);
            for (d, &trace) in report.traces.iter().enumerate() {
                let predicted = if d % 2 == 1 {
                    Gf2::ZERO
                } else {
                    let m = d / 2;
                    (0..=m / 2).map(|k| table.total(k, m - 2 * k)).sum()
                };
                if trace != predicted {
                    t.trace_dev += 1;
                }
            }
            t.hist.record(report.lefschetz);
        }
        t
    })?;
    let mut acc = CrossTally::default();
    for p in parts {
        acc.monomials += p.monomials;
        acc.coeff_dev += p.coeff_dev;
        acc.trace_dev += p.trace_dev;
        acc.hist.merge(&p.hist);
        if acc.first.is_none() {
            acc.first = p.first;
        }
    }
    Ok(CrosscheckReport {
        n,
        ring: algebra.label().to_string(),
        matrices: total,
        monomials_checked: acc.monomials,
        coefficient_deviations: acc.coeff_dev,
        degree_trace_deviations: acc.trace_dev,
        first_deviation: acc.first,
        pass: acc.coeff_dev == 0 && acc.trace_dev == 0 && acc.hist.zero == 0,
        lefschetz_histogram: acc.hist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::DEFAULT_ENUMERATION_CAP_BITS as CAP;

    fn mat(rows: &[&str]) -> Gf2Matrix {
        let mut s = rows.join("\n");
        s.push('\n');
        s.parse().unwrap()
    }

    #[test]
    fn two_by_two_single_minors() {
        for a in crate::gf2::enumerate_matrices(2).unwrap() {
            let t = minor_traces(&a).unwrap();
            assert_eq!(t.t(0b01, 0b10), a.get(0, 0) * a.get(1, 1));
            assert_eq!(t.total(0, 0), Gf2::ONE);
            assert_eq!(t.total(1, 1), Gf2::ZERO);
        }
    }

    #[test]
    fn pairs_cover_three_to_the_n() {
        let t = minor_traces(&Gf2Matrix::identity(3)).unwrap();
        let pairs = t.pairs();
        assert_eq!(pairs.len(), 27);
        assert_eq!(pairs[0], (0, 0));
        assert!(pairs.iter().all(|(i, j)| i & j == 0));
    }

    #[test]
    fn identity_minors_all_one() {
        let t = minor_traces(&Gf2Matrix::identity(3)).unwrap();
        for (i, j) in t.pairs() {
            assert_eq!(t.t(i, j), Gf2::ONE);
        }
    }

    #[test]
    fn subset_order() {
        assert_eq!(subsets_in_order(3), vec![0, 1, 2, 4, 3, 5, 6, 7]);
    }

    #[test]
    fn trace_claims_small_n() {
        for n in 1..=3 {
            let r = verify_trace_claims(n, 2, CAP).unwrap();
            assert_eq!(r.matrices, 1 << (n * n));
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn sweep_cp2_small() {
        let c = sweep_fpp(RingSpec::Cp2Pow { n: 1 }, None, 1, CAP).unwrap();
        assert_eq!(c.total_matrices, 2);
        assert_eq!(c.lefschetz_histogram, LefschetzHistogram { zero: 0, one: 2 });
        let c = sweep_fpp(RingSpec::Cp2Pow { n: 2 }, None, 1, CAP).unwrap();
        assert_eq!(c.covered, 16);
        assert_eq!(c.lefschetz_histogram.one, 16);
        assert!(c.claim_holds);
    }

    #[test]
    fn sweep_triple_sum_lists_cyclic_probe() {
        let c = sweep_fpp(RingSpec::RpSum { n: 3, k: 2 }, None, 1, CAP).unwrap();
        assert_eq!(c.total_matrices, 512);
        assert_eq!(c.valid_homs + c.invalid, 512);
        assert_eq!(c.lefschetz_histogram.total(), c.valid_homs);
        let cyc = mat(&["010", "001", "100"]);
        let entry = c
            .exceptional
            .iter()
            .find(|e| e.matrix == cyc)
            .expect("cyclic permutation is exceptional");
        assert_eq!(
            entry.traces.iter().map(|t| t.as_u8()).collect::<Vec<_>>(),
            [1, 0, 0, 0, 1]
        );
        assert!(entry.reasons.contains(&"lefschetz_zero"));
        assert!(!c.claim_holds);
    }

    #[test]
    fn sweep_is_worker_count_independent() {
        let a = sweep_fpp(RingSpec::RpSum { n: 3, k: 2 }, Some(SweepMode::All), 1, CAP).unwrap();
        let b = sweep_fpp(RingSpec::RpSum { n: 3, k: 2 }, Some(SweepMode::All), 4, CAP).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn crosscheck_cap() {
        assert!(matches!(
            crosscheck_minors_vs_engine(4, 1, CAP),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn zero_workers_rejected() {
        assert!(verify_trace_claims(2, 0, CAP).is_err());
    }
}
