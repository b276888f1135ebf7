use fpp_workbench::algebra::RingSpec;
use fpp_workbench::error::Error;
use fpp_workbench::fpp::{
    check_claims, crosscheck_minors_vs_engine, minor_traces, sweep_fpp, verify_trace_claims, SweepMode,
};
use fpp_workbench::gf2::{enumerate_matrices, Gf2, Gf2Matrix, DEFAULT_ENUMERATION_CAP_BITS};
use proptest::prelude::*;

const CAP: usize = DEFAULT_ENUMERATION_CAP_BITS;

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Determinant by cofactor expansion along the first row, mod 2.
fn cofactor_det(m: &[Vec<u8>]) -> u8 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut acc = 0;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<u8>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect())
            .collect();
        acc ^= cofactor_det(&minor);
    }
    acc
}

fn block(a: &Gf2Matrix, idx: &[usize]) -> Vec<Vec<u8>> {
    idx.iter().map(|&r| idx.iter().map(|&c| a.get(r, c).as_u8()).collect()).collect()
}

#[test]
fn minor_products_match_cofactor_expansion() {
    for n in 1..=3 {
        for a in enumerate_matrices(n).unwrap() {
            let table = minor_traces(&a).unwrap();
            let mut totals = vec![vec![0u8; n + 1]; n + 1];
            for sq in 0u32..1 << n {
                for lin in 0u32..1 << n {
                    if sq & lin != 0 {
                        continue;
                    }
                    let i = members(sq, n);
                    let j = members(lin, n);
                    let t = cofactor_det(&block(&a, &i)) & cofactor_det(&block(&a, &j));
                    assert_eq!(table.t(sq, lin).as_u8(), t, "{a} I={i:?} J={j:?}");
                    totals[i.len()][j.len()] ^= t;
                }
            }
            for (k, row) in totals.iter().enumerate() {
                for (l, &expected) in row.iter().enumerate().take(n - k + 1) {
                    assert_eq!(table.total(k, l).as_u8(), expected, "{a} T[{k}][{l}]");
                }
            }
        }
    }
}

#[test]
fn one_by_one_minors() {
    for a in enumerate_matrices(2).unwrap() {
        let table = minor_traces(&a).unwrap();
        assert_eq!(table.t(0b01, 0b10), a.get(0, 0) * a.get(1, 1));
        assert_eq!(table.total(0, 0), Gf2::ONE);
        assert_eq!(table.total(1, 1), Gf2::ZERO);
    }
}

#[test]
fn claims_hold_exhaustively_up_to_four() {
    for n in 1..=4 {
        let r = verify_trace_claims(n, 4, CAP).unwrap();
        assert!(r.pass, "n={n}: {:?}", r.first_counterexample);
        assert_eq!(r.matrices, 1 << (n * n));
        assert_eq!(r.passing, r.matrices);
    }
}

#[test]
fn claims_respect_the_cap() {
    assert!(matches!(verify_trace_claims(6, 1, CAP), Err(Error::Capacity { .. })));
    assert!(matches!(verify_trace_claims(3, 1, 8), Err(Error::Capacity { .. })));
}

#[test]
fn engine_agrees_with_minor_formula() {
    for n in 1..=3 {
        let r = crosscheck_minors_vs_engine(n, 3, CAP).unwrap();
        assert!(r.pass, "n={n}: {:?}", r.first_deviation);
        assert_eq!(r.matrices, 1 << (n * n));
        assert_eq!(r.monomials_checked, r.matrices * 3u64.pow(n as u32));
        assert_eq!(r.lefschetz_histogram.one, r.matrices);
    }
    assert!(matches!(crosscheck_minors_vs_engine(4, 1, CAP), Err(Error::Capacity { .. })));
}

#[test]
fn cp2_power_sweeps_cover_every_matrix() {
    let c1 = sweep_fpp(RingSpec::Cp2Pow { n: 1 }, None, 1, CAP).unwrap();
    assert_eq!(c1.mode, SweepMode::All);
    assert_eq!((c1.total_matrices, c1.lefschetz_histogram.one), (2, 2));
    let c2 = sweep_fpp(RingSpec::Cp2Pow { n: 2 }, None, 2, CAP).unwrap();
    assert_eq!((c2.total_matrices, c2.lefschetz_histogram.one), (16, 16));
    assert!(c2.claim_holds && c2.exceptional.is_empty());
}

#[test]
fn connected_sum_certificate_is_consistent() {
    let c = sweep_fpp(RingSpec::RpSum { n: 3, k: 2 }, None, 4, CAP).unwrap();
    assert_eq!(c.mode, SweepMode::ValidOnly);
    assert_eq!(c.total_matrices, 512);
    assert_eq!(c.valid_homs + c.invalid, c.total_matrices);
    assert_eq!(c.lefschetz_histogram.total(), c.valid_homs);
    assert_eq!(c.covered, c.valid_homs);
    let indices: Vec<u64> = c.exceptional.iter().map(|e| e.index).collect();
    let mut sorted = indices.clone();
    sorted.sort_unstable();
    assert_eq!(indices, sorted);
    let probe: Gf2Matrix = "010\n001\n100\n".parse().unwrap();
    let listed = c.exceptional.iter().find(|e| e.matrix == probe).expect("cyclic probe listed");
    assert_eq!(listed.traces.iter().map(|g| g.as_u8()).collect::<Vec<_>>(), [1, 0, 0, 0, 1]);
    assert!(listed.reasons.contains(&"lefschetz_zero"));
    assert!(listed.reasons.contains(&"table1_mismatch"));
}

#[test]
fn all_mode_covers_invalid_matrices_too() {
    let c = sweep_fpp(RingSpec::RpSum { n: 3, k: 2 }, Some(SweepMode::All), 2, CAP).unwrap();
    assert_eq!(c.covered, 512);
    assert_eq!(c.lefschetz_histogram.total(), 512);
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let spec = RingSpec::RpSum { n: 3, k: 2 };
    let one = sweep_fpp(spec, Some(SweepMode::All), 1, CAP).unwrap();
    for jobs in [2, 5, 8] {
        assert_eq!(sweep_fpp(spec, Some(SweepMode::All), jobs, CAP).unwrap(), one);
        assert_eq!(verify_trace_claims(4, jobs, CAP).unwrap(), verify_trace_claims(4, 1, CAP).unwrap());
    }
    assert!(sweep_fpp(spec, None, 0, CAP).is_err());
}

fn disjoint_pair() -> impl Strategy<Value = (u32, u32)> {
    (0u32..16, 0u32..16).prop_map(|(a, b)| (a, b & !a))
}

proptest! {
    #[test]
    fn t_depends_only_on_principal_blocks(
        index in 0u64..1 << 16,
        (sq, lin) in disjoint_pair(),
        flips in proptest::collection::vec((0usize..4, 0usize..4), 1..6),
    ) {
        let a = Gf2Matrix::from_index(4, index);
        let inside = |r: usize, c: usize| {
            let both = |mask: u32| mask >> r & 1 == 1 && mask >> c & 1 == 1;
            both(sq) || both(lin)
        };
        let mut b = a.clone();
        for (r, c) in flips {
            if !inside(r, c) {
                b.set(r, c, b.get(r, c) + Gf2::ONE);
            }
        }
        let (ta, tb) = (minor_traces(&a).unwrap(), minor_traces(&b).unwrap());
        prop_assert_eq!(ta.t(sq, lin), tb.t(sq, lin));
        prop_assert_eq!(ta.t(sq, lin), ta.t(lin, sq));
    }

    #[test]
    fn claims_hold_for_random_five_by_five(index in 0u64..1 << 25) {
        let a = Gf2Matrix::from_index(5, index);
        let status = check_claims(&minor_traces(&a).unwrap());
        prop_assert!(status.all(), "{}", a);
    }
}
