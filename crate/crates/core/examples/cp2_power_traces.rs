//! Principal-minor traces on (CP^2)^n: one table in detail, then the
//! exhaustive claim check and the engine cross-check.

use fpp_workbench::fpp::{crosscheck_minors_vs_engine, minor_traces, verify_trace_claims, MinorTraceView};
use fpp_workbench::gf2::{Gf2Matrix, DEFAULT_ENUMERATION_CAP_BITS as CAP};

fn main() -> fpp_workbench::error::Result<()> {
    let a: Gf2Matrix = "11\n01\n".parse()?;
    let view = MinorTraceView::from(&minor_traces(&a)?);
    for p in &view.pairs {
        println!("I={:?} J={:?} t={}", p.squared, p.linear, p.t);
    }
    for (k, row) in view.totals.iter().enumerate() {
        println!("T[{k}][*] = {:?}", row.iter().map(|t| t.as_u8()).collect::<Vec<_>>());
    }
    println!("ΣT = {}", view.grand_total);

    for n in 1..=4 {
        let r = verify_trace_claims(n, 4, CAP)?;
        println!("n={n}: {}/{} matrices pass every claim", r.passing, r.matrices);
    }
    for n in 2..=3 {
        let r = crosscheck_minors_vs_engine(n, 4, CAP)?;
        println!(
            "{}: {} coefficients compared, {} deviations, L=1 for {}/{}",
            r.ring, r.monomials_checked, r.coefficient_deviations, r.lefschetz_histogram.one, r.matrices
        );
    }
    Ok(())
}
