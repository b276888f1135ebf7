//! Sweeps all 512 generator matrices of the triple connected sum and prints
//! the certificate summary. Pass a worker count as the first argument.

use fpp_workbench::algebra::RingSpec;
use fpp_workbench::fpp::{sweep_fpp, SweepMode};
use fpp_workbench::gf2::DEFAULT_ENUMERATION_CAP_BITS;

fn main() -> fpp_workbench::error::Result<()> {
    let jobs = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let spec = RingSpec::RpSum { n: 3, k: 2 };
    let cert = sweep_fpp(spec, Some(SweepMode::ValidOnly), jobs, DEFAULT_ENUMERATION_CAP_BITS)?;
    println!("{}: {} valid homs of {}", cert.ring, cert.valid_homs, cert.total_matrices);
    println!("L=0: {}, L=1: {}", cert.lefschetz_histogram.zero, cert.lefschetz_histogram.one);
    println!("table mismatches: {}", cert.table1_mismatches);
    for e in &cert.exceptional {
        println!("  #{:<3} {} {:?}", e.index, e.matrix.row_strings().join(" "), e.reasons);
    }
    println!("{}", serde_json::to_string(&cert.lefschetz_histogram).unwrap());
    Ok(())
}
