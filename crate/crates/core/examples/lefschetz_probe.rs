//! Induced endomorphisms of the triple connected sum of RP^4: the identity and
//! the cyclic permutation of generators, with the per-degree reference table.

use fpp_workbench::algebra::connected_sum_ring;
use fpp_workbench::endo::{compare_table1, induce, lefschetz, validate_ring_hom};
use fpp_workbench::gf2::Gf2Matrix;

fn main() -> fpp_workbench::error::Result<()> {
    let alg = connected_sum_ring(3, 2)?;
    for rows in ["100\n010\n001\n", "010\n001\n100\n", "111\n000\n000\n"] {
        let a: Gf2Matrix = rows.parse()?;
        let endo = induce(&alg, &a)?;
        let hom = validate_ring_hom(&alg, &endo);
        let report = lefschetz(&endo);
        let table = compare_table1(&alg, &a, &report)?;
        println!("A = {}", a.row_strings().join(" "));
        println!("  ring homomorphism: {} ({} violations)", hom.is_ring_hom, hom.violations.len());
        println!("  traces {:?}  L = {}", report.traces.iter().map(|t| t.as_u8()).collect::<Vec<_>>(), report.lefschetz);
        println!("  table prediction {:?}  agrees: {}", table.predicted.iter().map(|t| t.as_u8()).collect::<Vec<_>>(), table.all_match());
    }
    Ok(())
}
