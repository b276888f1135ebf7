//! Builds the cohomology rings used throughout and checks their structure.

use fpp_workbench::algebra::{connected_sum_ring, cp2_power};

fn main() -> fpp_workbench::error::Result<()> {
    for alg in [connected_sum_ring(3, 2)?, cp2_power(2)?] {
        let d = alg.describe();
        println!("{}", d.ring);
        println!("  graded dimensions {:?}, χ = {}", d.graded_dims, d.euler);
        println!("  relations: {}", d.relations.join(", "));
        let axioms = alg.check_ring_axioms();
        let pd = alg.poincare_pairing()?;
        println!(
            "  axioms hold: {} ({} triples), Poincaré pairing nondegenerate: {}",
            axioms.holds(),
            axioms.triples_checked,
            pd.nondegenerate
        );
    }
    Ok(())
}
