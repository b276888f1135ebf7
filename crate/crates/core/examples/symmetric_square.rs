//! Euler characteristic of symmetric squares, by formula and by counting
//! swap orbits of chains in the product face poset. An optional argument
//! names a facet file to analyse instead of the built-in complexes.

use fpp_workbench::sympow::{euler_sym_square, sym_square_oracle, SimplicialComplex, DEFAULT_POSET_CAP};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let complexes = match std::env::args().nth(1) {
        Some(path) => vec![(path.clone(), SimplicialComplex::parse(&std::fs::read_to_string(&path)?)?)],
        None => vec![
            ("circle".to_string(), SimplicialComplex::boundary_of_simplex(2)),
            ("2-sphere".to_string(), SimplicialComplex::boundary_of_simplex(3)),
            ("projective plane".to_string(), SimplicialComplex::rp2_six_vertex()),
        ],
    };
    for (name, k) in complexes {
        let r = sym_square_oracle(&k, DEFAULT_POSET_CAP)?;
        println!(
            "{name}: χ = {}, orbits {:?}, χ(X(2)) = {} (formula {})",
            r.chi_x, r.orbit, r.chi_quotient, r.formula
        );
    }
    println!("χ = -1 gives χ(X(2)) = {}", euler_sym_square(-1)?);
    Ok(())
}
