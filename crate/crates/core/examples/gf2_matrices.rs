//! GF(2) matrices: determinants, principal minors and the enumeration order.

use fpp_workbench::gf2::{enumerate_matrices, Gf2Matrix};

fn main() -> fpp_workbench::error::Result<()> {
    let a: Gf2Matrix = "110\n011\n101\n".parse()?;
    println!("A =\n{a}");
    println!("det A = {}", a.det()?);
    println!("A[{{1,3}}] = {:?}", a.principal_submatrix(&[0, 2])?.row_strings());

    let invertible = enumerate_matrices(3)?.filter(|m| m.det().is_ok_and(|d| d.is_one())).count();
    println!("invertible 3x3 matrices over GF(2): {invertible} of 512");

    for m in enumerate_matrices(2)?.take(4) {
        println!("#{} {}", m.to_index().unwrap(), m.row_strings().join(" "));
    }
    Ok(())
}
