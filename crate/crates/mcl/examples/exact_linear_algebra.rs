//! Exact linear algebra over GF(q): reduced row echelon form with a
//! transform certificate, rank, inverses, and left-sided solving.

use mcl::gf::Field;
use mcl::mat::Matrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f5 = Field::new(5)?;
    let a = Matrix::from_indices(
        f5.clone(),
        3,
        4,
        &[1, 2, 3, 4, 2, 4, 1, 3, 0, 0, 4, 2],
    )?;
    println!("A =\n{a}");

    let red = a.rref();
    println!("RRE(A) =\n{}", red.matrix);
    println!("rank(A) = {}, pivot columns = {:?}", red.rank, red.pivots);
    println!("elimination cost: {} field operations", red.ops);

    // The certificate: RRE(A) = T * A with T nonsingular.
    let check = red.transform.mul(&a)?;
    assert_eq!(check, red.matrix);
    println!("certificate holds: RRE(A) = T A with rank(T) = {}", red.transform.rank());

    // Square inverse round trip.
    let s = Matrix::from_indices(f5.clone(), 2, 2, &[1, 2, 3, 4])?;
    let inv = s.inverse()?;
    println!("\nS =\n{s}\nS^-1 =\n{inv}");
    assert_eq!(s.mul(&inv)?, Matrix::identity(f5.clone(), 2));

    // Solve X * A = B for X (left-sided, the decoder's workhorse).
    let x_true = Matrix::from_indices(f5.clone(), 2, 3, &[1, 0, 2, 3, 1, 4])?;
    let b = x_true.mul(&a)?;
    let x = a.solve_left(&b)?;
    assert_eq!(x.mul(&a)?, b);
    println!("\nsolved X A = B; residual is zero");

    // An inconsistent system is reported, not mis-solved: X [[1,0],[0,0]]
    // always has a zero second column, so B = [0 1] is unreachable.
    let low = Matrix::from_indices(f5.clone(), 2, 2, &[1, 0, 0, 0])?;
    let unreachable = Matrix::from_indices(f5, 1, 2, &[0, 1])?;
    match low.solve_left(&unreachable) {
        Err(e) => println!("inconsistent system rejected: {e}"),
        Ok(_) => unreachable!("no solution exists"),
    }
    Ok(())
}
