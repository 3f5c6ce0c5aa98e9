//! Build finite fields and exercise their arithmetic: a prime field, a
//! binary extension field, and a large extension, with inverses, the
//! multiplicative generator, and the packed element encoding.

use mcl::gf::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Prime field GF(7): arithmetic mod 7.
    let f7 = Field::new(7)?;
    let a = f7.fe(3)?;
    let b = f7.fe(5)?;
    println!("GF(7): 3 + 5 = {:?}", f7.add(a, b));
    println!("GF(7): 3 * 5 = {:?}", f7.mul(a, b));
    println!("GF(7): 3^-1  = {:?}", f7.inv(a)?);

    // Extension field GF(16) = GF(2^4). Elements are packed coefficient
    // vectors: index 6 = 0b0110 is the polynomial x^2 + x.
    let f16 = Field::new(16)?;
    println!("\nGF(16) modulus coefficients (ascending): {:?}", f16.modulus());
    let x = f16.fe(6)?;
    let y = f16.fe(11)?;
    println!("GF(16): 6 * 11 = {:?}", f16.mul(x, y));
    println!("GF(16): 6 + 11 = {:?} (carry-free XOR)", f16.add(x, y));
    println!("GF(16): generator = {:?}", f16.generator());

    // The generator's powers enumerate every nonzero element exactly once.
    let g = f16.generator();
    let mut seen = std::collections::HashSet::new();
    let mut cur = mcl::gf::ONE;
    for _ in 0..15 {
        cur = f16.mul(cur, g);
        seen.insert(cur.0);
    }
    println!("GF(16): generator cycle covers {} nonzero elements", seen.len());

    // Large extension: GF(2^16), the top of the supported range.
    let f65536 = Field::new(65536)?;
    let u = f65536.fe(54321)?;
    let v = f65536.mul(u, u);
    println!("\nGF(65536): 54321^2 = {:?}, (54321^2)/54321 = {:?}", v, f65536.div(v, u)?);

    // Field axioms spot check: distributivity over a random-ish triple.
    let f9 = Field::new(9)?;
    let (p, q, r) = (f9.fe(4)?, f9.fe(7)?, f9.fe(2)?);
    let lhs = f9.mul(p, f9.add(q, r));
    let rhs = f9.add(f9.mul(p, q), f9.mul(p, r));
    assert_eq!(lhs, rhs);
    println!("\nGF(9): distributivity verified on (4, 7, 2)");
    Ok(())
}
