//! The text fixture format for matrices: a `q n m` header line, then n rows
//! of m digits (values 0..q-1, alphabet 0-9 then a-z), with blank lines
//! ignored. Round-trips through strings and files, and rejects malformed
//! input with a precise error.

use mcl::gf::Field;
use mcl::sampling::{sample_rank_t, sample_uniform, DetRng};
use mcl::textio::{matrix_from_str, matrix_to_string, read_matrix_file, write_matrix_file};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::new(16)?;
    let mut rng = DetRng::new(11);

    // --- String round trip ---------------------------------------------------
    let mat = sample_uniform(&mut rng, &f, 3, 5);
    let text = matrix_to_string(&mat)?;
    println!("a 3x5 matrix over GF(16) as text:\n{text}");
    let back = matrix_from_str(&text)?;
    assert_eq!(back, mat, "string round trip must be lossless");

    // Blank lines are tolerated anywhere.
    let spaced = format!("\n\n{}\n", text.replace('\n', "\n\n"));
    assert_eq!(matrix_from_str(&spaced)?, mat);
    println!("blank lines ignored on read");

    // --- File round trip ------------------------------------------------------
    let dir = std::env::temp_dir().join("mcl_fixture_demo");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("rank2.txt");
    let (w, _) = sample_rank_t(&mut rng, &f, 4, 6, 2)?;
    write_matrix_file(&path, &w)?;
    let loaded = read_matrix_file(&path)?;
    assert_eq!(loaded, w);
    assert_eq!(loaded.rank(), 2);
    println!("file round trip at {}: rank {} preserved", path.display(), loaded.rank());
    std::fs::remove_dir_all(&dir)?;

    // --- Malformed input is rejected, not guessed -----------------------------
    println!("\nrejected inputs:");
    for (bad, label) in [
        ("", "empty input"),
        ("4 2\n01\n23\n", "truncated header"),
        ("4 2 2\n01\n0\n", "row too short"),
        ("4 2 2\n01\n23\n45\n", "too many rows"),
        ("4 2 2\n01\n29\n", "digit 9 outside GF(4)"),
        ("65537 1 1\n0\n", "order too large for the digit alphabet"),
    ] {
        match matrix_from_str(bad) {
            Err(e) => println!("  {label}: {e}"),
            Ok(_) => panic!("{label} should not parse"),
        }
    }
    Ok(())
}
