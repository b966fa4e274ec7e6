// Boolean products, reconstruction error and the undercover relation.

use boolfact::{BoolMatrix, FactorPair, Result};

pub fn run_example() -> Result<()> {
    let a = BoolMatrix::from_strs(&["10", "11", "01"])?;
    let b = BoolMatrix::from_strs(&["1100", "0011"])?;
    let pair = FactorPair::new(a, b)?;
    let x = pair.product();
    println!("A∘B =\n{}", x.to_dense_string());
    assert_eq!(x, BoolMatrix::from_strs(&["1100", "1111", "0011"])?);

    // one term alone covers part of X and never a 0
    let first = pair.term(0);
    assert!(first.is_undercover_of(&x)?);
    println!("term 0 covers {} of {} ones", first.ones_count(), x.ones_count());

    let mut noisy = x.clone();
    noisy.flip(0, 3);
    noisy.flip(2, 0);
    println!("error against a noisy copy: {}", pair.error(&noisy)?);
    assert_eq!(pair.error(&noisy)?, 2);

    let back = BoolMatrix::parse_dense(&x.to_dense_string())?;
    assert_eq!(back, x);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
