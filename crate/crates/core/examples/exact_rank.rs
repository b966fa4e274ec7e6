// Boolean rank by incremental SAT calls, with a witness factorization.

use boolfact::factor::{exact_rank, SolveOptions};
use boolfact::{BoolMatrix, Result};

pub fn run_example() -> Result<()> {
    let opts = SolveOptions::default();
    let cases = [
        ("identity 4", BoolMatrix::identity(4)),
        ("all-ones 5x5", BoolMatrix::ones(5, 5)),
        ("triangle", BoolMatrix::from_strs(&["110", "011", "101"])?),
        ("staircase", BoolMatrix::from_strs(&["1000", "1100", "1110", "1111"])?),
    ];
    for (name, x) in &cases {
        let r = exact_rank(x, &opts)?;
        let k = r.rank.expect("no budget set");
        let w = r.witness.as_ref().expect("nonzero matrix has a witness");
        assert_eq!(&w.product(), x);
        println!("{name:>13}: rank {k} (incompatibility bound {}, {} solver calls)", r.fooling_bound, r.steps.len());
    }
    // a lower-triangular staircase needs one rectangle per row
    assert_eq!(exact_rank(&cases[3].1, &opts)?.rank, Some(4));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
