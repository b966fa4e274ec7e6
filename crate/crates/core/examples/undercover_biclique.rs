// A rank-1 undercover of a bi-adjacency matrix is a maximum edge biclique.

use boolfact::factor::{undercover_optimal, SolveOptions};
use boolfact::{BoolMatrix, Result};

pub fn run_example() -> Result<()> {
    // rows are people, columns are skills
    let x = BoolMatrix::from_strs(&[
        "110110", //
        "111100", //
        "011110", //
        "110111", //
        "001011", //
    ])?;
    let opts = SolveOptions::default();
    let one = undercover_optimal(&x, 1, &opts)?;
    let rows = one.pair.a().col_indices(0);
    let cols = one.pair.b().row_indices(0);
    println!("biclique rows {rows:?} x cols {cols:?}: {} edges", one.value);
    assert!(one.optimal);
    assert_eq!(one.value, rows.len() * cols.len());
    assert!(rows.iter().all(|&i| cols.iter().all(|&j| x.get(i, j))));

    for k in 2..=3 {
        let r = undercover_optimal(&x, k, &opts)?;
        assert!(r.pair.product().is_undercover_of(&x)?);
        println!("rank {k} undercover covers {} of {} ones", r.value, x.ones_count());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
