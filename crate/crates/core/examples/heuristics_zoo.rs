// RUI and FRUI on the one-hot Zoo table.

use boolfact::dataset::{load_dataset, DatasetSpec};
use boolfact::factor::{frui, rui, RelaxPolicy, RuiParams, SolveOptions};
use boolfact::report::format_error_pct;
use boolfact::Result;

pub fn run_example() -> Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/zoo.csv");
    let x = load_dataset(&DatasetSpec::zoo(path))?;
    let cells = x.rows() * x.cols();
    println!("zoo: {}x{}, {} ones", x.rows(), x.cols(), x.ones_count());
    let opts = SolveOptions::default().with_budget_ms(60_000);
    for k in [3, 7, 14] {
        let mut p = RuiParams::new(1, k);
        p.solve = opts.clone();
        let r = rui(&x, &p)?;
        let f = frui(&x, k, &opts, RelaxPolicy::Steepest)?;
        for out in [&r, &f] {
            assert!(out.undercover.product().is_undercover_of(&x)?);
            assert_eq!(out.pair.rank(), k);
        }
        println!(
            "k={k:>2}  rui {:>3} ({}%)  frui {:>3} ({}%)",
            r.errors,
            format_error_pct(r.errors, cells),
            f.errors,
            format_error_pct(f.errors, cells)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
