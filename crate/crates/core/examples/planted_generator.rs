// Random matrices of planted rank and target density.

use boolfact::factor::{exact_rank, generate_planted_pair, planted_probability, GenSpec, SolveOptions};
use boolfact::Result;

pub fn run_example() -> Result<()> {
    let spec = GenSpec {
        m: 175,
        n: 175,
        k: 10,
        d: 0.15,
        seed: 1,
    };
    println!("factor entry probability {:.4}", planted_probability(spec.d, spec.k));
    let mean: f64 = (0..20)
        .map(|seed| generate_planted_pair(&GenSpec { seed, ..spec }).map(|p| p.product().density()))
        .sum::<Result<f64>>()?
        / 20.0;
    println!("mean density over 20 seeds: {mean:.4}");
    assert!((mean - 0.15).abs() < 0.02);

    let small = GenSpec {
        m: 8,
        n: 8,
        k: 3,
        d: 0.4,
        seed: 5,
    };
    let pair = generate_planted_pair(&small)?;
    let r = exact_rank(&pair.product(), &SolveOptions::default())?;
    println!("8x8 planted rank 3: Boolean rank {:?}", r.rank);
    assert!(r.rank.unwrap() <= 3);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
