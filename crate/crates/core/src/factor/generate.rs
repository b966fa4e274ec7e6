//! Random matrices of planted Boolean rank.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitmat::{BoolMatrix, FactorPair};
use crate::error::{Error, Result};

/// Shape, planted rank, target density and seed of a generated instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub d: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 || self.k == 0 {
            return Err(Error::InvalidArgument("m, n and k must be positive".into()));
        }
        if !(self.d > 0.0 && self.d < 1.0) {
            return Err(Error::InvalidArgument(format!("density {} not in (0, 1)", self.d)));
        }
        Ok(())
    }
}

/// Bernoulli parameter of the factor entries giving product density `d`.
///
/// A product cell is 0 with probability `(1 - p²)^k`; solving
/// `1 - (1 - p²)^k = d` gives `p = √(1 - (1 - d)^{1/k})`.
pub fn planted_probability(d: f64, k: usize) -> f64 {
    (1.0 - (1.0 - d).powf(1.0 / k as f64)).sqrt()
}

/// Random factors `A` (m×k) and `B` (k×n) with i.i.d. entries; `A` is
/// drawn row-major first, then `B`.
pub fn generate_planted_pair(spec: &GenSpec) -> Result<FactorPair> {
    spec.validate()?;
    let p = planted_probability(spec.d, spec.k);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let a = BoolMatrix::from_fn(spec.m, spec.k, |_, _| rng.gen_bool(p));
    let b = BoolMatrix::from_fn(spec.k, spec.n, |_, _| rng.gen_bool(p));
    FactorPair::new(a, b)
}

/// `A ∘ B` for the pair of [`generate_planted_pair`].
pub fn generate_planted(spec: &GenSpec) -> Result<BoolMatrix> {
    Ok(generate_planted_pair(spec)?.product())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(d: f64, seed: u64) -> GenSpec {
        GenSpec {
            m: 40,
            n: 30,
            k: 4,
            d,
            seed,
        }
    }

    #[test]
    fn probability_inverts_density() {
        for k in 1..=12 {
            for d in [0.05, 0.15, 0.5, 0.9] {
                let p = planted_probability(d, k);
                let density = 1.0 - (1.0 - p * p).powi(k as i32);
                assert!((density - d).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(generate_planted(&spec(0.3, 7)).unwrap(), generate_planted(&spec(0.3, 7)).unwrap());
        assert_ne!(generate_planted(&spec(0.3, 7)).unwrap(), generate_planted(&spec(0.3, 8)).unwrap());
    }

    #[test]
    fn sparser_target_gives_sparser_product() {
        let lo: usize = (0..10).map(|s| generate_planted(&spec(0.05, s)).unwrap().ones_count()).sum();
        let hi: usize = (0..10).map(|s| generate_planted(&spec(0.6, s)).unwrap().ones_count()).sum();
        assert!(lo < hi);
    }

    #[test]
    fn invalid_specs() {
        assert!(generate_planted(&spec(0.0, 1)).is_err());
        assert!(generate_planted(&spec(1.0, 1)).is_err());
        assert!(generate_planted(&GenSpec { k: 0, ..spec(0.2, 1) }).is_err());
    }
}
