//! Grid runner over (dataset, k, method) cells.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::bitmat::{BoolMatrix, FactorPair};
use crate::error::{Error, Result};
use crate::factor::{factorize_optimal, frui, rui, RelaxPolicy, RuiParams, SolveOptions};
use crate::report::BenchCell;

/// Factorization method of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Exact factorization at the given rank (SAT).
    Exact,
    /// Error-optimal factorization (MaxSAT).
    MaxSat,
    Rui,
    Frui,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::MaxSat => "maxsat",
            Method::Rui => "rui",
            Method::Frui => "frui",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Method::Exact),
            "maxsat" => Ok(Method::MaxSat),
            "rui" => Ok(Method::Rui),
            "frui" => Ok(Method::Frui),
            _ => Err(Error::InvalidArgument(format!("unknown method {s:?}"))),
        }
    }
}

/// Settings of a heuristic or MaxSAT run at rank `k`.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub solve: SolveOptions,
    pub relax_policy: RelaxPolicy,
    pub rui_k_prime: usize,
    pub rui_formula_rank: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            solve: SolveOptions::default(),
            relax_policy: RelaxPolicy::Steepest,
            rui_k_prime: 1,
            rui_formula_rank: None,
        }
    }
}

/// Factors and error of one run.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub pair: FactorPair,
    pub errors: usize,
    pub optimal: bool,
    pub wall_ms: u64,
}

/// Rank-`k` approximate factorization of `x` by `method`.
///
/// RUI runs `⌈k / k'⌉` iterations of rank `k'`; the resulting rank is `k`
/// only when `k'` divides `k`.
pub fn run_method(x: &BoolMatrix, k: usize, method: Method, cfg: &RunConfig) -> Result<RunOutcome> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let start = Instant::now();
    let (pair, optimal) = match method {
        Method::Exact => {
            return Err(Error::InvalidArgument(
                "method exact has no error to report; use rank or maxsat".into(),
            ))
        }
        Method::MaxSat => {
            let out = factorize_optimal(x, k, &cfg.solve)?;
            (out.pair, out.optimal)
        }
        Method::Rui => {
            let kp = cfg.rui_k_prime.max(1);
            let mut p = RuiParams::new(kp, k.div_ceil(kp));
            p.formula_rank = cfg.rui_formula_rank;
            p.relax_policy = cfg.relax_policy;
            p.solve = cfg.solve.clone();
            let out = rui(x, &p)?;
            (out.pair, out.all_optimal)
        }
        Method::Frui => {
            let out = frui(x, k, &cfg.solve, cfg.relax_policy)?;
            (out.pair, out.all_optimal)
        }
    };
    Ok(RunOutcome {
        errors: pair.error(x)?,
        pair,
        optimal,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// `⌈p·min(m, n)⌉` for `p` in 10 %, 25 % and 50 %, deduplicated.
pub fn default_k_grid(m: usize, n: usize) -> Vec<usize> {
    let base = m.min(n);
    let mut ks: Vec<usize> = [10, 25, 50]
        .iter()
        .map(|p| (p * base).div_ceil(100).max(1))
        .collect();
    ks.dedup();
    ks
}

/// A named matrix in the grid.
#[derive(Clone, Debug)]
pub struct BenchDataset {
    pub name: String,
    pub matrix: BoolMatrix,
    /// Ranks to run; the default grid when empty.
    pub ks: Vec<usize>,
}

/// Runs every (dataset, k, method) cell, on `jobs` worker threads, and
/// returns the cells in grid order.
pub fn run_bench(datasets: &[BenchDataset], methods: &[Method], cfg: &RunConfig, jobs: usize) -> Result<Vec<BenchCell>> {
    let mut grid = Vec::new();
    for (d, ds) in datasets.iter().enumerate() {
        let (m, n) = ds.matrix.shape();
        let ks = if ds.ks.is_empty() { default_k_grid(m, n) } else { ds.ks.clone() };
        for &k in &ks {
            for &method in methods {
                grid.push((d, k, method));
            }
        }
    }
    let run = |&(d, k, method): &(usize, usize, Method)| -> Result<BenchCell> {
        let ds = &datasets[d];
        let (m, n) = ds.matrix.shape();
        let out = run_method(&ds.matrix, k, method, cfg)?;
        let mut cell = BenchCell::new(&ds.name, m, n, method.name(), k, out.errors, out.wall_ms);
        cell.optimal = out.optimal;
        Ok(cell)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| grid.par_iter().map(run).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_grid_rounds_up() {
        assert_eq!(default_k_grid(101, 28), vec![3, 7, 14]);
        assert_eq!(default_k_grid(31, 147), vec![4, 8, 16]);
        assert_eq!(default_k_grid(3, 3), vec![1, 2]);
    }

    #[test]
    fn method_names_round_trip() {
        for m in [Method::Exact, Method::MaxSat, Method::Rui, Method::Frui] {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("greedy".parse::<Method>().is_err());
    }

    #[test]
    fn grid_order_and_parallel_agreement() {
        let ds = vec![
            BenchDataset { name: "eye".into(), matrix: BoolMatrix::identity(6), ks: vec![2, 6] },
            BenchDataset { name: "ones".into(), matrix: BoolMatrix::ones(5, 4), ks: vec![] },
        ];
        let methods = [Method::Rui, Method::Frui, Method::MaxSat];
        let cfg = RunConfig::default();
        let serial = run_bench(&ds, &methods, &cfg, 1).unwrap();
        let parallel = run_bench(&ds, &methods, &cfg, 4).unwrap();
        assert_eq!(serial.len(), 2 * 3 + 2 * 3);
        let key = |c: &BenchCell| (c.dataset.clone(), c.k, c.method.clone(), c.errors);
        assert_eq!(serial.iter().map(key).collect::<Vec<_>>(), parallel.iter().map(key).collect::<Vec<_>>());
        let eye2: Vec<usize> = serial.iter().filter(|c| c.dataset == "eye" && c.k == 2).map(|c| c.errors).collect();
        assert_eq!(eye2, vec![4, 4, 4]);
        assert!(serial.iter().filter(|c| c.dataset == "ones").all(|c| c.errors == 0));
    }

    #[test]
    fn exact_is_not_a_bench_method() {
        assert!(run_method(&BoolMatrix::identity(2), 2, Method::Exact, &RunConfig::default()).is_err());
    }
}
