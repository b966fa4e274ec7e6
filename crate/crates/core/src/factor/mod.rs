//! Factorization strategies: exact rank search, optimal approximate and
//! undercover factorizations, the RUI/FRUI heuristics, greedy relaxation
//! and the planted-rank instance generator.

mod generate;
mod iterative;
mod relax;

use std::collections::HashMap;
use std::time::{Duration, Instant};

pub use generate::{generate_planted, generate_planted_pair, planted_probability, GenSpec};
pub use iterative::{frui, rui, select_pivot, HeuristicOutcome, RuiParams};
pub use relax::{relax_undercover, relax_undercover_with, RelaxPolicy, RelaxStats};

use crate::bitmat::{BoolMatrix, FactorPair};
use crate::cnf::{ExternalVerdict, WcnfFormula, WcnfStyle};
use crate::encode::{
    encode_approx, encode_exact, encode_exact_anchored, encode_undercover, find_incompatible_sets,
};
use crate::error::{Error, Result};
use crate::oll::{solve_maxsat, solve_maxsat_external, MaxSatOutcome, OllOptions, OllStats};
use crate::sat::{Budget, ExternalSolver, SolveResult, Solver, SolverChoice};

/// Settings shared by the solver-backed strategies.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub symmetry: bool,
    pub simplify: bool,
    /// Time limit per solver call in milliseconds.
    pub budget_ms: Option<u64>,
    pub seed: u64,
    /// Backend for plain SAT calls.
    pub solver: SolverChoice,
    /// External MaxSAT solver used instead of the internal OLL loop.
    pub maxsat_solver: Option<ExternalSolver>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            symmetry: true,
            simplify: true,
            budget_ms: None,
            seed: 0,
            solver: SolverChoice::Internal,
            maxsat_solver: None,
        }
    }
}

impl SolveOptions {
    pub fn with_budget_ms(mut self, ms: u64) -> Self {
        self.budget_ms = Some(ms);
        self
    }

    fn budget(&self) -> Budget {
        Budget::from_ms(self.budget_ms)
    }

    pub(crate) fn run_maxsat(&self, f: &WcnfFormula) -> Result<MaxSatOutcome> {
        match &self.maxsat_solver {
            Some(ext) => solve_maxsat_external(f, ext, WcnfStyle::Legacy),
            None => solve_maxsat(
                f,
                &OllOptions {
                    budget: self.budget(),
                    seed: self.seed,
                },
            ),
        }
    }
}

/// Verdict of one SAT call in the rank search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankVerdict {
    Sat,
    Unsat,
    Unknown,
}

/// Outcome of [`exact_rank`].
#[derive(Clone, Debug)]
pub struct RankResult {
    /// Boolean rank, when proven.
    pub rank: Option<usize>,
    /// Factor pair reconstructing the input exactly.
    pub witness: Option<FactorPair>,
    /// Lower bound from the largest incompatible set found.
    pub fooling_bound: usize,
    /// Largest rank proven infeasible (by a solver call or the bound).
    pub refuted: usize,
    /// `(k, verdict, milliseconds)` per solver call.
    pub steps: Vec<(usize, RankVerdict, u64)>,
}

fn solve_sat(f: &WcnfFormula, opts: &SolveOptions) -> Result<(RankVerdict, Option<Vec<bool>>)> {
    match &opts.solver {
        SolverChoice::Internal => {
            let mut s = Solver::with_seed(opts.seed);
            s.load_formula(f);
            Ok(match s.solve(&[], &opts.budget()) {
                SolveResult::Sat => (RankVerdict::Sat, Some(s.model().to_vec())),
                SolveResult::Unsat(_) => (RankVerdict::Unsat, None),
                SolveResult::Unknown => (RankVerdict::Unknown, None),
            })
        }
        SolverChoice::External(ext) => {
            let ext = match opts.budget_ms {
                Some(ms) if ext.timeout_secs().is_none() => ext.clone().with_timeout(ms.div_ceil(1000)),
                _ => ext.clone(),
            };
            match ext.solve_cnf(f) {
                Ok(ExternalVerdict::Sat(m)) => Ok((RankVerdict::Sat, Some(m))),
                Ok(ExternalVerdict::Unsat) => Ok((RankVerdict::Unsat, None)),
                Ok(ExternalVerdict::Unknown) | Err(Error::Timeout(_)) => Ok((RankVerdict::Unknown, None)),
                Err(e) => Err(e),
            }
        }
    }
}

/// Distinct nonzero rows of `x`, and for every row the index of its
/// representative (`None` for zero rows).
fn distinct_rows(x: &BoolMatrix) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut reps: Vec<usize> = Vec::new();
    let mut seen: HashMap<&[u64], usize> = HashMap::new();
    let map = (0..x.rows())
        .map(|i| {
            if x.row_ones(i) == 0 {
                return None;
            }
            Some(*seen.entry(x.row_words(i)).or_insert_with(|| {
                reps.push(i);
                reps.len() - 1
            }))
        })
        .collect();
    (reps, map)
}

/// `x` without zero and repeated rows and columns, which leaves the
/// Boolean rank unchanged, with the maps back to the original indices.
fn reduce(x: &BoolMatrix) -> (BoolMatrix, Vec<Option<usize>>, Vec<Option<usize>>) {
    let (rows, row_map) = distinct_rows(x);
    let all_cols: Vec<usize> = (0..x.cols()).collect();
    let t = x.submatrix(&rows, &all_cols).transpose();
    let (cols, col_map) = distinct_rows(&t);
    (x.submatrix(&rows, &cols), row_map, col_map)
}

/// Expands a factorization of the reduced matrix to the original shape.
fn expand(pair: &FactorPair, row_map: &[Option<usize>], col_map: &[Option<usize>]) -> Result<FactorPair> {
    let k = pair.rank();
    let a = BoolMatrix::from_fn(row_map.len(), k, |i, l| row_map[i].is_some_and(|r| pair.a().get(r, l)));
    let b = BoolMatrix::from_fn(k, col_map.len(), |l, j| col_map[j].is_some_and(|c| pair.b().get(l, c)));
    FactorPair::new(a, b)
}

/// Smallest `k` with an exact rank-`k` factorization of `x`.
///
/// Zero and repeated rows and columns are removed first. The search goes
/// upward from the size of the largest pairwise incompatible set, a valid
/// lower bound, so every step below it is skipped. The zero matrix has
/// rank 0. If a solver call runs out of budget the search stops with
/// `rank == None`.
pub fn exact_rank(x: &BoolMatrix, opts: &SolveOptions) -> Result<RankResult> {
    if x.is_zero() {
        return exact_rank_reduced(x, opts);
    }
    let (reduced, row_map, col_map) = reduce(x);
    let mut res = exact_rank_reduced(&reduced, opts)?;
    if let Some(w) = res.witness.take() {
        let full = expand(&w, &row_map, &col_map)?;
        if full.product() != *x {
            return Err(Error::ModelCheck("expanded witness does not reconstruct the matrix".into()));
        }
        res.witness = Some(full);
    }
    Ok(res)
}

fn exact_rank_reduced(x: &BoolMatrix, opts: &SolveOptions) -> Result<RankResult> {
    if x.is_zero() {
        return Ok(RankResult {
            rank: Some(0),
            witness: None,
            fooling_bound: 0,
            refuted: 0,
            steps: Vec::new(),
        });
    }
    let anchors: Vec<(usize, usize)> = find_incompatible_sets(x)
        .into_iter()
        .max_by_key(|s| s.len())
        .map(|s| s.entries().to_vec())
        .unwrap_or_default();
    let fooling = anchors.len().max(1);
    let mut res = RankResult {
        rank: None,
        witness: None,
        fooling_bound: fooling,
        refuted: fooling - 1,
        steps: Vec::new(),
    };
    let k_max = x.rows().min(x.cols());
    for k in fooling..=k_max {
        let (f, h) = if opts.symmetry {
            encode_exact_anchored(x, k, &anchors)?
        } else {
            encode_exact(x, k, false)?
        };
        let start = Instant::now();
        let (verdict, model) = solve_sat(&f, opts)?;
        res.steps.push((k, verdict, start.elapsed().as_millis() as u64));
        match verdict {
            RankVerdict::Sat => {
                let pair = h.decode(&model.expect("SAT verdict carries a model"))?;
                if pair.product() != *x {
                    return Err(Error::ModelCheck("rank witness does not reconstruct the matrix".into()));
                }
                res.rank = Some(k);
                res.witness = Some(pair);
                return Ok(res);
            }
            RankVerdict::Unsat => res.refuted = k,
            RankVerdict::Unknown => return Ok(res),
        }
    }
    Err(Error::ModelCheck(format!(
        "no exact factorization up to min(m, n) = {k_max}, which always exists"
    )))
}

/// Outcome of [`factorize_optimal`] and [`undercover_optimal`].
#[derive(Clone, Debug)]
pub struct OptimalOutcome {
    pub pair: FactorPair,
    /// Reconstruction errors for factorizations, covered 1s for
    /// undercovers.
    pub value: usize,
    /// Whether `value` is proven optimal.
    pub optimal: bool,
    /// Proven lower bound on the MaxSAT cost.
    pub lower_bound: u64,
    pub stats: OllStats,
    pub elapsed: Duration,
}

fn decode_or_zero(
    out: &MaxSatOutcome,
    h: &crate::encode::EncodingHandle,
    m: usize,
    k: usize,
    n: usize,
) -> Result<FactorPair> {
    match out.model() {
        Some(model) => h.decode(model),
        None => Ok(FactorPair::zeros(m, k, n)),
    }
}

/// Rank-`k` factorization with as few errors as possible.
pub fn factorize_optimal(x: &BoolMatrix, k: usize, opts: &SolveOptions) -> Result<OptimalOutcome> {
    let start = Instant::now();
    let (f, h) = encode_approx(x, k, opts.symmetry)?;
    let out = opts.run_maxsat(&f)?;
    let pair = decode_or_zero(&out, &h, x.rows(), k, x.cols())?;
    let errors = pair.error(x)?;
    if out.is_optimal() {
        debug_assert_eq!(Some(errors as u64), out.cost());
    }
    Ok(OptimalOutcome {
        pair,
        value: errors,
        optimal: out.is_optimal(),
        lower_bound: out.lower_bound(),
        stats: out.stats(),
        elapsed: start.elapsed(),
    })
}

/// Rank-`k` undercover of `x` covering as many 1s as possible.
pub fn undercover_optimal(x: &BoolMatrix, k: usize, opts: &SolveOptions) -> Result<OptimalOutcome> {
    let start = Instant::now();
    let (f, h, _) = encode_undercover(x, k, opts.symmetry, opts.simplify)?;
    let out = opts.run_maxsat(&f)?;
    let pair = decode_or_zero(&out, &h, x.rows(), k, x.cols())?;
    let product = pair.product();
    assert!(
        product.is_undercover_of(x)?,
        "undercover solution covers a 0-entry"
    );
    Ok(OptimalOutcome {
        value: product.ones_count(),
        pair,
        optimal: out.is_optimal(),
        lower_bound: out.lower_bound(),
        stats: out.stats(),
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rank_spot_values() {
        let opts = SolveOptions::default();
        for n in 1..=5 {
            let r = exact_rank(&BoolMatrix::ones(n, n), &opts).unwrap();
            assert_eq!(r.rank, Some(1));
            let r = exact_rank(&BoolMatrix::identity(n), &opts).unwrap();
            assert_eq!(r.rank, Some(n));
            assert_eq!(r.witness.unwrap().product(), BoolMatrix::identity(n));
        }
        let z = BoolMatrix::zeros(3, 2);
        assert_eq!(exact_rank(&z, &opts).unwrap().rank, Some(0));
    }

    #[test]
    fn rank_search_steps_start_at_fooling_bound() {
        let x = BoolMatrix::from_strs(&["110", "011", "101"]).unwrap();
        let r = exact_rank(&x, &SolveOptions::default()).unwrap();
        assert_eq!(r.rank, Some(3));
        assert!(r.steps.first().unwrap().0 >= 1);
        assert!(r.fooling_bound <= 3);
    }

    #[test]
    fn reduction_keeps_rank_and_shape() {
        let x = BoolMatrix::from_strs(&["1100", "0000", "1100", "0111", "1100"]).unwrap();
        let (r, rows, cols) = reduce(&x);
        assert_eq!(r, BoolMatrix::from_strs(&["110", "011"]).unwrap());
        assert_eq!(rows, vec![Some(0), None, Some(0), Some(1), Some(0)]);
        assert_eq!(cols, vec![Some(0), Some(1), Some(2), Some(2)]);
        let res = exact_rank(&x, &SolveOptions::default()).unwrap();
        assert_eq!(res.rank, Some(2));
        assert_eq!(res.witness.unwrap().product(), x);
    }

    #[test]
    fn rank_matches_unreduced_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..40 {
            // few distinct rows so that the reduction has work to do
            let base = BoolMatrix::from_fn(3, 6, |_, _| rng.gen_bool(0.5));
            let x = BoolMatrix::from_fn(7, 6, |i, j| base.get(i % 3, j) && j != 5);
            let full = exact_rank_reduced(&x, &SolveOptions::default()).unwrap();
            let red = exact_rank(&x, &SolveOptions::default()).unwrap();
            assert_eq!(full.rank, red.rank);
            if let Some(w) = red.witness {
                assert_eq!(w.product(), x);
            }
        }
    }

    #[test]
    fn optimal_factorizations_of_identity() {
        let i3 = BoolMatrix::identity(3);
        let opts = SolveOptions::default();
        assert_eq!(factorize_optimal(&i3, 3, &opts).unwrap().value, 0);
        let r = factorize_optimal(&i3, 1, &opts).unwrap();
        assert!(r.optimal);
        assert_eq!(r.value, 2);
    }

    #[test]
    fn undercover_spot_values() {
        let opts = SolveOptions::default();
        assert_eq!(undercover_optimal(&BoolMatrix::ones(10, 10), 1, &opts).unwrap().value, 100);
        assert_eq!(undercover_optimal(&BoolMatrix::identity(5), 2, &opts).unwrap().value, 2);
    }

    fn max_biclique(x: &BoolMatrix) -> usize {
        let (m, n) = x.shape();
        (1u32..(1 << m))
            .map(|rows| {
                let common = (0..n)
                    .filter(|&j| (0..m).all(|i| rows & (1 << i) == 0 || x.get(i, j)))
                    .count();
                rows.count_ones() as usize * common
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn rank_one_undercover_is_max_biclique() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let x = BoolMatrix::from_fn(7, 7, |_, _| rng.gen_bool(0.5));
            let got = undercover_optimal(&x, 1, &SolveOptions::default()).unwrap();
            assert!(got.optimal);
            assert_eq!(got.value, max_biclique(&x));
        }
    }
}
