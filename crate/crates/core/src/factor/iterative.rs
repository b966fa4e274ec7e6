//! RUI and FRUI: a factorization assembled from successive small
//! undercovers, each maximizing the 1s not yet covered, then relaxed by
//! greedy flips.

use std::time::{Duration, Instant};

use super::relax::{relax_undercover_with, RelaxPolicy, RelaxStats};
use super::SolveOptions;
use crate::bitmat::{BoolMatrix, FactorPair};
use crate::encode::{add_cover_softs, encode_undercover_hard, simplify};
use crate::error::{Error, Result};

/// Parameters of [`rui`].
#[derive(Clone, Debug)]
pub struct RuiParams {
    /// Rank of each undercover.
    pub k_prime: usize,
    pub iterations: usize,
    /// Rank of the reused undercover encoding when it should differ from
    /// `k_prime`; every one of its columns is appended per iteration.
    pub formula_rank: Option<usize>,
    pub relax_policy: RelaxPolicy,
    pub solve: SolveOptions,
}

impl RuiParams {
    pub fn new(k_prime: usize, iterations: usize) -> Self {
        RuiParams {
            k_prime,
            iterations,
            formula_rank: None,
            relax_policy: RelaxPolicy::Steepest,
            solve: SolveOptions::default(),
        }
    }

    /// Rank of the returned factorization.
    pub fn final_rank(&self) -> usize {
        self.formula_rank.unwrap_or(self.k_prime) * self.iterations
    }
}

/// Outcome of [`rui`] and [`frui`].
#[derive(Clone, Debug)]
pub struct HeuristicOutcome {
    /// Relaxed factorization.
    pub pair: FactorPair,
    pub errors: usize,
    /// Union of undercovers before relaxation; its product is below `X`.
    pub undercover: FactorPair,
    /// Covered 1s after each iteration.
    pub covered_history: Vec<usize>,
    /// Whether every MaxSAT call finished with a proven optimum.
    pub all_optimal: bool,
    pub relax: RelaxStats,
    pub elapsed: Duration,
}

fn uncovered_ones(x: &BoolMatrix, covered: &BoolMatrix) -> Vec<(usize, usize)> {
    x.ones_positions()
        .into_iter()
        .filter(|&(i, j)| !covered.get(i, j))
        .collect()
}

fn finish(
    x: &BoolMatrix,
    undercover: FactorPair,
    covered_history: Vec<usize>,
    all_optimal: bool,
    policy: RelaxPolicy,
    start: Instant,
) -> Result<HeuristicOutcome> {
    assert!(
        undercover.product().is_undercover_of(x)?,
        "iterated undercover covers a 0-entry"
    );
    let (pair, relax) = relax_undercover_with(&undercover, x, policy)?;
    Ok(HeuristicOutcome {
        errors: relax.error_after,
        pair,
        undercover,
        covered_history,
        all_optimal,
        relax,
        elapsed: start.elapsed(),
    })
}

/// Relaxed Undercover Iteratively.
///
/// One rank-`k'` undercover encoding of `x` is built and reused. Each
/// iteration keeps soft cover variables only for the 1s not yet covered,
/// solves, and appends the resulting `k'` columns of `A` and rows of `B`.
/// Once every 1 is covered the remaining iterations append zero factors.
pub fn rui(x: &BoolMatrix, p: &RuiParams) -> Result<HeuristicOutcome> {
    if p.k_prime == 0 || p.iterations == 0 {
        return Err(Error::InvalidArgument("k' and it must be at least 1".into()));
    }
    let start = Instant::now();
    let (m, n) = x.shape();
    let kr = p.formula_rank.unwrap_or(p.k_prime);
    let (hard, h) = encode_undercover_hard(x, kr, p.solve.symmetry)?;
    let mut covered = BoolMatrix::zeros(m, n);
    let mut acc: Option<FactorPair> = None;
    let mut history = Vec::with_capacity(p.iterations);
    let mut all_optimal = true;

    for _ in 0..p.iterations {
        let pool = uncovered_ones(x, &covered);
        let part = if pool.is_empty() {
            FactorPair::zeros(m, kr, n)
        } else {
            let mut f = hard.clone();
            add_cover_softs(&mut f, &h, &pool)?;
            if p.solve.simplify {
                simplify(x, &mut f, &h, kr, &pool)?;
            }
            let out = p.solve.run_maxsat(&f)?;
            all_optimal &= out.is_optimal();
            match out.model() {
                Some(model) => h.decode(model)?,
                None => FactorPair::zeros(m, kr, n),
            }
        };
        covered.union_in_place(&part.product());
        history.push(covered.ones_count());
        acc = Some(match acc {
            None => part,
            Some(a) => a.concat(&part)?,
        });
    }
    let undercover = acc.expect("at least one iteration");
    finish(x, undercover, history, all_optimal, p.relax_policy, start)
}

/// 1-entry of `residual` maximizing its row sum times its column sum in
/// `residual`, ties to the lowest `(i, j)`.
pub fn select_pivot(residual: &BoolMatrix) -> Option<(usize, usize)> {
    let rows: Vec<usize> = (0..residual.rows()).map(|i| residual.row_ones(i)).collect();
    let cols: Vec<usize> = (0..residual.cols()).map(|j| residual.col_ones(j)).collect();
    let mut best: Option<((usize, usize), usize)> = None;
    for (i, j) in residual.ones_positions() {
        let score = rows[i] * cols[j];
        if best.is_none_or(|(_, s)| score > s) {
            best = Some(((i, j), score));
        }
    }
    best.map(|(e, _)| e)
}

/// Fast Relaxed Undercover Iteratively.
///
/// Each of the `k` iterations works on the residual `X'`, the 1s of `x`
/// not yet covered. It picks a pivot in `X'`, restricts `x` to the rows
/// with a 1 of `X'` in the pivot column and the columns with a 1 of `X'`
/// in the pivot row, and finds a rank-1 undercover of that submatrix
/// covering the pivot and as many uncovered 1s as possible. The rank-1 factors are padded
/// with zeros to full size and appended.
pub fn frui(x: &BoolMatrix, k: usize, opts: &SolveOptions, policy: RelaxPolicy) -> Result<HeuristicOutcome> {
    if k == 0 {
        return Err(Error::InvalidArgument("rank k must be at least 1".into()));
    }
    let start = Instant::now();
    let (m, n) = x.shape();
    let mut covered = BoolMatrix::zeros(m, n);
    let mut a = BoolMatrix::zeros(m, k);
    let mut b = BoolMatrix::zeros(k, n);
    let mut history = Vec::with_capacity(k);
    let mut all_optimal = true;

    for l in 0..k {
        let residual = x.and_not(&covered)?;
        let Some((pi, pj)) = select_pivot(&residual) else {
            history.push(covered.ones_count());
            continue;
        };
        let rows = residual.col_indices(pj);
        let cols = residual.row_indices(pi);
        let sub = x.submatrix(&rows, &cols);
        let sub_covered = covered.submatrix(&rows, &cols);
        let pool = uncovered_ones(&sub, &sub_covered);
        let (li, lj) = (
            rows.binary_search(&pi).expect("pivot row is selected"),
            cols.binary_search(&pj).expect("pivot column is selected"),
        );

        let (mut f, h) = encode_undercover_hard(&sub, 1, opts.symmetry)?;
        f.add_hard(&[h.a_var(li, 0).pos()])?;
        f.add_hard(&[h.b_var(0, lj).pos()])?;
        add_cover_softs(&mut f, &h, &pool)?;
        if opts.simplify {
            simplify(&sub, &mut f, &h, 1, &pool)?;
        }
        let out = opts.run_maxsat(&f)?;
        all_optimal &= out.is_optimal();
        let (sa, sb) = match out.model() {
            Some(model) => h.decode(model)?.into_parts(),
            None => (
                BoolMatrix::from_fn(rows.len(), 1, |i, _| i == li),
                BoolMatrix::from_fn(1, cols.len(), |_, j| j == lj),
            ),
        };
        for (si, &i) in rows.iter().enumerate() {
            a.set(i, l, sa.get(si, 0));
        }
        for (sj, &j) in cols.iter().enumerate() {
            b.set(l, j, sb.get(0, sj));
        }
        for &i in &rows {
            if a.get(i, l) {
                for &j in &cols {
                    if b.get(l, j) {
                        covered.set(i, j, true);
                    }
                }
            }
        }
        history.push(covered.ones_count());
    }
    let undercover = FactorPair::new(a, b)?;
    finish(x, undercover, history, all_optimal, policy, start)
}
