//! Greedy single-cell flips on `A` and `B` that lower `|A∘B ⊕ X|₁`.
//!
//! A cover-count matrix `cnt[i][j] = #{l : A[i][l] ∧ B[l][j]}` makes the
//! effect of a flip local: flipping `A[i][l]` changes coverage only where
//! `cnt[i][j]` crosses zero for `j` in row `l` of `B`, and symmetrically
//! for `B[l][j]`. Deltas are cached per cell and repaired after each flip.

use crate::bitmat::{BoolMatrix, FactorPair};
use crate::error::{Error, Result};

/// Which improving flip to take.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RelaxPolicy {
    /// The flip with the largest decrease; ties go to the first cell in
    /// (A before B, row, column) order.
    #[default]
    Steepest,
    /// The first improving flip in that order.
    First,
}

impl std::str::FromStr for RelaxPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "steepest" => Ok(RelaxPolicy::Steepest),
            "first" => Ok(RelaxPolicy::First),
            _ => Err(Error::InvalidArgument(format!("unknown relax policy {s:?}"))),
        }
    }
}

/// Counters of one relaxation run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RelaxStats {
    pub flips: usize,
    pub error_before: usize,
    pub error_after: usize,
}

struct State<'a> {
    x: &'a BoolMatrix,
    a: BoolMatrix,
    b: BoolMatrix,
    cnt: Vec<u32>,
    da: Vec<i64>,
    db: Vec<i64>,
    m: usize,
    n: usize,
    k: usize,
}

impl<'a> State<'a> {
    fn new(pair: &FactorPair, x: &'a BoolMatrix) -> Self {
        let (m, n) = x.shape();
        let k = pair.rank();
        let (a, b) = (pair.a().clone(), pair.b().clone());
        let mut cnt = vec![0u32; m * n];
        for i in 0..m {
            for l in 0..k {
                if a.get(i, l) {
                    for j in b.row_indices(l) {
                        cnt[i * n + j] += 1;
                    }
                }
            }
        }
        let mut s = State {
            x,
            a,
            b,
            cnt,
            da: vec![0; m * k],
            db: vec![0; k * n],
            m,
            n,
            k,
        };
        for i in 0..m {
            for l in 0..k {
                s.da[i * k + l] = s.delta_a(i, l);
            }
        }
        for l in 0..k {
            for j in 0..n {
                s.db[l * n + j] = s.delta_b(l, j);
            }
        }
        s
    }

    /// Change of error from newly covering (`+1`) or uncovering (`-1`) a
    /// cell.
    #[inline]
    fn cell_delta(&self, i: usize, j: usize, covering: bool) -> i64 {
        if self.x.get(i, j) == covering {
            -1
        } else {
            1
        }
    }

    fn delta_a(&self, i: usize, l: usize) -> i64 {
        let on = self.a.get(i, l);
        let mut d = 0;
        for j in 0..self.n {
            if !self.b.get(l, j) {
                continue;
            }
            let c = self.cnt[i * self.n + j];
            if !on && c == 0 {
                d += self.cell_delta(i, j, true);
            } else if on && c == 1 {
                d += self.cell_delta(i, j, false);
            }
        }
        d
    }

    fn delta_b(&self, l: usize, j: usize) -> i64 {
        let on = self.b.get(l, j);
        let mut d = 0;
        for i in 0..self.m {
            if !self.a.get(i, l) {
                continue;
            }
            let c = self.cnt[i * self.n + j];
            if !on && c == 0 {
                d += self.cell_delta(i, j, true);
            } else if on && c == 1 {
                d += self.cell_delta(i, j, false);
            }
        }
        d
    }

    fn flip_a(&mut self, i: usize, l: usize) {
        let on = !self.a.get(i, l);
        self.a.set(i, l, on);
        let touched = self.b.row_indices(l);
        for &j in &touched {
            let c = &mut self.cnt[i * self.n + j];
            if on {
                *c += 1;
            } else {
                *c -= 1;
            }
        }
        for l2 in 0..self.k {
            self.da[i * self.k + l2] = self.delta_a(i, l2);
        }
        for &j in &touched {
            for l2 in 0..self.k {
                self.db[l2 * self.n + j] = self.delta_b(l2, j);
            }
        }
        for j in 0..self.n {
            self.db[l * self.n + j] = self.delta_b(l, j);
        }
    }

    fn flip_b(&mut self, l: usize, j: usize) {
        let on = !self.b.get(l, j);
        self.b.set(l, j, on);
        let touched: Vec<usize> = (0..self.m).filter(|&i| self.a.get(i, l)).collect();
        for &i in &touched {
            let c = &mut self.cnt[i * self.n + j];
            if on {
                *c += 1;
            } else {
                *c -= 1;
            }
        }
        for l2 in 0..self.k {
            self.db[l2 * self.n + j] = self.delta_b(l2, j);
        }
        for &i in &touched {
            for l2 in 0..self.k {
                self.da[i * self.k + l2] = self.delta_a(i, l2);
            }
        }
        for i in 0..self.m {
            self.da[i * self.k + l] = self.delta_a(i, l);
        }
    }

    /// Index into the concatenated (A, B) delta arrays of the move to take.
    fn pick(&self, policy: RelaxPolicy) -> Option<usize> {
        let all = self.da.iter().chain(self.db.iter());
        match policy {
            RelaxPolicy::First => all.enumerate().find(|&(_, &d)| d < 0).map(|(idx, _)| idx),
            RelaxPolicy::Steepest => {
                let mut best: Option<(usize, i64)> = None;
                for (idx, &d) in all.enumerate() {
                    if d < 0 && best.is_none_or(|(_, bd)| d < bd) {
                        best = Some((idx, d));
                    }
                }
                best.map(|(idx, _)| idx)
            }
        }
    }
}

/// Steepest-descent relaxation; see [`relax_undercover_with`].
pub fn relax_undercover(pair: &FactorPair, x: &BoolMatrix) -> Result<FactorPair> {
    relax_undercover_with(pair, x, RelaxPolicy::Steepest).map(|(p, _)| p)
}

/// Repeatedly flips the single cell of `A` or `B` chosen by `policy` while
/// some flip strictly lowers the reconstruction error. The result may
/// cover 0-entries of `x`.
pub fn relax_undercover_with(
    pair: &FactorPair,
    x: &BoolMatrix,
    policy: RelaxPolicy,
) -> Result<(FactorPair, RelaxStats)> {
    if pair.product_shape() != x.shape() {
        return Err(Error::dim(
            "relax_undercover",
            format!("{:?}", pair.product_shape()),
            format!("{:?}", x.shape()),
        ));
    }
    let mut st = State::new(pair, x);
    let mut stats = RelaxStats {
        error_before: pair.error(x)?,
        ..RelaxStats::default()
    };
    let mut error = stats.error_before as i64;
    let a_cells = st.m * st.k;
    while let Some(idx) = st.pick(policy) {
        let d = if idx < a_cells {
            let d = st.da[idx];
            st.flip_a(idx / st.k, idx % st.k);
            d
        } else {
            let b = idx - a_cells;
            let d = st.db[b];
            st.flip_b(b / st.n, b % st.n);
            d
        };
        error += d;
        stats.flips += 1;
    }
    let out = FactorPair::new(st.a, st.b)?;
    stats.error_after = out.error(x)?;
    debug_assert_eq!(stats.error_after as i64, error);
    Ok((out, stats))
}
