//! Incompatibility-based preprocessing of undercover encodings.
//!
//! Two 1-entries `(i1,j1)`, `(i2,j2)` are incompatible when `X[i1][j2] = 0`
//! or `X[i2][j1] = 0`: no rank-1 undercover contains both. A rank-k
//! undercover therefore covers at most `k` entries of a pairwise
//! incompatible set, so the set's `|I|` unit softs can be traded for a
//! cardinality constraint and a pre-charged cost of `|I| - k`.

use super::EncodingHandle;
use crate::bitmat::BoolMatrix;
use crate::cnf::{Lit, WcnfFormula};
use crate::error::{Error, Result};
use crate::oll::inject_cardinality;

/// Pairwise incompatible 1-entries of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncompatibleSet {
    entries: Vec<(usize, usize)>,
}

impl IncompatibleSet {
    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Whether two 1-entries of `x` cannot lie in a common rank-1 undercover.
#[inline]
pub fn incompatible(x: &BoolMatrix, (i1, j1): (usize, usize), (i2, j2): (usize, usize)) -> bool {
    !x.get(i1, j2) || !x.get(i2, j1)
}

/// Greedy disjoint incompatible sets over all 1-entries of `x`.
pub fn find_incompatible_sets(x: &BoolMatrix) -> Vec<IncompatibleSet> {
    find_incompatible_sets_among(x, &x.ones_positions())
}

/// Greedy disjoint incompatible sets drawn from `pool` (1-entries of `x`).
///
/// Each pass scans the remaining entries in row-major order and keeps an
/// entry if it is incompatible with everything kept so far; the kept set
/// is removed from the pool. Passes stop when the pool is empty or no two
/// remaining entries are incompatible, since every further set would be a
/// singleton.
pub fn find_incompatible_sets_among(x: &BoolMatrix, pool: &[(usize, usize)]) -> Vec<IncompatibleSet> {
    let mut remaining: Vec<(usize, usize)> = pool.to_vec();
    remaining.sort_unstable();
    remaining.dedup();
    debug_assert!(remaining.iter().all(|&(i, j)| x.get(i, j)));
    let mut sets = Vec::new();
    while has_incompatible_pair(x, &remaining) {
        let mut set: Vec<(usize, usize)> = Vec::new();
        for &e in &remaining {
            if set.iter().all(|&s| incompatible(x, s, e)) {
                set.push(e);
            }
        }
        remaining.retain(|e| !set.contains(e));
        sets.push(IncompatibleSet { entries: set });
    }
    sets
}

fn has_incompatible_pair(x: &BoolMatrix, entries: &[(usize, usize)]) -> bool {
    entries
        .iter()
        .enumerate()
        .any(|(a, &e)| entries[a + 1..].iter().any(|&f| incompatible(x, e, f)))
}

/// Outcome of [`simplify`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplifyReport {
    /// Sizes of all incompatible sets found.
    pub set_sizes: Vec<usize>,
    /// Number of sets replaced by a cardinality constraint.
    pub injected: usize,
    /// Cost charged up front.
    pub precharged: u64,
}

/// Replaces each incompatible set of more than `k` entries from `pool` by
/// a cardinality constraint over its cover softs. Every entry of `pool`
/// must carry an active soft `C` in `f`.
pub fn simplify(
    x: &BoolMatrix,
    f: &mut WcnfFormula,
    h: &EncodingHandle,
    k: usize,
    pool: &[(usize, usize)],
) -> Result<SimplifyReport> {
    let mut report = SimplifyReport::default();
    for set in find_incompatible_sets_among(x, pool) {
        report.set_sizes.push(set.len());
        if set.len() <= k {
            continue;
        }
        let inputs = set
            .entries
            .iter()
            .map(|&(i, j)| {
                h.c_var(i, j)
                    .map(|c| c.pos())
                    .ok_or_else(|| Error::InvalidArgument(format!("entry ({i},{j}) has no cover variable")))
            })
            .collect::<Result<Vec<Lit>>>()?;
        if inject_cardinality(f, &inputs, k)?.is_some() {
            report.injected += 1;
            report.precharged += (set.len() - k) as u64;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::encode_undercover;
    use crate::oll::{solve_maxsat, OllOptions};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pairwise(x: &BoolMatrix, s: &IncompatibleSet) -> bool {
        let e = s.entries();
        (0..e.len()).all(|a| (a + 1..e.len()).all(|b| incompatible(x, e[a], e[b])))
    }

    #[test]
    fn diagonal_is_one_set() {
        let x = BoolMatrix::identity(5);
        let sets = find_incompatible_sets(&x);
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].entries(), &[(0, 0), (1, 1), (2, 2), (3, 3), (4, 4)]);
    }

    #[test]
    fn all_ones_has_no_sets() {
        assert!(find_incompatible_sets(&BoolMatrix::ones(4, 3)).is_empty());
    }

    #[test]
    fn hand_checked_definition() {
        let x = BoolMatrix::from_strs(&["11", "10"]).unwrap();
        assert!(incompatible(&x, (0, 1), (1, 0)));
        assert!(!incompatible(&x, (0, 0), (0, 1)));
        assert!(!incompatible(&x, (0, 0), (1, 0)));
        // the first pass starts at (0,0), which is compatible with both
        let sets = find_incompatible_sets(&x);
        assert_eq!(sets.len(), 2);
        assert_eq!(sets[0].entries(), &[(0, 0)]);
        assert_eq!(sets[1].entries(), &[(0, 1), (1, 0)]);
    }

    #[test]
    fn sets_are_disjoint_and_pairwise_incompatible() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let x = BoolMatrix::from_fn(7, 6, |_, _| rng.gen_bool(0.5));
            let sets = find_incompatible_sets(&x);
            let mut seen = std::collections::HashSet::new();
            for s in &sets {
                assert!(!s.is_empty());
                assert!(pairwise(&x, s));
                for e in s.entries() {
                    assert!(x.get(e.0, e.1));
                    assert!(seen.insert(*e));
                }
            }
        }
    }

    #[test]
    fn diagonal_precharge_needs_no_cores() {
        let n = 6;
        let x = BoolMatrix::identity(n);
        let (f, _, report) = encode_undercover(&x, 1, true, true).unwrap();
        assert_eq!(report.injected, 1);
        assert_eq!(report.precharged, (n - 1) as u64);
        let out = solve_maxsat(&f, &OllOptions::default()).unwrap();
        assert_eq!(out.cost(), Some((n - 1) as u64));
        assert_eq!(out.stats().cores, 0);
    }

    #[test]
    fn simplify_preserves_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let m = rng.gen_range(2..=6);
            let n = rng.gen_range(2..=6);
            let x = BoolMatrix::from_fn(m, n, |_, _| rng.gen_bool(0.5));
            if x.is_zero() {
                continue;
            }
            for k in 1..=2 {
                let (fa, _, _) = encode_undercover(&x, k, true, false).unwrap();
                let (fb, _, _) = encode_undercover(&x, k, true, true).unwrap();
                let a = solve_maxsat(&fa, &OllOptions::default()).unwrap().cost();
                let b = solve_maxsat(&fb, &OllOptions::default()).unwrap().cost();
                assert_eq!(a, b);
            }
        }
    }
}
