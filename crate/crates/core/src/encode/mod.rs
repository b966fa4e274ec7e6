//! SAT and MaxSAT encodings of Boolean factorization.
//!
//! Variables: `A[i][l]` and `B[l][j]` hold the factors; for every 1-entry
//! `(i,j)` the auxiliaries `T[(i,j)][l]` stand for `A[i][l] ∧ B[l][j]`;
//! `C[(i,j)]` is the soft variable of an entry; `Z[l][j]` tracks equal
//! prefixes of consecutive rows of `B` for symmetry breaking.

mod simplify;

pub use simplify::{
    find_incompatible_sets, find_incompatible_sets_among, incompatible, simplify, IncompatibleSet,
    SimplifyReport,
};

use crate::bitmat::{BoolMatrix, FactorPair};
use crate::cnf::{Lit, Var, WcnfFormula};
use crate::error::{Error, Result};

/// Variable maps of an encoding, used to decode models.
#[derive(Clone, Debug)]
pub struct EncodingHandle {
    m: usize,
    n: usize,
    k: usize,
    a: Vec<Var>,
    b: Vec<Var>,
    t: Vec<Option<Vec<Var>>>,
    c: Vec<Option<Var>>,
    z: Vec<Var>,
    /// First row of `B` covered by the order constraints.
    z_first: usize,
}

impl EncodingHandle {
    fn allocate(f: &mut WcnfFormula, m: usize, n: usize, k: usize) -> Self {
        let a = f.new_vars(m * k);
        let b = f.new_vars(k * n);
        EncodingHandle {
            m,
            n,
            k,
            a,
            b,
            t: vec![None; m * n],
            c: vec![None; m * n],
            z: Vec::new(),
            z_first: 0,
        }
    }

    /// `(m, n, k)`.
    pub fn shape(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.k)
    }

    pub fn a_var(&self, i: usize, l: usize) -> Var {
        self.a[i * self.k + l]
    }

    pub fn b_var(&self, l: usize, j: usize) -> Var {
        self.b[l * self.n + j]
    }

    pub fn t_vars(&self, i: usize, j: usize) -> Option<&[Var]> {
        self.t[i * self.n + j].as_deref()
    }

    pub fn c_var(&self, i: usize, j: usize) -> Option<Var> {
        self.c[i * self.n + j]
    }

    /// `Z[l][j]` for ordered rows `l < k-1`, `j < n`, when symmetry
    /// breaking is encoded.
    pub fn z_var(&self, l: usize, j: usize) -> Option<Var> {
        let l = l.checked_sub(self.z_first)?;
        self.z.get(l * self.n + j).copied()
    }

    pub fn has_symmetry(&self) -> bool {
        !self.z.is_empty()
    }

    /// Reads `A` and `B` off a model indexed by `Var::index`.
    pub fn decode(&self, model: &[bool]) -> Result<FactorPair> {
        let get = |v: Var| -> Result<bool> {
            model
                .get(v.index())
                .copied()
                .ok_or(Error::IncompleteModel(v.get()))
        };
        let mut a = BoolMatrix::zeros(self.m, self.k);
        for i in 0..self.m {
            for l in 0..self.k {
                a.set(i, l, get(self.a_var(i, l))?);
            }
        }
        let mut b = BoolMatrix::zeros(self.k, self.n);
        for l in 0..self.k {
            for j in 0..self.n {
                b.set(l, j, get(self.b_var(l, j))?);
            }
        }
        FactorPair::new(a, b)
    }

    /// Adds `T[(i,j)][l] → A[i][l]` and `T[(i,j)][l] → B[l][j]`.
    fn add_t(&mut self, f: &mut WcnfFormula, i: usize, j: usize) -> Result<Vec<Var>> {
        let ts = f.new_vars(self.k);
        for (l, &t) in ts.iter().enumerate() {
            f.add_hard(&[t.neg(), self.a_var(i, l).pos()])?;
            f.add_hard(&[t.neg(), self.b_var(l, j).pos()])?;
        }
        self.t[i * self.n + j] = Some(ts.clone());
        Ok(ts)
    }

    fn add_c(&mut self, f: &mut WcnfFormula, i: usize, j: usize) -> Var {
        let c = f.new_var();
        self.c[i * self.n + j] = Some(c);
        c
    }

    /// `¬A[i][l] ∨ ¬B[l][j]` for every `l`.
    fn add_zero_clauses(&self, f: &mut WcnfFormula, i: usize, j: usize) -> Result<()> {
        for l in 0..self.k {
            f.add_hard(&[self.a_var(i, l).neg(), self.b_var(l, j).neg()])?;
        }
        Ok(())
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("rank k must be at least 1".into()));
    }
    Ok(())
}

/// Formula satisfiable iff `x` has an exact rank-`k` Boolean factorization.
///
/// Emits `k` binary clauses per 0-entry and `2k + 1` clauses per 1-entry,
/// plus the row-order constraints on `B` when `symmetry` is set.
pub fn encode_exact(x: &BoolMatrix, k: usize, symmetry: bool) -> Result<(WcnfFormula, EncodingHandle)> {
    check_k(k)?;
    let (m, n) = x.shape();
    let mut f = WcnfFormula::new();
    let mut h = EncodingHandle::allocate(&mut f, m, n, k);
    for i in 0..m {
        for j in 0..n {
            if x.get(i, j) {
                let ts = h.add_t(&mut f, i, j)?;
                let clause: Vec<Lit> = ts.iter().map(|t| t.pos()).collect();
                f.add_hard(&clause)?;
            } else {
                h.add_zero_clauses(&mut f, i, j)?;
            }
        }
    }
    if symmetry {
        encode_symmetry(&mut f, &mut h)?;
    }
    Ok((f, h))
}

/// [`encode_exact`] with factor `l` pinned to cover `anchors[l]`.
///
/// The anchors must be pairwise incompatible 1-entries of `x`. No
/// rectangle covers two of them, so any exact factorization can be
/// permuted to have rectangle `l` cover anchor `l`; the remaining rows of
/// `B` are put in lexicographic order.
pub fn encode_exact_anchored(
    x: &BoolMatrix,
    k: usize,
    anchors: &[(usize, usize)],
) -> Result<(WcnfFormula, EncodingHandle)> {
    if anchors.len() > k {
        return Err(Error::InvalidArgument(format!(
            "{} anchors for rank {k}",
            anchors.len()
        )));
    }
    for (p, &e1) in anchors.iter().enumerate() {
        if !x.get(e1.0, e1.1) {
            return Err(Error::InvalidArgument(format!("anchor {e1:?} is a 0-entry")));
        }
        if let Some(&e2) = anchors[p + 1..].iter().find(|&&e2| !incompatible(x, e1, e2)) {
            return Err(Error::InvalidArgument(format!("anchors {e1:?} and {e2:?} are compatible")));
        }
    }
    let (mut f, mut h) = encode_exact(x, k, false)?;
    for (l, &(i, j)) in anchors.iter().enumerate() {
        f.add_hard(&[h.a_var(i, l).pos()])?;
        f.add_hard(&[h.b_var(l, j).pos()])?;
    }
    encode_symmetry_from(&mut f, &mut h, anchors.len())?;
    Ok((f, h))
}

/// Forces the rows of `B` into non-increasing lexicographic order (column 0
/// most significant). No-op for `k <= 1` or when already encoded.
///
/// For rows `l`, `l+1` and column `j`, with `Z[l][0]` a unit:
/// `Z ∧ B ∧ B' → Z[j+1]`, `Z ∧ ¬B ∧ ¬B' → Z[j+1]`, `Z ∧ ¬B → ¬B'`.
pub fn encode_symmetry(f: &mut WcnfFormula, h: &mut EncodingHandle) -> Result<()> {
    encode_symmetry_from(f, h, 0)
}

/// [`encode_symmetry`] restricted to rows `first..k` of `B`.
fn encode_symmetry_from(f: &mut WcnfFormula, h: &mut EncodingHandle, first: usize) -> Result<()> {
    let (k, n) = (h.k, h.n);
    if k <= first + 1 || h.has_symmetry() {
        return Ok(());
    }
    h.z_first = first;
    h.z = f.new_vars((k - 1 - first) * n);
    for l in first..k - 1 {
        let base = (l - first) * n;
        f.add_hard(&[h.z[base].pos()])?;
        for j in 0..n {
            let z = h.z[base + j];
            let (b, b2) = (h.b_var(l, j), h.b_var(l + 1, j));
            if j + 1 < n {
                let z_next = h.z[base + j + 1];
                f.add_hard(&[z.neg(), b.neg(), b2.neg(), z_next.pos()])?;
                f.add_hard(&[z.neg(), b.pos(), b2.pos(), z_next.pos()])?;
            }
            f.add_hard(&[z.neg(), b.pos(), b2.neg()])?;
        }
    }
    Ok(())
}

/// MaxSAT encoding minimizing `|A∘B ⊕ X|₁` at rank `k`.
///
/// Every entry gets a soft `C`; a 0-entry has `¬A ∨ ¬B ∨ ¬C` per `l`, a
/// 1-entry has the `T` implications and `¬C ∨ T₁ ∨ … ∨ T_k`.
pub fn encode_approx(x: &BoolMatrix, k: usize, symmetry: bool) -> Result<(WcnfFormula, EncodingHandle)> {
    encode_approx_inner(x, None, k, symmetry)
}

/// Like [`encode_approx`], but entries where `known` is 0 carry no
/// clauses and no soft, so they never count as errors.
pub fn encode_approx_masked(
    x: &BoolMatrix,
    known: &BoolMatrix,
    k: usize,
    symmetry: bool,
) -> Result<(WcnfFormula, EncodingHandle)> {
    if known.shape() != x.shape() {
        return Err(Error::dim("encode_approx_masked", format!("{:?}", x.shape()), format!("{:?}", known.shape())));
    }
    encode_approx_inner(x, Some(known), k, symmetry)
}

fn encode_approx_inner(
    x: &BoolMatrix,
    known: Option<&BoolMatrix>,
    k: usize,
    symmetry: bool,
) -> Result<(WcnfFormula, EncodingHandle)> {
    check_k(k)?;
    let (m, n) = x.shape();
    let mut f = WcnfFormula::new();
    let mut h = EncodingHandle::allocate(&mut f, m, n, k);
    for i in 0..m {
        for j in 0..n {
            if known.is_some_and(|kn| !kn.get(i, j)) {
                continue;
            }
            if x.get(i, j) {
                let ts = h.add_t(&mut f, i, j)?;
                let c = h.add_c(&mut f, i, j);
                let mut clause: Vec<Lit> = ts.iter().map(|t| t.pos()).collect();
                clause.push(c.neg());
                f.add_hard(&clause)?;
                f.add_soft(c.pos(), 1)?;
            } else {
                let c = h.add_c(&mut f, i, j);
                for l in 0..k {
                    f.add_hard(&[h.a_var(i, l).neg(), h.b_var(l, j).neg(), c.neg()])?;
                }
                f.add_soft(c.pos(), 1)?;
            }
        }
    }
    if symmetry {
        encode_symmetry(&mut f, &mut h)?;
    }
    Ok((f, h))
}

/// Hard part of the undercover encoding: 0-entries get `¬A ∨ ¬B`, every
/// 1-entry gets its `T` implications and `¬C ∨ T₁ ∨ … ∨ T_k`. No softs.
pub fn encode_undercover_hard(
    x: &BoolMatrix,
    k: usize,
    symmetry: bool,
) -> Result<(WcnfFormula, EncodingHandle)> {
    check_k(k)?;
    let (m, n) = x.shape();
    let mut f = WcnfFormula::new();
    let mut h = EncodingHandle::allocate(&mut f, m, n, k);
    if symmetry {
        encode_symmetry(&mut f, &mut h)?;
    }
    for i in 0..m {
        for j in 0..n {
            if x.get(i, j) {
                let ts = h.add_t(&mut f, i, j)?;
                let c = h.add_c(&mut f, i, j);
                let mut clause: Vec<Lit> = ts.iter().map(|t| t.pos()).collect();
                clause.push(c.neg());
                f.add_hard(&clause)?;
            } else {
                h.add_zero_clauses(&mut f, i, j)?;
            }
        }
    }
    Ok((f, h))
}

/// Adds the soft `C[(i,j)]` for each listed 1-entry.
pub fn add_cover_softs(f: &mut WcnfFormula, h: &EncodingHandle, entries: &[(usize, usize)]) -> Result<()> {
    for &(i, j) in entries {
        let c = h
            .c_var(i, j)
            .ok_or_else(|| Error::InvalidArgument(format!("entry ({i},{j}) has no cover variable")))?;
        f.add_soft(c.pos(), 1)?;
    }
    Ok(())
}

/// Full undercover encoding: maximizes the number of covered 1-entries by
/// a rank-`k` product that stays below `x`. With `simplify`, pairwise
/// incompatible sets of more than `k` entries are replaced by cardinality
/// constraints.
pub fn encode_undercover(
    x: &BoolMatrix,
    k: usize,
    symmetry: bool,
    simplify_on: bool,
) -> Result<(WcnfFormula, EncodingHandle, SimplifyReport)> {
    let (mut f, h) = encode_undercover_hard(x, k, symmetry)?;
    let ones = x.ones_positions();
    add_cover_softs(&mut f, &h, &ones)?;
    let report = if simplify_on {
        simplify(x, &mut f, &h, k, &ones)?
    } else {
        SimplifyReport::default()
    };
    Ok((f, h, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oll::{solve_maxsat, OllOptions};
    use crate::sat::{Budget, Solver};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sat_pair(f: &WcnfFormula, h: &EncodingHandle) -> Option<FactorPair> {
        let mut s = Solver::from_formula(f);
        if s.solve(&[], &Budget::unlimited()).is_sat() {
            Some(h.decode(s.model()).unwrap())
        } else {
            None
        }
    }

    fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, d: f64) -> BoolMatrix {
        BoolMatrix::from_fn(m, n, |_, _| rng.gen_bool(d))
    }

    fn lex_non_increasing(b: &BoolMatrix) -> bool {
        (0..b.rows().saturating_sub(1)).all(|l| {
            let r1: Vec<bool> = (0..b.cols()).map(|j| b.get(l, j)).collect();
            let r2: Vec<bool> = (0..b.cols()).map(|j| b.get(l + 1, j)).collect();
            r1 >= r2
        })
    }

    #[test]
    fn clause_count_accounting() {
        let x = BoolMatrix::from_strs(&["101", "011"]).unwrap();
        for k in 1..=3 {
            let (f, _) = encode_exact(&x, k, false).unwrap();
            let expected = k * x.zeros_count() + 2 * k * x.ones_count() + x.ones_count();
            assert_eq!(f.hard().len(), expected);
            assert!(f.soft().is_empty());
        }
    }

    #[test]
    fn exact_small_cases() {
        let ones = BoolMatrix::ones(3, 3);
        let (f, h) = encode_exact(&ones, 1, true).unwrap();
        assert_eq!(sat_pair(&f, &h).unwrap().product(), ones);

        let i3 = BoolMatrix::identity(3);
        let (f, h) = encode_exact(&i3, 2, true).unwrap();
        assert!(sat_pair(&f, &h).is_none());
        let (f, h) = encode_exact(&i3, 3, true).unwrap();
        assert_eq!(sat_pair(&f, &h).unwrap().product(), i3);
        assert!(encode_exact(&i3, 0, true).is_err());
    }

    #[test]
    fn symmetry_orders_rows() {
        let (f0, _) = encode_exact(&BoolMatrix::identity(2), 1, true).unwrap();
        let (f1, _) = encode_exact(&BoolMatrix::identity(2), 1, false).unwrap();
        assert_eq!(f0.hard().len(), f1.hard().len());

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let x = random_matrix(&mut rng, 4, 4, 0.5);
            for k in 1..=4 {
                let (fa, ha) = encode_exact(&x, k, true).unwrap();
                let (fb, hb) = encode_exact(&x, k, false).unwrap();
                let with = sat_pair(&fa, &ha);
                let without = sat_pair(&fb, &hb);
                assert_eq!(with.is_some(), without.is_some());
                if let Some(p) = with {
                    assert_eq!(p.product(), x);
                    assert!(lex_non_increasing(p.b()));
                }
            }
        }
    }

    #[test]
    fn anchored_matches_plain() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let x = random_matrix(&mut rng, 4, 5, 0.5);
            if x.is_zero() {
                continue;
            }
            let anchors: Vec<(usize, usize)> = find_incompatible_sets(&x)
                .into_iter()
                .max_by_key(|s| s.len())
                .map(|s| s.entries().to_vec())
                .unwrap_or_default();
            for k in anchors.len().max(1)..=4 {
                let (fa, ha) = encode_exact_anchored(&x, k, &anchors).unwrap();
                let (fb, hb) = encode_exact(&x, k, false).unwrap();
                let with = sat_pair(&fa, &ha);
                assert_eq!(with.is_some(), sat_pair(&fb, &hb).is_some());
                if let Some(p) = with {
                    assert_eq!(p.product(), x);
                    for (l, &(i, j)) in anchors.iter().enumerate() {
                        assert!(p.a().get(i, l) && p.b().get(l, j));
                    }
                }
            }
        }
    }

    #[test]
    fn anchored_guards() {
        let i3 = BoolMatrix::identity(3);
        assert!(encode_exact_anchored(&i3, 1, &[(0, 0), (1, 1)]).is_err());
        assert!(encode_exact_anchored(&i3, 3, &[(0, 1)]).is_err());
        let ones = BoolMatrix::ones(2, 2);
        assert!(encode_exact_anchored(&ones, 2, &[(0, 0), (1, 1)]).is_err());
        let (f, h) = encode_exact_anchored(&i3, 3, &[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(sat_pair(&f, &h).unwrap().product(), i3);
    }

    #[test]
    fn approx_cost_is_reconstruction_error() {
        let i3 = BoolMatrix::identity(3);
        let (f, h) = encode_approx(&i3, 1, true).unwrap();
        let out = solve_maxsat(&f, &OllOptions::default()).unwrap();
        assert_eq!(out.cost(), Some(2));
        let p = h.decode(out.model().unwrap()).unwrap();
        assert_eq!(p.error(&i3).unwrap(), 2);

        let (f, _) = encode_approx(&i3, 3, true).unwrap();
        assert_eq!(solve_maxsat(&f, &OllOptions::default()).unwrap().cost(), Some(0));
    }

    #[test]
    fn masked_entries_are_free() {
        let i2 = BoolMatrix::identity(2);
        let mut known = BoolMatrix::ones(2, 2);
        known.set(0, 1, false);
        known.set(1, 0, false);
        let (f, h) = encode_approx_masked(&i2, &known, 1, true).unwrap();
        assert_eq!(f.soft().len(), 2);
        assert!(h.c_var(0, 1).is_none());
        assert_eq!(solve_maxsat(&f, &OllOptions::default()).unwrap().cost(), Some(0));
    }

    #[test]
    fn undercover_small_cases() {
        let ones = BoolMatrix::ones(3, 4);
        let (f, h, _) = encode_undercover(&ones, 1, true, true).unwrap();
        let out = solve_maxsat(&f, &OllOptions::default()).unwrap();
        assert_eq!(out.cost(), Some(0));
        assert_eq!(h.decode(out.model().unwrap()).unwrap().product(), ones);

        let i3 = BoolMatrix::identity(3);
        for simp in [false, true] {
            let (f, h, _) = encode_undercover(&i3, 1, true, simp).unwrap();
            let out = solve_maxsat(&f, &OllOptions::default()).unwrap();
            assert_eq!(out.cost(), Some(2));
            let p = h.decode(out.model().unwrap()).unwrap();
            assert!(p.product().is_undercover_of(&i3).unwrap());
        }
    }

    #[test]
    fn undercover_has_only_binary_zero_clauses() {
        let x = BoolMatrix::from_strs(&["10", "00"]).unwrap();
        let (f, h) = encode_undercover_hard(&x, 2, false).unwrap();
        assert!(f.soft().is_empty());
        // 3 zero entries × k binary clauses + one 1-entry (2k implications + 1)
        assert_eq!(f.hard().len(), 3 * 2 + 2 * 2 + 1);
        assert!(h.c_var(1, 1).is_none());
        assert!(h.t_vars(0, 0).is_some());
    }

    #[test]
    fn decode_rejects_short_model() {
        let (_, h) = encode_exact(&BoolMatrix::identity(2), 2, false).unwrap();
        assert!(matches!(h.decode(&[true]), Err(Error::IncompleteModel(_))));
    }
}
