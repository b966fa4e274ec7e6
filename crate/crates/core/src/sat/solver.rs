//! Conflict-driven clause learning with two watched literals, VSIDS
//! branching, phase saving, Luby restarts and LBD-based learnt clause
//! reduction. Assumptions are decided first, one per decision level;
//! when one of them is falsified the final conflict is traced back to the
//! responsible assumptions to form the core.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Budget, SolveResult};
use crate::cnf::{normalize_clause, Lit, Normalized, Var, WcnfFormula};

const L_TRUE: i8 = 1;
const L_FALSE: i8 = -1;
const L_UNDEF: i8 = 0;
const NO_REASON: u32 = u32::MAX;

#[inline]
fn lit_value(assigns: &[i8], l: Lit) -> i8 {
    let v = assigns[l.var().index()];
    if l.is_negated() {
        -v
    } else {
        v
    }
}

#[derive(Clone, Debug)]
struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    lbd: u32,
    activity: f64,
}

#[derive(Clone, Copy, Debug)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

/// Counters exposed for reporting.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub solves: u64,
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub learnts_deleted: u64,
}

/// Max-heap of variables keyed by activity; ties go to the lower index.
#[derive(Clone, Debug, Default)]
struct VarHeap {
    heap: Vec<u32>,
    pos: Vec<i32>,
}

impl VarHeap {
    #[inline]
    fn better(act: &[f64], a: u32, b: u32) -> bool {
        let (x, y) = (act[a as usize], act[b as usize]);
        x > y || (x == y && a < b)
    }

    fn grow(&mut self, n: usize) {
        self.pos.resize(n, -1);
    }

    fn contains(&self, v: u32) -> bool {
        self.pos[v as usize] >= 0
    }

    #[cfg(test)]
    fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    fn sift_up(&mut self, act: &[f64], mut i: usize) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if Self::better(act, v, self.heap[parent]) {
                self.heap[i] = self.heap[parent];
                self.pos[self.heap[i] as usize] = i as i32;
                i = parent;
            } else {
                break;
            }
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as i32;
    }

    fn sift_down(&mut self, act: &[f64], mut i: usize) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let child = if r < n && Self::better(act, self.heap[r], self.heap[l]) {
                r
            } else {
                l
            };
            if Self::better(act, self.heap[child], v) {
                self.heap[i] = self.heap[child];
                self.pos[self.heap[i] as usize] = i as i32;
                i = child;
            } else {
                break;
            }
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as i32;
    }

    fn insert(&mut self, act: &[f64], v: u32) {
        if self.contains(v) {
            return;
        }
        self.heap.push(v);
        let i = self.heap.len() - 1;
        self.pos[v as usize] = i as i32;
        self.sift_up(act, i);
    }

    fn increased(&mut self, act: &[f64], v: u32) {
        let p = self.pos[v as usize];
        if p >= 0 {
            self.sift_up(act, p as usize);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<u32> {
        if self.heap.is_empty() {
            return None;
        }
        let top = self.heap[0];
        let last = self.heap.pop().unwrap();
        self.pos[top as usize] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.sift_down(act, 0);
        }
        Some(top)
    }

    #[cfg(test)]
    fn rebuild(&mut self, act: &[f64], vars: impl Iterator<Item = u32>) {
        for &v in &self.heap {
            self.pos[v as usize] = -1;
        }
        self.heap.clear();
        for v in vars {
            self.insert(act, v);
        }
    }
}

enum SearchStatus {
    Sat,
    Unsat,
    Undef,
}

/// Incremental CDCL SAT solver.
#[derive(Clone, Debug)]
pub struct Solver {
    ok: bool,
    clauses: Vec<Clause>,
    free_crefs: Vec<u32>,
    learnts: Vec<u32>,
    watches: Vec<Vec<Watcher>>,

    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,

    activity: Vec<f64>,
    var_inc: f64,
    var_decay: f64,
    cla_inc: f64,
    cla_decay: f64,
    heap: VarHeap,
    polarity: Vec<bool>,

    seen: Vec<u8>,
    to_clear: Vec<Lit>,
    stack: Vec<Lit>,
    level_stamp: Vec<u64>,
    stamp: u64,

    assumptions: Vec<Lit>,
    core: Vec<Lit>,
    model: Vec<bool>,
    max_learnts: f64,
    restart_base: u64,
    check_models: bool,
    rng: Option<ChaCha8Rng>,
    stats: SolverStats,
}

impl Default for Solver {
    fn default() -> Self {
        Self::new()
    }
}

impl Solver {
    pub fn new() -> Self {
        Solver {
            ok: true,
            clauses: Vec::new(),
            free_crefs: Vec::new(),
            learnts: Vec::new(),
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            var_inc: 1.0,
            var_decay: 0.95,
            cla_inc: 1.0,
            cla_decay: 0.999,
            heap: VarHeap::default(),
            polarity: Vec::new(),
            seen: Vec::new(),
            to_clear: Vec::new(),
            stack: Vec::new(),
            level_stamp: vec![0],
            stamp: 0,
            assumptions: Vec::new(),
            core: Vec::new(),
            model: Vec::new(),
            max_learnts: 0.0,
            restart_base: 100,
            check_models: cfg!(debug_assertions),
            rng: None,
            stats: SolverStats::default(),
        }
    }

    /// A non-zero seed perturbs initial variable activities so that ties in
    /// branching are broken differently. Seed 0 keeps index order.
    pub fn with_seed(seed: u64) -> Self {
        let mut s = Self::new();
        if seed != 0 {
            s.rng = Some(ChaCha8Rng::seed_from_u64(seed));
        }
        s
    }

    /// Builds a solver preloaded with the hard clauses of `f`.
    pub fn from_formula(f: &WcnfFormula) -> Self {
        let mut s = Self::new();
        s.load_formula(f);
        s
    }

    pub fn load_formula(&mut self, f: &WcnfFormula) {
        self.ensure_vars(f.var_count() as usize);
        for c in f.hard() {
            self.add_clause(c);
        }
    }

    /// Re-verify every model against the clause database (always on in
    /// debug builds).
    pub fn set_check_models(&mut self, on: bool) {
        self.check_models = on;
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    /// False once the clause set has been proven unsatisfiable.
    pub fn is_ok(&self) -> bool {
        self.ok
    }

    pub fn new_var(&mut self) -> Var {
        let n = self.num_vars();
        self.ensure_vars(n + 1);
        Var::from_index(n)
    }

    pub fn ensure_vars(&mut self, n: usize) {
        let old = self.num_vars();
        if n <= old {
            return;
        }
        self.assigns.resize(n, L_UNDEF);
        self.level.resize(n, 0);
        self.reason.resize(n, NO_REASON);
        self.polarity.resize(n, false);
        self.seen.resize(n, 0);
        self.watches.resize(2 * n, Vec::new());
        self.heap.grow(n);
        for _ in old..n {
            let a = match self.rng.as_mut() {
                Some(r) => r.gen::<f64>() * 1e-5,
                None => 0.0,
            };
            self.activity.push(a);
        }
        for v in old..n {
            self.heap.insert(&self.activity, v as u32);
        }
    }

    /// Preferred polarity for the next decision on `v`.
    pub fn set_phase(&mut self, v: Var, value: bool) {
        self.ensure_vars(v.index() + 1);
        self.polarity[v.index()] = value;
    }

    #[inline]
    fn value(&self, l: Lit) -> i8 {
        lit_value(&self.assigns, l)
    }

    #[inline]
    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    /// Adds a clause at the top level. Returns `false` if the solver is now
    /// known to be unsatisfiable.
    pub fn add_clause(&mut self, clause: &[Lit]) -> bool {
        if !self.ok {
            return false;
        }
        debug_assert_eq!(self.decision_level(), 0);
        if let Some(max) = clause.iter().map(|l| l.var().index() + 1).max() {
            self.ensure_vars(max);
        }
        let lits = match normalize_clause(clause) {
            Normalized::Tautology => return true,
            Normalized::Clause(l) => l,
        };
        let mut kept = Vec::with_capacity(lits.len());
        for &l in &lits {
            match self.value(l) {
                L_TRUE => return true,
                L_FALSE => {}
                _ => kept.push(l),
            }
        }
        match kept.len() {
            0 => {
                self.ok = false;
                false
            }
            1 => {
                self.enqueue(kept[0], NO_REASON);
                if self.propagate().is_some() {
                    self.ok = false;
                }
                self.ok
            }
            _ => {
                let cref = self.alloc_clause(kept, false, 0);
                self.attach(cref);
                true
            }
        }
    }

    fn alloc_clause(&mut self, lits: Vec<Lit>, learnt: bool, lbd: u32) -> u32 {
        let c = Clause {
            lits,
            learnt,
            deleted: false,
            lbd,
            activity: 0.0,
        };
        if let Some(cref) = self.free_crefs.pop() {
            self.clauses[cref as usize] = c;
            cref
        } else {
            self.clauses.push(c);
            (self.clauses.len() - 1) as u32
        }
    }

    fn attach(&mut self, cref: u32) {
        let c = &self.clauses[cref as usize];
        let (a, b) = (c.lits[0], c.lits[1]);
        self.watches[(!a).code()].push(Watcher { cref, blocker: b });
        self.watches[(!b).code()].push(Watcher { cref, blocker: a });
    }

    #[inline]
    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = l.var().index();
        debug_assert_eq!(self.assigns[v], L_UNDEF);
        self.assigns[v] = if l.is_negated() { L_FALSE } else { L_TRUE };
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[p.code()]);
            let mut i = 0;
            let mut j = 0;
            'watchers: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if lit_value(&self.assigns, w.blocker) == L_TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.cref;
                let first = {
                    let lits = &mut self.clauses[cref as usize].lits;
                    if lits[0] == false_lit {
                        lits.swap(0, 1);
                    }
                    lits[0]
                };
                let watcher = Watcher {
                    cref,
                    blocker: first,
                };
                if first != w.blocker && lit_value(&self.assigns, first) == L_TRUE {
                    ws[j] = watcher;
                    j += 1;
                    continue;
                }
                {
                    let lits = &mut self.clauses[cref as usize].lits;
                    for k in 2..lits.len() {
                        if lit_value(&self.assigns, lits[k]) != L_FALSE {
                            lits.swap(1, k);
                            let nw = !lits[1];
                            self.watches[nw.code()].push(watcher);
                            continue 'watchers;
                        }
                    }
                }
                ws[j] = watcher;
                j += 1;
                if lit_value(&self.assigns, first) == L_FALSE {
                    conflict = Some(cref);
                    self.qhead = self.trail.len();
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, cref);
                }
            }
            ws.truncate(j);
            self.watches[p.code()] = ws;
            if conflict.is_some() {
                break;
            }
        }
        conflict
    }

    fn cancel_until(&mut self, lvl: usize) {
        if self.decision_level() <= lvl {
            return;
        }
        let start = self.trail_lim[lvl];
        for idx in (start..self.trail.len()).rev() {
            let l = self.trail[idx];
            let v = l.var().index();
            self.assigns[v] = L_UNDEF;
            self.reason[v] = NO_REASON;
            self.polarity[v] = !l.is_negated();
            if !self.heap.contains(v as u32) {
                self.heap.insert(&self.activity, v as u32);
            }
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(lvl);
        self.qhead = start;
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.increased(&self.activity, v as u32);
    }

    fn bump_clause(&mut self, cref: u32) {
        let c = &mut self.clauses[cref as usize];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for &l in &self.learnts {
                self.clauses[l as usize].activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn abstract_level(&self, v: usize) -> u32 {
        1 << (self.level[v] & 31)
    }

    /// First-UIP conflict analysis. Returns the learnt clause (asserting
    /// literal first, highest remaining level second) and the backjump
    /// level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, usize) {
        let mut learnt: Vec<Lit> = vec![Lit::from_code(0)];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let cur = self.decision_level() as u32;

        loop {
            self.bump_clause(confl);
            let start = usize::from(p.is_some());
            let n = self.clauses[confl as usize].lits.len();
            for k in start..n {
                let q = self.clauses[confl as usize].lits[k];
                let v = q.var().index();
                if self.seen[v] == 0 && self.level[v] > 0 {
                    self.bump_var(v);
                    self.seen[v] = 1;
                    if self.level[v] >= cur {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var().index()] != 0 {
                    break;
                }
            }
            let pl = self.trail[index];
            p = Some(pl);
            confl = self.reason[pl.var().index()];
            self.seen[pl.var().index()] = 0;
            path -= 1;
            if path == 0 {
                break;
            }
        }
        learnt[0] = !p.unwrap();

        // recursive minimization
        self.to_clear.clear();
        self.to_clear.extend_from_slice(&learnt);
        let abs = learnt[1..]
            .iter()
            .fold(0u32, |acc, l| acc | self.abstract_level(l.var().index()));
        let mut kept = 1;
        for i in 1..learnt.len() {
            let l = learnt[i];
            if self.reason[l.var().index()] == NO_REASON || !self.lit_redundant(l, abs) {
                learnt[kept] = l;
                kept += 1;
            }
        }
        learnt.truncate(kept);

        let bt = if learnt.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var().index()] > self.level[learnt[max_i].var().index()] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            self.level[learnt[1].var().index()] as usize
        };

        for l in std::mem::take(&mut self.to_clear) {
            self.seen[l.var().index()] = 0;
        }
        (learnt, bt)
    }

    fn lit_redundant(&mut self, p: Lit, abs: u32) -> bool {
        self.stack.clear();
        self.stack.push(p);
        let top = self.to_clear.len();
        while let Some(q) = self.stack.pop() {
            let cref = self.reason[q.var().index()];
            debug_assert_ne!(cref, NO_REASON);
            let n = self.clauses[cref as usize].lits.len();
            for k in 1..n {
                let l = self.clauses[cref as usize].lits[k];
                let v = l.var().index();
                if self.seen[v] == 0 && self.level[v] > 0 {
                    if self.reason[v] != NO_REASON && (self.abstract_level(v) & abs) != 0 {
                        self.seen[v] = 1;
                        self.stack.push(l);
                        self.to_clear.push(l);
                    } else {
                        for l in self.to_clear.drain(top..) {
                            self.seen[l.var().index()] = 0;
                        }
                        return false;
                    }
                }
            }
        }
        true
    }

    fn compute_lbd(&mut self, lits: &[Lit]) -> u32 {
        self.stamp += 1;
        let need = self.decision_level() + 1;
        if self.level_stamp.len() < need {
            self.level_stamp.resize(need, 0);
        }
        let mut n = 0;
        for l in lits {
            let lv = self.level[l.var().index()] as usize;
            if self.level_stamp[lv] != self.stamp {
                self.level_stamp[lv] = self.stamp;
                n += 1;
            }
        }
        n
    }

    /// Collects the assumptions responsible for `p` (an assumption) being
    /// false.
    fn analyze_final(&mut self, p: Lit) -> Vec<Lit> {
        let mut core = vec![p];
        if self.decision_level() == 0 {
            return core;
        }
        self.seen[p.var().index()] = 1;
        for idx in (self.trail_lim[0]..self.trail.len()).rev() {
            let l = self.trail[idx];
            let v = l.var().index();
            if self.seen[v] == 0 {
                continue;
            }
            let r = self.reason[v];
            if r == NO_REASON {
                debug_assert!(self.level[v] > 0);
                core.push(l);
            } else {
                let n = self.clauses[r as usize].lits.len();
                for k in 1..n {
                    let q = self.clauses[r as usize].lits[k];
                    if self.level[q.var().index()] > 0 {
                        self.seen[q.var().index()] = 1;
                    }
                }
            }
            self.seen[v] = 0;
        }
        self.seen[p.var().index()] = 0;
        core.sort_unstable();
        core.dedup();
        core
    }

    fn locked(&self, cref: u32) -> bool {
        let c = &self.clauses[cref as usize];
        let l0 = c.lits[0];
        self.reason[l0.var().index()] == cref && self.value(l0) == L_TRUE
    }

    fn reduce_db(&mut self) {
        let mut ls = std::mem::take(&mut self.learnts);
        ls.sort_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a as usize], &self.clauses[b as usize]);
            ca.lbd
                .cmp(&cb.lbd)
                .then(cb.activity.partial_cmp(&ca.activity).unwrap_or(std::cmp::Ordering::Equal))
                .then(a.cmp(&b))
        });
        let half = ls.len() / 2;
        let mut kept = Vec::with_capacity(ls.len());
        let mut removed = false;
        for (i, &cref) in ls.iter().enumerate() {
            let c = &self.clauses[cref as usize];
            if i < half || c.lbd <= 2 || c.lits.len() == 2 || self.locked(cref) {
                kept.push(cref);
            } else {
                let c = &mut self.clauses[cref as usize];
                c.deleted = true;
                c.lits = Vec::new();
                removed = true;
                self.stats.learnts_deleted += 1;
            }
        }
        if removed {
            let clauses = &self.clauses;
            for ws in self.watches.iter_mut() {
                ws.retain(|w| !clauses[w.cref as usize].deleted);
            }
            for (cref, c) in self.clauses.iter().enumerate() {
                if c.deleted && c.learnt {
                    self.free_crefs.push(cref as u32);
                }
            }
            // mark recycled slots so they are not pushed twice
            for &cref in &self.free_crefs {
                self.clauses[cref as usize].learnt = false;
            }
        }
        self.learnts = kept;
    }

    fn pick_branch_lit(&mut self) -> Option<Lit> {
        loop {
            let v = self.heap.pop(&self.activity)?;
            if self.assigns[v as usize] == L_UNDEF {
                let var = Var::from_index(v as usize);
                return Some(var.lit(self.polarity[v as usize]));
            }
        }
    }

    fn search(&mut self, max_conflicts: u64, budget: &Budget, start_conflicts: u64) -> SearchStatus {
        let mut local_conflicts = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                local_conflicts += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return SearchStatus::Unsat;
                }
                let (learnt, bt) = self.analyze(confl);
                let lbd = self.compute_lbd(&learnt);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let first = learnt[0];
                    let cref = self.alloc_clause(learnt, true, lbd);
                    self.attach(cref);
                    self.learnts.push(cref);
                    self.bump_clause(cref);
                    self.enqueue(first, cref);
                }
                self.var_inc /= self.var_decay;
                self.cla_inc /= self.cla_decay;
            } else {
                let spent = self.stats.conflicts - start_conflicts;
                let out_of_budget = budget.conflicts.is_some_and(|c| spent >= c)
                    || (local_conflicts > 0 && budget.deadline_passed());
                if local_conflicts >= max_conflicts || out_of_budget {
                    self.cancel_until(0);
                    return SearchStatus::Undef;
                }
                if self.learnts.len() as f64 >= self.max_learnts + self.trail.len() as f64 {
                    self.reduce_db();
                }
                let mut next = None;
                while self.decision_level() < self.assumptions.len() {
                    let p = self.assumptions[self.decision_level()];
                    match self.value(p) {
                        L_TRUE => self.trail_lim.push(self.trail.len()),
                        L_FALSE => {
                            self.core = self.analyze_final(p);
                            return SearchStatus::Unsat;
                        }
                        _ => {
                            next = Some(p);
                            break;
                        }
                    }
                }
                let next = match next {
                    Some(p) => p,
                    None => match self.pick_branch_lit() {
                        Some(l) => {
                            self.stats.decisions += 1;
                            l
                        }
                        None => return SearchStatus::Sat,
                    },
                };
                self.trail_lim.push(self.trail.len());
                self.enqueue(next, NO_REASON);
            }
        }
    }

    fn luby(y: f64, mut x: u64) -> f64 {
        let mut size = 1u64;
        let mut seq = 0i32;
        while size < x + 1 {
            seq += 1;
            size = 2 * size + 1;
        }
        while size - 1 != x {
            size = (size - 1) >> 1;
            seq -= 1;
            x %= size;
        }
        y.powi(seq)
    }

    /// Solves under `assumptions`. On `Sat` the model is available via
    /// [`Solver::model`]; on `Unsat` the returned core is a subset of the
    /// assumptions whose conjunction with the clauses is unsatisfiable.
    pub fn solve(&mut self, assumptions: &[Lit], budget: &Budget) -> SolveResult {
        self.stats.solves += 1;
        if let Some(max) = assumptions.iter().map(|l| l.var().index() + 1).max() {
            self.ensure_vars(max);
        }
        if !self.ok {
            return SolveResult::Unsat(Vec::new());
        }
        self.assumptions = assumptions.to_vec();
        self.core.clear();
        let n_orig = self.clauses.len() - self.learnts.len();
        self.max_learnts = self.max_learnts.max((n_orig as f64 / 3.0).max(2000.0));
        let start_conflicts = self.stats.conflicts;
        let mut restarts = 0u64;
        let status = loop {
            let limit = (Self::luby(2.0, restarts) * self.restart_base as f64) as u64;
            match self.search(limit, budget, start_conflicts) {
                SearchStatus::Undef => {
                    let spent = self.stats.conflicts - start_conflicts;
                    if budget.conflicts.is_some_and(|c| spent >= c) || budget.deadline_passed() {
                        break SearchStatus::Undef;
                    }
                    restarts += 1;
                    self.stats.restarts += 1;
                    self.max_learnts *= 1.05;
                }
                s => break s,
            }
        };
        let result = match status {
            SearchStatus::Sat => {
                self.model = self.assigns.iter().map(|&v| v == L_TRUE).collect();
                if self.check_models {
                    if let Err(msg) = self.verify_model() {
                        panic!("internal solver produced an invalid model: {msg}");
                    }
                }
                SolveResult::Sat
            }
            SearchStatus::Unsat => {
                if self.ok {
                    SolveResult::Unsat(std::mem::take(&mut self.core))
                } else {
                    SolveResult::Unsat(Vec::new())
                }
            }
            SearchStatus::Undef => SolveResult::Unknown,
        };
        self.cancel_until(0);
        self.assumptions.clear();
        result
    }

    /// The last model, indexed by `Var::index`.
    pub fn model(&self) -> &[bool] {
        &self.model
    }

    pub fn model_value(&self, l: Lit) -> bool {
        l.eval(&self.model)
    }

    /// Checks the stored model against every problem clause and the
    /// top-level units.
    pub fn verify_model(&self) -> Result<(), String> {
        for (i, c) in self.clauses.iter().enumerate() {
            if c.learnt || c.deleted || c.lits.is_empty() {
                continue;
            }
            if !c.lits.iter().any(|l| l.eval(&self.model)) {
                return Err(format!("clause #{i} {:?} falsified", c.lits));
            }
        }
        for &l in self.trail.iter().take(self.trail_lim.first().copied().unwrap_or(self.trail.len())) {
            if !l.eval(&self.model) {
                return Err(format!("top-level unit {l:?} falsified"));
            }
        }
        Ok(())
    }

    #[cfg(test)]
    fn rebuild_heap(&mut self) {
        let n = self.num_vars() as u32;
        self.heap.rebuild(&self.activity, 0..n);
    }
}
