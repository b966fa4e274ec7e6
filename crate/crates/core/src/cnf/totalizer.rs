//! Totalizer encoding with incremental bound extension.
//!
//! Every internal node carries unary counter outputs `out[j] ⇔ (≥ j+1 of
//! its leaves are true)`. Both directions are encoded, so an assignment to
//! the inputs has exactly one consistent extension to the outputs. Only
//! outputs up to the current bound are materialized; raising the bound
//! emits just the clauses that mention the new outputs.

use super::{ClauseSink, Lit};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Node {
    Leaf(Lit),
    Internal {
        left: usize,
        right: usize,
        size: usize,
        outputs: Vec<Lit>,
    },
}

impl Node {
    fn size(&self) -> usize {
        match self {
            Node::Leaf(_) => 1,
            Node::Internal { size, .. } => *size,
        }
    }
}

/// A totalizer over `inputs` whose root outputs count how many inputs are
/// true.
#[derive(Clone, Debug)]
pub struct CardinalityGroup {
    inputs: Vec<Lit>,
    nodes: Vec<Node>,
    root: usize,
    built_bound: usize,
}

/// Builds a totalizer over `inputs` and materializes outputs up to `bound`.
pub fn build_totalizer<S: ClauseSink>(
    sink: &mut S,
    inputs: &[Lit],
    bound: usize,
) -> Result<CardinalityGroup> {
    if inputs.is_empty() {
        return Err(Error::InvalidArgument("totalizer needs at least one input".into()));
    }
    if bound == 0 || bound > inputs.len() {
        return Err(Error::InvalidArgument(format!(
            "totalizer bound {bound} out of range 1..={}",
            inputs.len()
        )));
    }
    let mut group = CardinalityGroup {
        inputs: inputs.to_vec(),
        nodes: Vec::with_capacity(2 * inputs.len()),
        root: 0,
        built_bound: 0,
    };
    group.root = group.build_tree(0, inputs.len());
    group.extend_bound(sink, bound)?;
    Ok(group)
}

impl CardinalityGroup {
    fn build_tree(&mut self, lo: usize, hi: usize) -> usize {
        if hi - lo == 1 {
            self.nodes.push(Node::Leaf(self.inputs[lo]));
            return self.nodes.len() - 1;
        }
        let mid = lo + (hi - lo) / 2;
        let left = self.build_tree(lo, mid);
        let right = self.build_tree(mid, hi);
        self.nodes.push(Node::Internal {
            left,
            right,
            size: hi - lo,
            outputs: Vec::new(),
        });
        self.nodes.len() - 1
    }

    pub fn inputs(&self) -> &[Lit] {
        &self.inputs
    }

    /// Number of root outputs currently materialized.
    pub fn built_bound(&self) -> usize {
        self.built_bound
    }

    /// Materialized root outputs; `outputs()[j]` means "at least j+1 inputs
    /// are true".
    pub fn outputs(&self) -> &[Lit] {
        self.node_outputs(self.root)
    }

    pub fn output(&self, j: usize) -> Option<Lit> {
        self.outputs().get(j).copied()
    }

    fn node_outputs(&self, idx: usize) -> &[Lit] {
        match &self.nodes[idx] {
            Node::Leaf(l) => std::slice::from_ref(l),
            Node::Internal { outputs, .. } => outputs,
        }
    }

    /// Raises the materialized bound to `new_bound` (clamped to the number
    /// of inputs), emitting only the new clauses.
    pub fn extend_bound<S: ClauseSink>(&mut self, sink: &mut S, new_bound: usize) -> Result<()> {
        let target = new_bound.min(self.inputs.len());
        if target <= self.built_bound {
            return Ok(());
        }
        self.extend_node(sink, self.root, target)?;
        self.built_bound = target;
        Ok(())
    }

    fn extend_node<S: ClauseSink>(&mut self, sink: &mut S, idx: usize, bound: usize) -> Result<()> {
        let (left, right, size, old) = match &self.nodes[idx] {
            Node::Leaf(_) => return Ok(()),
            Node::Internal {
                left,
                right,
                size,
                outputs,
            } => (*left, *right, *size, outputs.len()),
        };
        let new = bound.min(size);
        if new <= old {
            return Ok(());
        }
        self.extend_node(sink, left, bound)?;
        self.extend_node(sink, right, bound)?;

        let fresh: Vec<Lit> = (old..new).map(|_| sink.new_var().pos()).collect();
        if let Node::Internal { outputs, .. } = &mut self.nodes[idx] {
            outputs.extend_from_slice(&fresh);
        }

        let lo = self.node_outputs(left).to_vec();
        let ro = self.node_outputs(right).to_vec();
        let out = self.node_outputs(idx).to_vec();
        let (lsize, rsize) = (self.nodes[left].size(), self.nodes[right].size());

        // Upward: (≥a on the left) ∧ (≥c on the right) ⇒ (≥a+c here).
        for a in 0..=lo.len() {
            for c in 0..=ro.len() {
                let s = a + c;
                if s <= old || s > new {
                    continue;
                }
                let mut clause = Vec::with_capacity(3);
                if a > 0 {
                    clause.push(!lo[a - 1]);
                }
                if c > 0 {
                    clause.push(!ro[c - 1]);
                }
                clause.push(out[s - 1]);
                sink.add_clause(&clause)?;
            }
        }

        // Downward: (≤a on the left) ∧ (≤c on the right) ⇒ (≤a+c here),
        // i.e. out[s-1] ⇒ left ≥ a+1 ∨ right ≥ c+1 for every split a+c = s-1.
        for s in (old + 1)..=new {
            let a_min = (s - 1).saturating_sub(rsize);
            let a_max = (s - 1).min(lsize);
            for a in a_min..=a_max {
                let c = s - 1 - a;
                let mut clause = Vec::with_capacity(3);
                clause.push(!out[s - 1]);
                if a < lsize {
                    clause.push(lo[a]);
                }
                if c < rsize {
                    clause.push(ro[c]);
                }
                sink.add_clause(&clause)?;
            }
        }
        Ok(())
    }
}
