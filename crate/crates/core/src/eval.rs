//! Bottom-up evaluation of a shared diagram, semantically or by flattening
//! it into one game.

use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{NodeOp, SharedDag};
use crate::fat::{LeafError, Semantics, Status};
use crate::game::{Arity, OpenGame};
use crate::ops::{constant_game, seq_bidirectional, sum_bidirectional, trace_game, OpError};
use crate::play::PlayError;
use crate::traced::{int_seq, int_sum, sum_arity};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: Arity, found: Arity },
    #[error("leaf node {node}: {error}")]
    Leaf { node: usize, error: LeafError },
    #[error(transparent)]
    Play(#[from] PlayError),
    #[error(transparent)]
    Op(#[from] OpError),
}

/// A bidirectional semantic arrow: the denotation of the underlying
/// rightward arrow `left.right + right.left -> right.right + left.left`
/// together with its objects.
#[derive(Clone, Debug, PartialEq)]
pub struct IntArrow<S> {
    pub left: Arity,
    pub right: Arity,
    pub den: S,
}

impl<S: Semantics> IntArrow<S> {
    pub fn classify(&self, i: usize) -> Status {
        self.den.classify(i)
    }

    pub fn classify_all(&self) -> Vec<Status> {
        (0..self.den.dom()).map(|i| self.den.classify(i)).collect()
    }
}

pub fn compose_int<S: Semantics>(a: &IntArrow<S>, b: &IntArrow<S>) -> Result<IntArrow<S>, EvalError> {
    if a.right != b.left {
        return Err(EvalError::ArityMismatch { expected: a.right, found: b.left });
    }
    let den = int_seq(&a.den, a.left, a.right, &b.den, b.right)?;
    Ok(IntArrow { left: a.left, right: b.right, den })
}

pub fn sum_int<S: Semantics>(a: &IntArrow<S>, b: &IntArrow<S>) -> Result<IntArrow<S>, EvalError> {
    let den = int_sum(&a.den, a.left, a.right, &b.den, b.left, b.right)?;
    let (left, right) = sum_arity(a.left, a.right, b.left, b.right);
    Ok(IntArrow { left, right, den })
}

pub fn trace_int<S: Semantics>(a: &IntArrow<S>, l: usize) -> Result<IntArrow<S>, EvalError> {
    if !a.left.is_rightward() || !a.right.is_rightward() || a.left.right < l || a.right.right < l {
        return Err(EvalError::ArityMismatch { expected: Arity::rightward(l), found: a.left });
    }
    Ok(IntArrow {
        left: Arity::rightward(a.left.right - l),
        right: Arity::rightward(a.right.right - l),
        den: a.den.trace(l)?,
    })
}

/// The semantic arrow of a leaf game.
pub fn leaf_arrow<S: Semantics>(g: &OpenGame, leaf_limit: usize) -> Result<IntArrow<S>, LeafError> {
    Ok(IntArrow { left: g.left(), right: g.right(), den: S::from_leaf(g, leaf_limit)? })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EvalStats {
    /// Leaf denotations computed; each shared node counts once.
    pub leaf_evaluations: usize,
    pub nodes_evaluated: usize,
    /// Largest outer set seen at any node.
    pub max_outer: usize,
    /// Largest inner set seen at any node.
    pub max_inner: usize,
    pub root_outer: usize,
    pub root_inner: usize,
}

/// Evaluates every node the root depends on exactly once, children first.
pub fn evaluate<S: Semantics>(dag: &SharedDag, leaf_limit: usize) -> Result<(IntArrow<S>, EvalStats), EvalError> {
    evaluate_with(dag, leaf_limit, |_, _| {})
}

/// As [`evaluate`], calling `hook` on each node's value once computed.
pub fn evaluate_with<S: Semantics>(
    dag: &SharedDag,
    leaf_limit: usize,
    mut hook: impl FnMut(usize, &mut IntArrow<S>),
) -> Result<(IntArrow<S>, EvalStats), EvalError> {
    let live = dag.reachable();
    let mut memo: Vec<Option<IntArrow<S>>> = vec![None; dag.nodes.len()];
    let mut stats = EvalStats::default();
    for (k, node) in dag.nodes.iter().enumerate() {
        if !live[k] {
            continue;
        }
        let get = |i: usize| memo[i].as_ref().expect("children precede parents");
        let mut v = match &node.op {
            NodeOp::Leaf(g) => {
                stats.leaf_evaluations += 1;
                leaf_arrow(g, leaf_limit).map_err(|error| EvalError::Leaf { node: k, error })?
            }
            NodeOp::Const(c) => {
                let (left, right) = c.arity();
                IntArrow { left, right, den: S::wiring(right.right + left.left, c.wiring()) }
            }
            NodeOp::Seq(a, b) => compose_int(get(*a), get(*b))?,
            NodeOp::Sum(a, b) => sum_int(get(*a), get(*b))?,
            NodeOp::Trace(l, a) => trace_int(get(*a), *l)?,
        };
        hook(k, &mut v);
        stats.nodes_evaluated += 1;
        stats.max_outer = stats.max_outer.max(v.den.sets().len());
        stats.max_inner = stats.max_inner.max(v.den.sets().iter().map(|s| s.len()).max().unwrap_or(0));
        memo[k] = Some(v);
    }
    let root = memo[dag.root].take().expect("root is live");
    stats.root_outer = root.den.sets().len();
    stats.root_inner = root.den.sets().iter().map(|s| s.len()).max().unwrap_or(0);
    Ok((root, stats))
}

/// Folds the game-level operations over the diagram, producing one game.
/// Shared nodes are copied at each use.
pub fn flatten(dag: &SharedDag) -> Result<OpenGame, OpError> {
    let live = dag.reachable();
    let mut memo: Vec<Option<OpenGame>> = vec![None; dag.nodes.len()];
    for (k, node) in dag.nodes.iter().enumerate() {
        if !live[k] {
            continue;
        }
        let get = |i: usize| memo[i].as_ref().expect("children precede parents");
        let g = match &node.op {
            NodeOp::Leaf(g) => g.clone(),
            NodeOp::Const(c) => constant_game(*c),
            NodeOp::Seq(a, b) => seq_bidirectional(get(*a), get(*b))?,
            NodeOp::Sum(a, b) => sum_bidirectional(get(*a), get(*b))?,
            NodeOp::Trace(l, a) => trace_game(get(*a), *l)?,
        };
        memo[k] = Some(g);
    }
    Ok(memo[dag.root].take().expect("root is live"))
}
