//! String-diagram terms, arity inference and `let`-sharing resolution.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::game::{Arity, OpenGame};
use crate::traced::sum_arity;

/// Source location, 1-based. `0:0` marks synthesized terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl Span {
    pub const fn new(line: usize, col: usize) -> Self {
        Span { line, col }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstKind {
    IdR,
    IdL,
    SwapRR,
    SwapRL,
    SwapLR,
    SwapLL,
    Cup,
    Cap,
}

impl ConstKind {
    pub const ALL: [ConstKind; 8] = [
        ConstKind::IdR,
        ConstKind::IdL,
        ConstKind::SwapRR,
        ConstKind::SwapRL,
        ConstKind::SwapLR,
        ConstKind::SwapLL,
        ConstKind::Cup,
        ConstKind::Cap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstKind::IdR => "id_r",
            ConstKind::IdL => "id_l",
            ConstKind::SwapRR => "swap_rr",
            ConstKind::SwapRL => "swap_rl",
            ConstKind::SwapLR => "swap_lr",
            ConstKind::SwapLL => "swap_ll",
            ConstKind::Cup => "cup",
            ConstKind::Cap => "cap",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn arity(self) -> (Arity, Arity) {
        let a = Arity::new;
        match self {
            ConstKind::IdR => (a(1, 0), a(1, 0)),
            ConstKind::IdL => (a(0, 1), a(0, 1)),
            ConstKind::SwapRR => (a(2, 0), a(2, 0)),
            ConstKind::SwapRL | ConstKind::SwapLR => (a(1, 1), a(1, 1)),
            ConstKind::SwapLL => (a(0, 2), a(0, 2)),
            ConstKind::Cup => (a(0, 0), a(1, 1)),
            ConstKind::Cap => (a(1, 1), a(0, 0)),
        }
    }

    /// Exit reached from each entrance.
    ///
    /// A crossing of a rightward and a leftward wire has one wire of each
    /// direction on both sides, so it connects `lhs.r1 -> rhs.r1` and
    /// `rhs.l1 -> lhs.l1`, the same as the identity on `(1,1)`.
    pub fn wiring(self) -> &'static [usize] {
        match self {
            ConstKind::IdR | ConstKind::IdL | ConstKind::Cup | ConstKind::Cap => &[0],
            ConstKind::SwapRL | ConstKind::SwapLR => &[0, 1],
            ConstKind::SwapRR | ConstKind::SwapLL => &[1, 0],
        }
    }
}

#[derive(Clone, Debug)]
pub struct Term {
    pub kind: TermKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TermKind {
    Leaf(OpenGame),
    Seq(Box<Term>, Box<Term>),
    Sum(Box<Term>, Box<Term>),
    Trace(usize, Box<Term>),
    Const(ConstKind),
    Var(String),
    Let(String, Box<Term>, Box<Term>),
}

/// Structural equality; spans are ignored.
impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Term {
    pub fn new(kind: TermKind) -> Self {
        Term { kind, span: Span::default() }
    }

    pub fn at(kind: TermKind, span: Span) -> Self {
        Term { kind, span }
    }

    pub fn leaf(g: OpenGame) -> Self {
        Term::new(TermKind::Leaf(g))
    }

    pub fn constant(k: ConstKind) -> Self {
        Term::new(TermKind::Const(k))
    }

    pub fn var(name: &str) -> Self {
        Term::new(TermKind::Var(name.into()))
    }

    pub fn seq(a: Term, b: Term) -> Self {
        Term::new(TermKind::Seq(Box::new(a), Box::new(b)))
    }

    pub fn sum(a: Term, b: Term) -> Self {
        Term::new(TermKind::Sum(Box::new(a), Box::new(b)))
    }

    pub fn trace(l: usize, t: Term) -> Self {
        Term::new(TermKind::Trace(l, Box::new(t)))
    }

    pub fn let_in(name: &str, bound: Term, body: Term) -> Self {
        Term::new(TermKind::Let(name.into(), Box::new(bound), Box::new(body)))
    }

    /// `n`-fold left-associated sum of a constant, `n >= 1`.
    pub fn constant_power(k: ConstKind, n: usize) -> Self {
        assert!(n >= 1);
        let mut t = Term::constant(k);
        for _ in 1..n {
            t = Term::sum(t, Term::constant(k));
        }
        t
    }

    /// Replaces every variable by its binding, removing all `let`s.
    pub fn unfold(&self) -> Term {
        fn go(t: &Term, env: &mut Vec<(String, Term)>) -> Term {
            let kind = match &t.kind {
                TermKind::Var(x) => {
                    return env.iter().rev().find(|(n, _)| n == x).map(|(_, b)| b.clone()).unwrap_or_else(|| t.clone())
                }
                TermKind::Let(x, b, body) => {
                    let b = go(b, env);
                    env.push((x.clone(), b));
                    let r = go(body, env);
                    env.pop();
                    return r;
                }
                TermKind::Seq(a, b) => TermKind::Seq(Box::new(go(a, env)), Box::new(go(b, env))),
                TermKind::Sum(a, b) => TermKind::Sum(Box::new(go(a, env)), Box::new(go(b, env))),
                TermKind::Trace(l, a) => TermKind::Trace(*l, Box::new(go(a, env))),
                k => k.clone(),
            };
            Term { kind, span: t.span }
        }
        go(self, &mut Vec::new())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InferredArity {
    pub left: Arity,
    pub right: Arity,
}

impl InferredArity {
    pub fn new(left: Arity, right: Arity) -> Self {
        InferredArity { left, right }
    }

    pub fn is_rightward(&self) -> bool {
        self.left.is_rightward() && self.right.is_rightward()
    }
}

impl fmt::Display for InferredArity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.left, self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("{span}: arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: Arity, found: Arity, span: Span },
    #[error("{span}: trace applies only to purely rightward terms, found {found}")]
    TraceOnBidirectionalTerm { found: InferredArity, span: Span },
    #[error("{span}: cannot trace {l} wires of a term with arity {found}")]
    TraceTooWide { l: usize, found: InferredArity, span: Span },
    #[error("{span}: unbound variable `{name}`")]
    UnboundVariable { name: String, span: Span },
}

impl DiagramError {
    pub fn span(&self) -> Span {
        match self {
            DiagramError::ArityMismatch { span, .. }
            | DiagramError::TraceOnBidirectionalTerm { span, .. }
            | DiagramError::TraceTooWide { span, .. }
            | DiagramError::UnboundVariable { span, .. } => *span,
        }
    }
}

fn seq_arity(a: InferredArity, b: InferredArity, span: Span) -> Result<InferredArity, DiagramError> {
    if a.right != b.left {
        return Err(DiagramError::ArityMismatch { expected: a.right, found: b.left, span });
    }
    Ok(InferredArity::new(a.left, b.right))
}

fn trace_arity(l: usize, a: InferredArity, span: Span) -> Result<InferredArity, DiagramError> {
    if !a.is_rightward() {
        return Err(DiagramError::TraceOnBidirectionalTerm { found: a, span });
    }
    if a.left.right < l || a.right.right < l {
        return Err(DiagramError::TraceTooWide { l, found: a, span });
    }
    Ok(InferredArity::new(Arity::rightward(a.left.right - l), Arity::rightward(a.right.right - l)))
}

fn sum_inferred(a: InferredArity, b: InferredArity) -> InferredArity {
    let (left, right) = sum_arity(a.left, a.right, b.left, b.right);
    InferredArity::new(left, right)
}

/// Arity of a term; `env` gives the arities of free variables.
pub fn infer_arity(term: &Term, env: &[(String, InferredArity)]) -> Result<InferredArity, DiagramError> {
    fn go(t: &Term, env: &mut Vec<(String, InferredArity)>) -> Result<InferredArity, DiagramError> {
        match &t.kind {
            TermKind::Leaf(g) => Ok(InferredArity::new(g.left(), g.right())),
            TermKind::Const(k) => {
                let (l, r) = k.arity();
                Ok(InferredArity::new(l, r))
            }
            TermKind::Var(x) => env
                .iter()
                .rev()
                .find(|(n, _)| n == x)
                .map(|(_, a)| *a)
                .ok_or_else(|| DiagramError::UnboundVariable { name: x.clone(), span: t.span }),
            TermKind::Seq(a, b) => {
                let (x, y) = (go(a, env)?, go(b, env)?);
                seq_arity(x, y, b.span)
            }
            TermKind::Sum(a, b) => Ok(sum_inferred(go(a, env)?, go(b, env)?)),
            TermKind::Trace(l, a) => trace_arity(*l, go(a, env)?, t.span),
            TermKind::Let(x, b, body) => {
                let ab = go(b, env)?;
                env.push((x.clone(), ab));
                let r = go(body, env);
                env.pop();
                r
            }
        }
    }
    go(term, &mut env.to_vec())
}

#[derive(Clone, Debug, PartialEq)]
pub enum NodeOp {
    Leaf(OpenGame),
    Const(ConstKind),
    Seq(usize, usize),
    Sum(usize, usize),
    Trace(usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub op: NodeOp,
    pub arity: InferredArity,
}

/// A term with every `let`-bound subterm stored once. Children always come
/// before their parents in `nodes`.
#[derive(Clone, Debug, PartialEq)]
pub struct SharedDag {
    pub nodes: Vec<Node>,
    pub root: usize,
}

impl SharedDag {
    pub fn arity(&self) -> InferredArity {
        self.nodes[self.root].arity
    }

    /// Which nodes the root depends on.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = alloc::vec![false; self.nodes.len()];
        seen[self.root] = true;
        for k in (0..self.nodes.len()).rev() {
            if !seen[k] {
                continue;
            }
            match self.nodes[k].op {
                NodeOp::Seq(a, b) | NodeOp::Sum(a, b) => {
                    seen[a] = true;
                    seen[b] = true;
                }
                NodeOp::Trace(_, a) => seen[a] = true,
                _ => {}
            }
        }
        seen
    }

    /// Number of nodes the root depends on.
    pub fn live_nodes(&self) -> usize {
        self.reachable().iter().filter(|&&b| b).count()
    }

    /// Number of leaf positions after expanding all sharing.
    pub fn flattened_positions(&self) -> u128 {
        let mut n = alloc::vec![0u128; self.nodes.len()];
        for (k, node) in self.nodes.iter().enumerate() {
            n[k] = match node.op {
                NodeOp::Leaf(ref g) => g.positions().len() as u128,
                NodeOp::Const(_) => 0,
                NodeOp::Seq(a, b) | NodeOp::Sum(a, b) => n[a] + n[b],
                NodeOp::Trace(_, a) => n[a],
            };
        }
        n[self.root]
    }
}

/// Resolves variables to shared nodes, checking arities on the way.
pub fn resolve_sharing(term: &Term) -> Result<SharedDag, DiagramError> {
    struct Builder {
        nodes: Vec<Node>,
        env: Vec<(String, usize)>,
    }
    impl Builder {
        fn push(&mut self, op: NodeOp, arity: InferredArity) -> usize {
            self.nodes.push(Node { op, arity });
            self.nodes.len() - 1
        }
        fn go(&mut self, t: &Term) -> Result<usize, DiagramError> {
            match &t.kind {
                TermKind::Leaf(g) => Ok(self.push(NodeOp::Leaf(g.clone()), InferredArity::new(g.left(), g.right()))),
                TermKind::Const(k) => {
                    let (l, r) = k.arity();
                    Ok(self.push(NodeOp::Const(*k), InferredArity::new(l, r)))
                }
                TermKind::Var(x) => self
                    .env
                    .iter()
                    .rev()
                    .find(|(n, _)| n == x)
                    .map(|(_, id)| *id)
                    .ok_or_else(|| DiagramError::UnboundVariable { name: x.clone(), span: t.span }),
                TermKind::Seq(a, b) => {
                    let (x, y) = (self.go(a)?, self.go(b)?);
                    let ar = seq_arity(self.nodes[x].arity, self.nodes[y].arity, b.span)?;
                    Ok(self.push(NodeOp::Seq(x, y), ar))
                }
                TermKind::Sum(a, b) => {
                    let (x, y) = (self.go(a)?, self.go(b)?);
                    let ar = sum_inferred(self.nodes[x].arity, self.nodes[y].arity);
                    Ok(self.push(NodeOp::Sum(x, y), ar))
                }
                TermKind::Trace(l, a) => {
                    let x = self.go(a)?;
                    let ar = trace_arity(*l, self.nodes[x].arity, t.span)?;
                    Ok(self.push(NodeOp::Trace(*l, x), ar))
                }
                TermKind::Let(name, b, body) => {
                    let x = self.go(b)?;
                    self.env.push((name.clone(), x));
                    let r = self.go(body);
                    self.env.pop();
                    r
                }
            }
        }
    }
    let mut b = Builder { nodes: Vec::new(), env: Vec::new() };
    let root = b.go(term)?;
    Ok(SharedDag { nodes: b.nodes, root })
}
