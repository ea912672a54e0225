//! Seeded random games, play arrows and diagrams for tests and benchmarks.
//!
//! Leaf games are sampled Erdős–Rényi style: each exit is attached to a
//! random source with fixed probability, every entrance and position gets a
//! random successor, and a bounded number of positions receive extra
//! successors. Roles are uniform, weights uniform integers in a range.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{ConstKind, Term};
use crate::game::{Arity, OpenGame, Position, Role, Target};
use crate::play::{Outcome, PlayArrow, TValue};
use crate::weight::Weight;

pub use rand_chacha::ChaCha8Rng as SeededRng;
pub use rand::SeedableRng;

pub fn seeded(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub struct GameParams {
    pub positions: usize,
    pub weights: (i64, i64),
    /// Upper bound on positions with more than one successor.
    pub max_choices: usize,
    /// Largest out-degree of a branching position.
    pub max_out: usize,
    /// Chance that a position without successors stays stuck.
    pub stuck: f64,
    /// Chance that each exit gets a predecessor.
    pub exit_use: f64,
}

impl Default for GameParams {
    fn default() -> Self {
        GameParams { positions: 3, weights: (-5, 5), max_choices: 4, max_out: 3, stuck: 0.1, exit_use: 0.8 }
    }
}

/// A random valid game with the given arities. Labels are `q0, q1, ...`
/// prefixed by `tag`.
pub fn random_game<R: Rng>(rng: &mut R, left: Arity, right: Arity, p: &GameParams, tag: &str) -> OpenGame {
    let n_in = left.right + right.left;
    let n_out = right.right + left.left;
    let n = if p.positions == 0 && n_in > n_out { 1 } else { p.positions };
    let positions: Vec<Position> = (0..n)
        .map(|q| Position {
            label: format!("{tag}q{q}"),
            role: if rng.gen_bool(0.5) { Role::Exists } else { Role::Forall },
            weight: Weight::from_int(rng.gen_range(p.weights.0..=p.weights.1)),
        })
        .collect();
    let mut entrances: Vec<Option<Target>> = vec![None; n_in];
    let mut succ: Vec<Vec<Target>> = vec![Vec::new(); n];

    let mut exits: Vec<usize> = (0..n_out).collect();
    exits.shuffle(rng);
    let mut free_exits = Vec::new();
    for j in exits {
        if !rng.gen_bool(p.exit_use) {
            free_exits.push(j);
            continue;
        }
        // Pick a source among unassigned entrances and positions that have
        // no successor yet, so exits never create extra choices.
        let open: Vec<usize> = (0..n_in).filter(|&i| entrances[i].is_none()).collect();
        let idle: Vec<usize> = (0..n).filter(|&q| succ[q].is_empty()).collect();
        let total = open.len() + idle.len();
        if total == 0 {
            free_exits.push(j);
            continue;
        }
        let k = rng.gen_range(0..total);
        if k < open.len() {
            entrances[open[k]] = Some(Target::Exit(j));
        } else {
            succ[idle[k - open.len()]].push(Target::Exit(j));
        }
    }
    for e in entrances.iter_mut().filter(|e| e.is_none()) {
        *e = Some(if n > 0 {
            Target::Pos(rng.gen_range(0..n))
        } else {
            Target::Exit(free_exits.pop().expect("enough exits for a position-free game"))
        });
    }
    for s in succ.iter_mut() {
        if s.is_empty() && (n == 0 || rng.gen_bool(p.stuck)) {
            continue;
        }
        if s.is_empty() {
            s.push(Target::Pos(rng.gen_range(0..n)));
        }
    }
    let mut branching: Vec<usize> = (0..n).collect();
    branching.shuffle(rng);
    let mut choices = succ.iter().filter(|s| s.len() > 1).count();
    for q in branching {
        if choices >= p.max_choices || succ[q].is_empty() || !rng.gen_bool(0.5) {
            continue;
        }
        let extra = rng.gen_range(1..p.max_out.max(2));
        for _ in 0..extra {
            let t = Target::Pos(rng.gen_range(0..n));
            if !succ[q].contains(&t) {
                succ[q].push(t);
            }
        }
        if succ[q].len() > 1 {
            choices += 1;
        }
    }
    let entrances = entrances.into_iter().map(|e| e.expect("assigned")).collect();
    OpenGame::from_parts(left, right, positions, entrances, succ)
}

/// A random game all of whose positions have exactly one successor.
pub fn random_ropg_game<R: Rng>(rng: &mut R, m: usize, n: usize, p: &GameParams, tag: &str) -> OpenGame {
    let p = GameParams { max_choices: 0, ..p.clone() };
    random_game(rng, Arity::rightward(m), Arity::rightward(n), &p, tag)
}

pub fn random_weight<R: Rng>(rng: &mut R, range: (i64, i64)) -> Weight {
    // Mix in halves so that sums exercise the rational arithmetic.
    let base = Weight::from_int(rng.gen_range(range.0..=range.1));
    if rng.gen_bool(0.2) {
        base + Weight::new(1, 2)
    } else {
        base
    }
}

/// A random realizable play arrow `dom -> cod`.
pub fn random_play_arrow<R: Rng>(rng: &mut R, dom: usize, cod: usize, range: (i64, i64)) -> PlayArrow {
    let mut plain = vec![false; cod];
    let mut used = vec![false; cod];
    let map: Vec<TValue> = (0..dom)
        .map(|_| loop {
            match rng.gen_range(0..6) {
                0 => break Outcome::WinE,
                1 => break Outcome::WinA,
                2 | 3 if cod > 0 => {
                    let j = rng.gen_range(0..cod);
                    if !used[j] {
                        used[j] = true;
                        plain[j] = true;
                        break Outcome::Exit(j);
                    }
                }
                _ if cod > 0 => {
                    let j = rng.gen_range(0..cod);
                    if !plain[j] {
                        used[j] = true;
                        break Outcome::Weighted(random_weight(rng, range), j);
                    }
                }
                _ => {}
            }
        })
        .collect();
    PlayArrow::new(cod, map).expect("generated arrows are realizable")
}

/// Random nested value of the play monad over `[n]`.
pub fn random_tvalue<R: Rng>(rng: &mut R, n: usize, range: (i64, i64)) -> TValue {
    match rng.gen_range(0..4) {
        0 => Outcome::WinE,
        1 => Outcome::WinA,
        2 => Outcome::Exit(rng.gen_range(0..n.max(1))),
        _ => Outcome::Weighted(random_weight(rng, range), rng.gen_range(0..n.max(1))),
    }
}

#[derive(Clone, Debug)]
pub struct DiagramParams {
    /// Total positions over all leaves after unfolding sharing.
    pub positions: usize,
    pub weights: (i64, i64),
    pub max_depth: usize,
    /// Largest wire count on any one side of an intermediate interface.
    pub max_wires: usize,
    pub max_choices: usize,
}

impl Default for DiagramParams {
    fn default() -> Self {
        DiagramParams { positions: 8, weights: (-5, 5), max_depth: 4, max_wires: 2, max_choices: 3 }
    }
}

/// A random well-typed term from `left` to `right` whose unfolded leaves
/// hold about `p.positions` positions in total (a leaf that needs a
/// position to be valid may add one).
pub fn random_term<R: Rng>(rng: &mut R, left: Arity, right: Arity, p: &DiagramParams) -> Term {
    let mut g = TermGen { rng, p, counter: 0, vars: 0 };
    g.term(left, right, p.positions, p.max_depth)
}

/// A random closed diagram `(1,0) -> (0,0)`.
pub fn random_closed_diagram<R: Rng>(rng: &mut R, p: &DiagramParams) -> Term {
    random_term(rng, Arity::rightward(1), Arity::ZERO, p)
}

struct TermGen<'a, R> {
    rng: &'a mut R,
    p: &'a DiagramParams,
    counter: usize,
    vars: usize,
}

impl<R: Rng> TermGen<'_, R> {
    fn leaf(&mut self, left: Arity, right: Arity, positions: usize) -> Term {
        let tag = format!("g{}", self.counter);
        self.counter += 1;
        let gp = GameParams {
            positions,
            weights: self.p.weights,
            max_choices: self.p.max_choices,
            max_out: 2,
            stuck: 0.1,
            exit_use: 0.8,
        };
        Term::leaf(random_game(self.rng, left, right, &gp, &tag))
    }

    fn constant_for(left: Arity, right: Arity) -> Option<ConstKind> {
        ConstKind::ALL.into_iter().find(|k| k.arity() == (left, right))
    }

    fn small_arity(&mut self) -> Arity {
        let w = self.p.max_wires;
        Arity::new(self.rng.gen_range(0..=w), self.rng.gen_range(0..=w.min(1)))
    }

    fn term(&mut self, left: Arity, right: Arity, budget: usize, depth: usize) -> Term {
        if depth == 0 || budget <= 1 {
            if budget == 0 {
                if let Some(k) = Self::constant_for(left, right) {
                    return Term::constant(k);
                }
            }
            return self.leaf(left, right, budget);
        }
        match self.rng.gen_range(0..10) {
            0 | 1 | 2 => {
                // Sequential composition through a random middle interface.
                let mid = self.small_arity();
                let b1 = self.rng.gen_range(0..=budget);
                let a = self.term(left, mid, b1, depth - 1);
                let b = self.term(mid, right, budget - b1, depth - 1);
                Term::seq(a, b)
            }
            3 | 4 => {
                // Split the interface between the two summands: rightward
                // wires top-down, leftward wires in the swapped order.
                let lr = self.rng.gen_range(0..=left.right);
                let rr = self.rng.gen_range(0..=right.right);
                let ll = self.rng.gen_range(0..=left.left);
                let rl = self.rng.gen_range(0..=right.left);
                let b1 = self.rng.gen_range(0..=budget);
                let a = self.term(Arity::new(lr, left.left - ll), Arity::new(rr, right.left - rl), b1, depth - 1);
                let b = self.term(Arity::new(left.right - lr, ll), Arity::new(right.right - rr, rl), budget - b1, depth - 1);
                Term::sum(a, b)
            }
            5 if left.is_rightward() && right.is_rightward() => {
                let l = self.rng.gen_range(1..=2);
                let body = self.term(Arity::rightward(left.right + l), Arity::rightward(right.right + l), budget, depth - 1);
                Term::trace(l, body)
            }
            6 if left == right && budget >= 2 => {
                // let-shared component used twice in sequence.
                let name = self.fresh_var();
                let bound = self.term(left, left, budget / 2, depth - 1);
                let rest = self.term(left, right, budget - 2 * (budget / 2), depth - 1);
                Term::let_in(&name, bound, Term::seq(Term::seq(Term::var(&name), Term::var(&name)), rest))
            }
            7 => {
                // Feed one extra rightward output back through a cap.
                let mid = Arity::new(right.right + 1, right.left + 1);
                let a = self.term(left, mid, budget, depth - 1);
                let cap = Term::constant(ConstKind::Cap);
                match identity_term(right) {
                    Some(id) => Term::seq(a, Term::sum(id, cap)),
                    None => Term::seq(a, cap),
                }
            }
            _ => self.leaf(left, right, budget),
        }
    }

    fn fresh_var(&mut self) -> String {
        self.vars += 1;
        format!("t{}", self.vars)
    }
}

/// The identity on an object as a sum of single-wire identities, or `None`
/// for the unit object.
pub fn identity_term(a: Arity) -> Option<Term> {
    let parts = (0..a.right).map(|_| ConstKind::IdR).chain((0..a.left).map(|_| ConstKind::IdL));
    parts.map(Term::constant).reduce(Term::sum)
}
