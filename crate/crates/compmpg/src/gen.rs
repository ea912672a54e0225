//! Seeded benchmark families. Every generator is a pure function of its
//! seed and parameters and returns a closed `(1,0) -> (0,0)` diagram.
//!
//! * `mining`: a cave of identical floors `(k,k) -> (k,k)`, entered from
//!   the top through a 0-weight ∃ position that picks a shaft and receives
//!   every upward wire, and closed at the bottom by turning each downward
//!   wire around. The floor is bound once; stacks are built by doubling.
//! * `layered`: a random leaf wrapped in layers, each drawn from five
//!   fixed shapes (see [`LayerShape`]).
//! * `dr` and `arity`: a chain of `slots` components between the same top
//!   and bottom as `mining`, varying either how many distinct components
//!   fill the slots or the interface width.
//! * `random`: small random diagrams whose flattening fits the brute-force
//!   oracle.

use compmpg_core::diagram::{resolve_sharing, ConstKind};
use compmpg_core::game::{validate_game, Port, RawEndpoint, RawGame};
use compmpg_core::random::{random_closed_diagram, random_game, seeded, DiagramParams, GameParams, SeededRng};
use compmpg_core::{Arity, OpenGame, Role, Term, Weight};
use rand::seq::SliceRandom;
use rand::Rng;

/// Weight range used throughout the benchmark families.
pub const DEFAULT_WEIGHTS: (i64, i64) = (-100_000, 100_000);

#[derive(Clone, Debug, PartialEq)]
pub struct MiningParams {
    pub floors: usize,
    pub floor_positions: usize,
    pub loop_arity: usize,
    pub weights: (i64, i64),
    /// Branching positions per floor.
    pub choices: usize,
}

impl Default for MiningParams {
    fn default() -> Self {
        MiningParams { floors: 4, floor_positions: 40, loop_arity: 1, weights: DEFAULT_WEIGHTS, choices: 4 }
    }
}

fn port(p: Port) -> RawEndpoint {
    RawEndpoint::Port(p)
}

fn pos(l: &str) -> RawEndpoint {
    RawEndpoint::Pos(l.into())
}

/// `(1,0) -> (k,k)`: one ∃ position of weight 0 choosing a downward wire;
/// all upward wires return to it.
pub fn entry_game(k: usize) -> OpenGame {
    let mut raw = RawGame::new(Arity::rightward(1), Arity::new(k, k))
        .position("entry", Role::Exists, Weight::ZERO)
        .edge(port(Port::LhsR(0)), pos("entry"));
    for i in 0..k {
        raw = raw.edge(pos("entry"), port(Port::RhsR(i))).edge(port(Port::RhsL(i)), pos("entry"));
    }
    validate_game(&raw).expect("entry game is valid")
}

/// `(k,k) -> (0,0)`: each downward wire turns back up.
pub fn bottom_game(k: usize) -> OpenGame {
    let mut raw = RawGame::new(Arity::new(k, k), Arity::ZERO);
    for i in 0..k {
        raw = raw.edge(port(Port::LhsR(i)), port(Port::LhsL(i)));
    }
    validate_game(&raw).expect("bottom game is valid")
}

/// `(k,k) -> (k,k)` component made of `2k` corridors: downward wire `i` runs
/// through a chain of positions to `rhs.r{i}`, upward wire `i` to
/// `lhs.l{i}`. `choices` random positions get a second successor anywhere
/// on the floor.
fn floor_game(rng: &mut SeededRng, k: usize, positions: usize, weights: (i64, i64), choices: usize, tag: &str) -> OpenGame {
    let label = |q: usize| format!("{tag}{q}");
    let mut raw = RawGame::new(Arity::new(k, k), Arity::new(k, k));
    for q in 0..positions {
        let role = if rng.gen_bool(0.5) { Role::Exists } else { Role::Forall };
        raw = raw.position(&label(q), role, Weight::from_int(rng.gen_range(weights.0..=weights.1)));
    }
    // Corridor c holds positions c, c + 2k, c + 4k, ...
    let corridors = 2 * k;
    for c in 0..corridors {
        let (from, to) = if c < k { (Port::LhsR(c), Port::RhsR(c)) } else { (Port::RhsL(c - k), Port::LhsL(c - k)) };
        let mut prev = port(from);
        for q in (c..positions).step_by(corridors) {
            raw = raw.edge(prev, pos(&label(q)));
            prev = pos(&label(q));
        }
        raw = raw.edge(prev, port(to));
    }
    let mut picked: Vec<usize> = (0..positions).collect();
    picked.shuffle(rng);
    for &q in picked.iter().take(choices) {
        let mut t = rng.gen_range(0..positions);
        if t == q + corridors {
            t = q;
        }
        raw = raw.edge(pos(&label(q)), pos(&label(t)));
    }
    validate_game(&raw).expect("floor game is valid")
}

/// Binds `unit1, unit2, unit4, ...` by doubling and passes `n` copies of
/// `unit` in sequence to `body`.
fn power_stack(unit: &str, n: usize, body: impl FnOnce(Term) -> Term) -> Term {
    assert!(n >= 1);
    let mut powers = vec![format!("{unit}1")];
    while 1usize << powers.len() <= n {
        let k = powers.len();
        powers.push(format!("{unit}{}", 1usize << k));
    }
    let stack = (0..powers.len())
        .rev()
        .filter(|&k| n & (1 << k) != 0)
        .map(|k| Term::var(&powers[k]))
        .reduce(Term::seq)
        .expect("n >= 1");
    let mut t = body(stack);
    for k in (1..powers.len()).rev() {
        let half = Term::var(&powers[k - 1]);
        t = Term::let_in(&powers[k], Term::seq(half.clone(), half), t);
    }
    Term::let_in(&powers[0], Term::var(unit), t)
}

pub fn gen_mining(seed: u64, p: &MiningParams) -> Term {
    assert!(p.floors >= 1 && p.loop_arity >= 1);
    let mut rng = seeded(seed);
    let k = p.loop_arity;
    let floor = floor_game(&mut rng, k, p.floor_positions, p.weights, p.choices, "f");
    let body = power_stack("floor", p.floors, |stack| {
        Term::seq(Term::seq(Term::leaf(entry_game(k)), stack), Term::leaf(bottom_game(k)))
    });
    Term::let_in("floor", Term::leaf(floor), body)
}

/// The five layer shapes, applied to the closed diagram `x` built so far.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerShape {
    /// `L ; x` with `L: (1,0) -> (1,0)`.
    Prefix,
    /// `L ; (x (+) x)` with `L: (1,0) -> (2,0)`.
    Branch,
    /// `tr[1](L ; (id_r (+) x))` with `L: (2,0) -> (2,0)`.
    Loop,
    /// `L ; (x (+) cap)` with `L: (1,0) -> (2,1)`.
    Feedback,
    /// `L ; (x (+) (M ; x))` with `L: (1,0) -> (2,0)`, `M: (1,0) -> (1,0)`.
    Detour,
}

impl LayerShape {
    pub const ALL: [LayerShape; 5] =
        [LayerShape::Prefix, LayerShape::Branch, LayerShape::Loop, LayerShape::Feedback, LayerShape::Detour];

    fn doubles(self) -> bool {
        matches!(self, LayerShape::Branch | LayerShape::Detour)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayeredParams {
    pub layers: usize,
    pub leaf_positions: usize,
    pub weights: (i64, i64),
    /// Shapes that would push the flattened size past this are skipped.
    pub max_flat_positions: u128,
}

impl Default for LayeredParams {
    fn default() -> Self {
        LayeredParams { layers: 20, leaf_positions: 4, weights: DEFAULT_WEIGHTS, max_flat_positions: 1 << 20 }
    }
}

pub fn gen_layered(seed: u64, p: &LayeredParams) -> Term {
    assert!(p.layers >= 1);
    let mut rng = seeded(seed);
    let gp = GameParams { positions: p.leaf_positions, weights: p.weights, max_choices: 2, max_out: 2, ..GameParams::default() };
    let leaf = |rng: &mut SeededRng, l: Arity, r: Arity, tag: String| Term::leaf(random_game(rng, l, r, &gp, &tag));
    let mut bindings = vec![leaf(&mut rng, Arity::rightward(1), Arity::ZERO, "b".into())];
    let mut flat = p.leaf_positions as u128;
    for layer in 1..p.layers {
        let x = || Term::var(&format!("x{}", layer - 1));
        let mut shape = LayerShape::ALL[rng.gen_range(0..5)];
        if shape.doubles() && 2 * flat + 2 * p.leaf_positions as u128 > p.max_flat_positions {
            shape = [LayerShape::Prefix, LayerShape::Loop, LayerShape::Feedback][rng.gen_range(0..3)];
        }
        let tag = format!("l{layer}");
        let r = Arity::rightward;
        let t = match shape {
            LayerShape::Prefix => Term::seq(leaf(&mut rng, r(1), r(1), tag), x()),
            LayerShape::Branch => Term::seq(leaf(&mut rng, r(1), r(2), tag), Term::sum(x(), x())),
            LayerShape::Loop => Term::trace(
                1,
                Term::seq(leaf(&mut rng, r(2), r(2), tag), Term::sum(Term::constant(ConstKind::IdR), x())),
            ),
            LayerShape::Feedback => Term::seq(
                leaf(&mut rng, r(1), Arity::new(2, 1), tag),
                Term::sum(x(), Term::constant(ConstKind::Cap)),
            ),
            LayerShape::Detour => {
                let m = leaf(&mut rng, r(1), r(1), format!("{tag}m"));
                Term::seq(leaf(&mut rng, r(1), r(2), tag), Term::sum(x(), Term::seq(m, x())))
            }
        };
        flat = if shape.doubles() { 2 * flat } else { flat } + 2 * p.leaf_positions as u128;
        bindings.push(t);
    }
    let last = bindings.len() - 1;
    let mut t = Term::var(&format!("x{last}"));
    for (k, b) in bindings.into_iter().enumerate().rev() {
        t = Term::let_in(&format!("x{k}"), b, t);
    }
    t
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainParams {
    pub slots: usize,
    /// Number of distinct components; slot `i` uses component `i mod distinct`.
    pub distinct: usize,
    pub arity: usize,
    pub positions: usize,
    pub weights: (i64, i64),
    pub choices: usize,
}

pub fn gen_chain(seed: u64, p: &ChainParams) -> Term {
    assert!(p.slots >= 1 && p.distinct >= 1 && p.distinct <= p.slots && p.arity >= 1);
    let mut rng = seeded(seed);
    let comps: Vec<OpenGame> = (0..p.distinct)
        .map(|c| floor_game(&mut rng, p.arity, p.positions, p.weights, p.choices, &format!("c{c}")))
        .collect();
    let stack = (0..p.slots).map(|i| Term::var(&format!("c{}", i % p.distinct))).reduce(Term::seq).expect("slots >= 1");
    let mut t = Term::seq(Term::seq(Term::leaf(entry_game(p.arity)), stack), Term::leaf(bottom_game(p.arity)));
    for (c, g) in comps.into_iter().enumerate().rev() {
        t = Term::let_in(&format!("c{c}"), Term::leaf(g), t);
    }
    t
}

pub const DR_SLOTS: usize = 16;
pub const DR_LEVELS: [usize; 5] = [1, 2, 4, 8, 16];
pub const ARITY_LEVELS: [usize; 4] = [1, 2, 3, 4];

/// Degree of repetition `dr`: the 16 slots hold `16 / dr` distinct
/// components.
pub fn gen_dr(seed: u64, dr: usize, weights: (i64, i64)) -> Term {
    assert!(dr >= 1 && dr <= DR_SLOTS, "repetition degree must lie in 1..=16");
    let distinct = DR_SLOTS.div_ceil(dr);
    gen_chain(seed, &ChainParams { slots: DR_SLOTS, distinct, arity: 2, positions: 10, weights, choices: 3 })
}

/// Eight distinct components with interfaces of width `arity`.
pub fn gen_arity(seed: u64, arity: usize, weights: (i64, i64)) -> Term {
    gen_chain(seed, &ChainParams { slots: 8, distinct: 8, arity, positions: 8, weights, choices: 3 })
}

/// Instance name and term for each of the 400 members of a suite.
pub fn dr_suite(seed: u64, weights: (i64, i64)) -> Vec<(String, Term)> {
    let mut out = Vec::with_capacity(400);
    for dr in DR_LEVELS {
        for k in 0..80 {
            let s = seed.wrapping_mul(1_000_003).wrapping_add((dr * 1000 + k) as u64);
            out.push((format!("dr{dr:02}-{k:02}"), gen_dr(s, dr, weights)));
        }
    }
    out
}

pub fn arity_suite(seed: u64, weights: (i64, i64)) -> Vec<(String, Term)> {
    let mut out = Vec::with_capacity(400);
    for a in ARITY_LEVELS {
        for k in 0..100 {
            let s = seed.wrapping_mul(1_000_003).wrapping_add((a * 1000 + k) as u64);
            out.push((format!("arity{a}-{k:03}"), gen_arity(s, a, weights)));
        }
    }
    out
}

/// A random closed diagram whose flattening has at most `max_positions`
/// positions.
pub fn gen_random_closed(seed: u64, max_positions: usize, weights: (i64, i64)) -> Term {
    let mut rng = seeded(seed);
    loop {
        let p = DiagramParams {
            positions: rng.gen_range(1..=max_positions.max(1)),
            weights,
            max_depth: 4,
            max_wires: 2,
            max_choices: 3,
        };
        let t = random_closed_diagram(&mut rng, &p);
        let dag = resolve_sharing(&t).expect("generated diagrams are well typed");
        if dag.flattened_positions() <= max_positions as u128 {
            return t;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_diagram, print_term};
    use compmpg_core::diagram::NodeOp;
    use compmpg_core::eval::flatten;

    fn leaf_nodes(t: &Term) -> usize {
        let dag = resolve_sharing(t).unwrap();
        let live = dag.reachable();
        dag.nodes.iter().zip(live).filter(|(n, l)| *l && matches!(n.op, NodeOp::Leaf(_))).count()
    }

    #[test]
    fn mining_shares_one_floor() {
        for floors in [1, 4, 5, 256] {
            let p = MiningParams { floors, floor_positions: 10, ..MiningParams::default() };
            let t = gen_mining(3, &p);
            let dag = resolve_sharing(&t).unwrap();
            assert_eq!(dag.arity().left, Arity::rightward(1));
            assert_eq!(dag.arity().right, Arity::ZERO);
            assert_eq!(dag.flattened_positions(), 10 * floors as u128 + 1);
            assert_eq!(leaf_nodes(&t), 3);
            assert!(dag.live_nodes() <= 3 + 2 * 9 + 2, "{}", dag.live_nodes());
        }
        let g = flatten(&resolve_sharing(&gen_mining(3, &MiningParams { floors: 4, floor_positions: 10, ..Default::default() })).unwrap()).unwrap();
        assert_eq!(g.positions().len(), 41);
    }

    #[test]
    fn generators_are_deterministic_and_parse() {
        let texts = |seed| {
            [
                print_term(&gen_mining(seed, &MiningParams::default())),
                print_term(&gen_layered(seed, &LayeredParams::default())),
                print_term(&gen_dr(seed, 4, DEFAULT_WEIGHTS)),
                print_term(&gen_arity(seed, 3, DEFAULT_WEIGHTS)),
                print_term(&gen_random_closed(seed, 12, (-5, 5))),
            ]
        };
        let (a, b, c) = (texts(9), texts(9), texts(10));
        assert_eq!(a, b);
        assert_ne!(a, c);
        for s in a {
            let dag = parse_diagram(&s).unwrap();
            assert_eq!((dag.arity().left, dag.arity().right), (Arity::rightward(1), Arity::ZERO));
        }
    }

    #[test]
    fn layered_respects_size_bound() {
        assert_eq!(leaf_nodes(&gen_layered(1, &LayeredParams { layers: 1, ..Default::default() })), 1);
        for seed in 0..20 {
            let p = LayeredParams { layers: 20, leaf_positions: 3, max_flat_positions: 400, ..Default::default() };
            let dag = resolve_sharing(&gen_layered(seed, &p)).unwrap();
            assert!(dag.flattened_positions() <= 400, "{}", dag.flattened_positions());
        }
    }

    #[test]
    fn suites_vary_one_parameter() {
        let dr = dr_suite(0, (-5, 5));
        assert_eq!(dr.len(), 400);
        let distinct: Vec<usize> = DR_LEVELS.iter().map(|&d| leaf_nodes(&gen_dr(1, d, (-5, 5))) - 2).collect();
        assert_eq!(distinct, vec![16, 8, 4, 2, 1]);
        assert_eq!(arity_suite(0, (-5, 5)).len(), 400);
        for a in ARITY_LEVELS {
            let dag = resolve_sharing(&gen_arity(2, a, (-5, 5))).unwrap();
            for n in &dag.nodes {
                if let NodeOp::Leaf(g) = &n.op {
                    if g.positions().len() > 1 {
                        assert_eq!((g.left(), g.right()), (Arity::new(a, a), Arity::new(a, a)));
                    }
                }
            }
        }
    }
}
