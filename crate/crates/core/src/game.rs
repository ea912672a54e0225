//! Open mean payoff games: validated game graphs, memoryless strategies,
//! induced play graphs and the denotation of a single deterministic play.
//!
//! Open ends are numbered from zero. A game from `(m_r, m_l)` to `(n_r, n_l)`
//! has `m_r + n_l` entrances, ordered `lhs.r*` then `rhs.l*`, and `n_r + m_l`
//! exits, ordered `rhs.r*` then `lhs.l*`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::play::{Outcome, TValue};
use crate::weight::Weight;

/// Numbers of rightward and leftward wires on one side of a game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Arity {
    pub right: usize,
    pub left: usize,
}

impl Arity {
    pub const ZERO: Arity = Arity { right: 0, left: 0 };

    pub const fn new(right: usize, left: usize) -> Self {
        Arity { right, left }
    }

    pub const fn rightward(n: usize) -> Self {
        Arity { right: n, left: 0 }
    }

    pub const fn is_rightward(&self) -> bool {
        self.left == 0
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.right, self.left)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Exists,
    Forall,
}

/// Head of an edge: an exit or a position (by index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Exit(usize),
    Pos(usize),
}

impl Target {
    pub(crate) fn shift(self, exits: usize, positions: usize) -> Target {
        match self {
            Target::Exit(j) => Target::Exit(j + exits),
            Target::Pos(q) => Target::Pos(q + positions),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    pub label: String,
    pub role: Role,
    pub weight: Weight,
}

/// A named open end of a game. Indices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Port {
    LhsR(usize),
    LhsL(usize),
    RhsR(usize),
    RhsL(usize),
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Port::LhsR(k) => write!(f, "lhs.r{}", k + 1),
            Port::LhsL(k) => write!(f, "lhs.l{}", k + 1),
            Port::RhsR(k) => write!(f, "rhs.r{}", k + 1),
            Port::RhsL(k) => write!(f, "rhs.l{}", k + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawEndpoint {
    Port(Port),
    Pos(String),
}

impl fmt::Display for RawEndpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RawEndpoint::Port(p) => p.fmt(f),
            RawEndpoint::Pos(l) => f.write_str(l),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPosition {
    pub label: String,
    pub role: Option<Role>,
    pub weight: Option<Weight>,
}

/// An unvalidated game description, as read from text or built by hand.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RawGame {
    pub left: Arity,
    pub right: Arity,
    pub positions: Vec<RawPosition>,
    pub edges: Vec<(RawEndpoint, RawEndpoint)>,
}

impl RawGame {
    pub fn new(left: Arity, right: Arity) -> Self {
        RawGame { left, right, ..Default::default() }
    }

    pub fn position(mut self, label: &str, role: Role, weight: Weight) -> Self {
        self.positions.push(RawPosition {
            label: label.into(),
            role: Some(role),
            weight: Some(weight),
        });
        self
    }

    pub fn edge(mut self, from: RawEndpoint, to: RawEndpoint) -> Self {
        self.edges.push((from, to));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("entrance {0} has no successor")]
    EntranceWithoutSuccessor(String),
    #[error("entrance {0} has more than one successor")]
    EntranceWithMultipleSuccessors(String),
    #[error("exit {0} has more than one predecessor")]
    ExitWithMultiplePredecessors(String),
    #[error("edge endpoint `{0}` does not exist or points the wrong way")]
    DanglingEdgeEndpoint(String),
    #[error("position `{0}` lacks a role or a weight")]
    MissingRoleOrWeight(String),
    #[error("position `{0}` is declared twice")]
    DuplicatePosition(String),
    #[error("position {0} has more than one successor in a play graph")]
    NotDeterministic(String),
    #[error("strategy does not belong to this game")]
    StrategyGameMismatch,
}

/// A validated open game.
///
/// Conditions (†) and (‡) hold by construction: every entrance has exactly
/// one successor and every exit has at most one predecessor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpenGame {
    left: Arity,
    right: Arity,
    positions: Vec<Position>,
    entrances: Vec<Target>,
    succ: Vec<Vec<Target>>,
}

pub fn validate_game(raw: &RawGame) -> Result<OpenGame, GameError> {
    let (left, right) = (raw.left, raw.right);
    let mut positions = Vec::with_capacity(raw.positions.len());
    let mut index = alloc::collections::BTreeMap::new();
    for p in &raw.positions {
        let (Some(role), Some(weight)) = (p.role, p.weight) else {
            return Err(GameError::MissingRoleOrWeight(p.label.clone()));
        };
        if index.insert(p.label.as_str(), positions.len()).is_some() {
            return Err(GameError::DuplicatePosition(p.label.clone()));
        }
        positions.push(Position { label: p.label.clone(), role, weight });
    }

    let n_entrances = left.right + right.left;
    let n_exits = right.right + left.left;
    let dangling = |e: &RawEndpoint| GameError::DanglingEdgeEndpoint(format!("{e}"));
    let source = |e: &RawEndpoint| -> Result<Source, GameError> {
        match e {
            RawEndpoint::Port(Port::LhsR(k)) if *k < left.right => Ok(Source::Entrance(*k)),
            RawEndpoint::Port(Port::RhsL(k)) if *k < right.left => {
                Ok(Source::Entrance(left.right + k))
            }
            RawEndpoint::Pos(l) => index.get(l.as_str()).map(|&q| Source::Pos(q)).ok_or_else(|| dangling(e)),
            _ => Err(dangling(e)),
        }
    };
    let target = |e: &RawEndpoint| -> Result<Target, GameError> {
        match e {
            RawEndpoint::Port(Port::RhsR(k)) if *k < right.right => Ok(Target::Exit(*k)),
            RawEndpoint::Port(Port::LhsL(k)) if *k < left.left => Ok(Target::Exit(right.right + k)),
            RawEndpoint::Pos(l) => index.get(l.as_str()).map(|&q| Target::Pos(q)).ok_or_else(|| dangling(e)),
            _ => Err(dangling(e)),
        }
    };

    let mut entrance_succ: Vec<Vec<Target>> = vec![Vec::new(); n_entrances];
    let mut succ: Vec<Vec<Target>> = vec![Vec::new(); positions.len()];
    for (from, to) in &raw.edges {
        let s = source(from)?;
        let t = target(to)?;
        let list = match s {
            Source::Entrance(i) => &mut entrance_succ[i],
            Source::Pos(q) => &mut succ[q],
        };
        // E is a set: repeated edges collapse.
        if !list.contains(&t) {
            list.push(t);
        }
    }

    let mut entrances = Vec::with_capacity(n_entrances);
    for (i, ts) in entrance_succ.into_iter().enumerate() {
        match ts.as_slice() {
            [t] => entrances.push(*t),
            [] => return Err(GameError::EntranceWithoutSuccessor(entrance_name(left, right, i))),
            _ => {
                return Err(GameError::EntranceWithMultipleSuccessors(entrance_name(left, right, i)))
            }
        }
    }
    let game = OpenGame { left, right, positions, entrances, succ };
    let mut preds = vec![0usize; n_exits];
    for t in game.entrances.iter().chain(game.succ.iter().flatten()) {
        if let Target::Exit(j) = *t {
            preds[j] += 1;
            if preds[j] > 1 {
                return Err(GameError::ExitWithMultiplePredecessors(exit_name(left, right, j)));
            }
        }
    }
    Ok(game)
}

#[derive(Clone, Copy)]
enum Source {
    Entrance(usize),
    Pos(usize),
}

pub fn entrance_port(left: Arity, _right: Arity, i: usize) -> Port {
    if i < left.right {
        Port::LhsR(i)
    } else {
        Port::RhsL(i - left.right)
    }
}

pub fn exit_port(_left: Arity, right: Arity, j: usize) -> Port {
    if j < right.right {
        Port::RhsR(j)
    } else {
        Port::LhsL(j - right.right)
    }
}

fn entrance_name(left: Arity, right: Arity, i: usize) -> String {
    format!("{}", entrance_port(left, right, i))
}

fn exit_name(left: Arity, right: Arity, j: usize) -> String {
    format!("{}", exit_port(left, right, j))
}

impl OpenGame {
    /// Assembles a game from parts that are already known to be valid.
    pub(crate) fn from_parts(
        left: Arity,
        right: Arity,
        positions: Vec<Position>,
        entrances: Vec<Target>,
        succ: Vec<Vec<Target>>,
    ) -> Self {
        let g = OpenGame { left, right, positions, entrances, succ };
        debug_assert_eq!(g.check(), Ok(()));
        g
    }

    /// Position-free game whose entrance `i` goes straight to exit `wiring[i]`.
    pub fn wires(left: Arity, right: Arity, wiring: &[usize]) -> Self {
        let entrances = wiring.iter().map(|&j| Target::Exit(j)).collect();
        Self::from_parts(left, right, Vec::new(), entrances, Vec::new())
    }

    pub fn left(&self) -> Arity {
        self.left
    }

    pub fn right(&self) -> Arity {
        self.right
    }

    pub fn entrance_count(&self) -> usize {
        self.entrances.len()
    }

    pub fn exit_count(&self) -> usize {
        self.right.right + self.left.left
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn entrance_target(&self, i: usize) -> Target {
        self.entrances[i]
    }

    pub fn entrance_targets(&self) -> &[Target] {
        &self.entrances
    }

    pub fn successors(&self, q: usize) -> &[Target] {
        &self.succ[q]
    }

    pub fn edge_count(&self) -> usize {
        self.entrances.len() + self.succ.iter().map(Vec::len).sum::<usize>()
    }

    pub fn is_rightward(&self) -> bool {
        self.left.is_rightward() && self.right.is_rightward()
    }

    /// The same graph read as a rightward game `m_r + n_l -> n_r + m_l`.
    pub fn into_rightward(self) -> OpenGame {
        let (m, n) = (self.entrance_count(), self.exit_count());
        OpenGame { left: Arity::rightward(m), right: Arity::rightward(n), ..self }
    }

    /// Reinterprets the open ends under new arities with the same entrance
    /// and exit counts.
    pub fn with_arities(self, left: Arity, right: Arity) -> OpenGame {
        assert_eq!(left.right + right.left, self.entrance_count());
        assert_eq!(right.right + left.left, self.exit_count());
        OpenGame { left, right, ..self }
    }

    /// Writes the game back out as a raw description.
    pub fn to_raw(&self) -> RawGame {
        let (left, right) = (self.left, self.right);
        let ep = |t: Target| match t {
            Target::Exit(j) => RawEndpoint::Port(exit_port(left, right, j)),
            Target::Pos(q) => RawEndpoint::Pos(self.positions[q].label.clone()),
        };
        let mut edges = Vec::with_capacity(self.edge_count());
        for (i, t) in self.entrances.iter().enumerate() {
            edges.push((RawEndpoint::Port(entrance_port(left, right, i)), ep(*t)));
        }
        for (q, ts) in self.succ.iter().enumerate() {
            for t in ts {
                edges.push((RawEndpoint::Pos(self.positions[q].label.clone()), ep(*t)));
            }
        }
        RawGame {
            left,
            right,
            positions: self
                .positions
                .iter()
                .map(|p| RawPosition { label: p.label.clone(), role: Some(p.role), weight: Some(p.weight) })
                .collect(),
            edges,
        }
    }

    /// Re-checks (†), (‡) and index ranges on an assembled game.
    pub fn check(&self) -> Result<(), GameError> {
        let n_exits = self.exit_count();
        if self.entrances.len() != self.left.right + self.right.left || self.succ.len() != self.positions.len() {
            return Err(GameError::DanglingEdgeEndpoint("shape".into()));
        }
        let mut preds = vec![0usize; n_exits];
        for t in self.entrances.iter().chain(self.succ.iter().flatten()) {
            match *t {
                Target::Exit(j) if j < n_exits => {
                    preds[j] += 1;
                    if preds[j] > 1 {
                        return Err(GameError::ExitWithMultiplePredecessors(exit_name(self.left, self.right, j)));
                    }
                }
                Target::Pos(q) if q < self.positions.len() => {}
                t => return Err(GameError::DanglingEdgeEndpoint(format!("{t:?}"))),
            }
        }
        for (q, ts) in self.succ.iter().enumerate() {
            for (k, t) in ts.iter().enumerate() {
                if ts[..k].contains(t) {
                    return Err(GameError::DanglingEdgeEndpoint(format!(
                        "duplicate edge from {}",
                        self.positions[q].label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Positions reachable from some entrance.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.positions.len()];
        let mut stack: Vec<usize> = self
            .entrances
            .iter()
            .filter_map(|t| match t {
                Target::Pos(q) => Some(*q),
                Target::Exit(_) => None,
            })
            .collect();
        while let Some(q) = stack.pop() {
            if core::mem::replace(&mut seen[q], true) {
                continue;
            }
            for t in &self.succ[q] {
                if let Target::Pos(p) = *t {
                    if !seen[p] {
                        stack.push(p);
                    }
                }
            }
        }
        seen
    }
}

/// A memoryless strategy: one successor for each owned position that has any.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Strategy {
    owner: Role,
    choice: Vec<Option<Target>>,
}

impl Strategy {
    pub fn owner(&self) -> Role {
        self.owner
    }

    pub fn choice(&self, q: usize) -> Option<Target> {
        self.choice.get(q).copied().flatten()
    }

    /// Builds a strategy from explicit choices, checking it against the game.
    pub fn new(game: &OpenGame, owner: Role, choice: Vec<Option<Target>>) -> Result<Self, GameError> {
        let s = Strategy { owner, choice };
        s.check(game)?;
        Ok(s)
    }

    fn check(&self, game: &OpenGame) -> Result<(), GameError> {
        if self.choice.len() != game.positions.len() {
            return Err(GameError::StrategyGameMismatch);
        }
        for (q, c) in self.choice.iter().enumerate() {
            let owned = game.positions[q].role == self.owner;
            let ok = match c {
                Some(t) => owned && game.succ[q].contains(t),
                None => !owned || game.succ[q].is_empty(),
            };
            if !ok {
                return Err(GameError::StrategyGameMismatch);
            }
        }
        Ok(())
    }
}

/// Lazily enumerates every memoryless strategy of `owner` exactly once.
pub fn enumerate_strategies(game: &OpenGame, owner: Role) -> Strategies<'_> {
    let choosers = (0..game.positions.len())
        .filter(|&q| game.positions[q].role == owner && !game.succ[q].is_empty())
        .collect();
    Strategies { game, owner, odometer: Odometer::new(game, choosers) }
}

pub struct Strategies<'a> {
    game: &'a OpenGame,
    owner: Role,
    odometer: Odometer,
}

impl Strategies<'_> {
    /// Total number of strategies: the product of out-degrees of the owner's
    /// non-stuck positions.
    pub fn count(game: &OpenGame, owner: Role) -> u128 {
        game.positions
            .iter()
            .zip(&game.succ)
            .filter(|(p, s)| p.role == owner && !s.is_empty())
            .map(|(_, s)| s.len() as u128)
            .product()
    }
}

impl Iterator for Strategies<'_> {
    type Item = Strategy;

    fn next(&mut self) -> Option<Strategy> {
        let digits = self.odometer.next()?.to_vec();
        let mut choice = vec![None; self.game.positions.len()];
        for (&q, &d) in self.odometer.choosers.iter().zip(&digits) {
            choice[q] = Some(self.game.succ[q][d]);
        }
        Some(Strategy { owner: self.owner, choice })
    }
}

/// Mixed-radix counter over the successor lists of `choosers`.
pub(crate) struct Odometer {
    pub(crate) choosers: Vec<usize>,
    radix: Vec<usize>,
    digits: Vec<usize>,
    started: bool,
    done: bool,
}

impl Odometer {
    pub(crate) fn new(game: &OpenGame, choosers: Vec<usize>) -> Self {
        let radix: Vec<usize> = choosers.iter().map(|&q| game.succ[q].len()).collect();
        let done = radix.contains(&0);
        Odometer { digits: vec![0; radix.len()], choosers, radix, started: false, done }
    }

    pub(crate) fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.digits);
        }
        for k in 0..self.digits.len() {
            self.digits[k] += 1;
            if self.digits[k] < self.radix[k] {
                return Some(&self.digits);
            }
            self.digits[k] = 0;
        }
        self.done = true;
        None
    }
}

/// A rightward open play graph: a game in which every position has at most
/// one successor, so each entrance has a unique play.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RoPG(OpenGame);

impl RoPG {
    /// Wraps a deterministic game, reading it as a rightward game.
    pub fn new(game: OpenGame) -> Result<Self, GameError> {
        for (q, ts) in game.succ.iter().enumerate() {
            if ts.len() > 1 {
                return Err(GameError::NotDeterministic(game.positions[q].label.clone()));
            }
        }
        Ok(RoPG(game.into_rightward()))
    }

    pub fn game(&self) -> &OpenGame {
        &self.0
    }

    pub fn into_game(self) -> OpenGame {
        self.0
    }

    pub fn next(&self, q: usize) -> Option<Target> {
        self.0.succ[q].first().copied()
    }

    pub fn entrance_count(&self) -> usize {
        self.0.entrance_count()
    }

    pub fn exit_count(&self) -> usize {
        self.0.exit_count()
    }
}

/// The play graph obtained by resolving every choice of `game` with the two
/// strategies.
pub fn induced_ropg(game: &OpenGame, s_exists: &Strategy, s_forall: &Strategy) -> Result<RoPG, GameError> {
    if s_exists.owner != Role::Exists || s_forall.owner != Role::Forall {
        return Err(GameError::StrategyGameMismatch);
    }
    s_exists.check(game)?;
    s_forall.check(game)?;
    let succ = (0..game.positions.len())
        .map(|q| s_exists.choice(q).or(s_forall.choice(q)).into_iter().collect())
        .collect();
    let g = OpenGame {
        left: Arity::rightward(game.entrance_count()),
        right: Arity::rightward(game.exit_count()),
        positions: game.positions.clone(),
        entrances: game.entrances.clone(),
        succ,
    };
    Ok(RoPG(g))
}

/// One element of a play.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Entrance(usize),
    Pos(usize),
    Exit(usize),
}

/// A finite play, or an infinite one given as a lasso `prefix · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Play {
    pub prefix: Vec<Step>,
    pub cycle: Option<Vec<Step>>,
}

impl Play {
    pub fn is_infinite(&self) -> bool {
        self.cycle.is_some()
    }

    /// The position at index `k` of the (unrolled) play.
    pub fn at(&self, k: usize) -> Step {
        if k < self.prefix.len() {
            return self.prefix[k];
        }
        let c = self.cycle.as_ref().expect("finite play index out of range");
        c[(k - self.prefix.len()) % c.len()]
    }
}

/// The unique play of `pg` from entrance `i`, cut at the first repeated
/// position.
pub fn unique_play(pg: &RoPG, i: usize) -> Play {
    let mut prefix = vec![Step::Entrance(i)];
    let mut first_seen = vec![usize::MAX; pg.0.positions.len()];
    let mut cur = pg.0.entrances[i];
    loop {
        match cur {
            Target::Exit(j) => {
                prefix.push(Step::Exit(j));
                return Play { prefix, cycle: None };
            }
            Target::Pos(q) => {
                if first_seen[q] != usize::MAX {
                    let cycle = prefix.split_off(first_seen[q]);
                    return Play { prefix, cycle: Some(cycle) };
                }
                first_seen[q] = prefix.len();
                prefix.push(Step::Pos(q));
                match pg.next(q) {
                    Some(t) => cur = t,
                    None => return Play { prefix, cycle: None },
                }
            }
        }
    }
}

/// The outcome of the unique play from entrance `i`.
pub fn play_denotation(pg: &RoPG, i: usize) -> TValue {
    Walker::new(pg.0.positions.len()).denote(&pg.0.positions, pg.0.entrances[i], |q| pg.next(q))
}

/// Outcome of a play from its step sequence, straight from the case table:
/// direct exit, weighted exit, stuck position, or cycle sign.
pub fn denote_play(game: &OpenGame, play: &Play) -> TValue {
    let weight = |s: &Step| match s {
        Step::Pos(q) => game.positions[*q].weight,
        _ => Weight::ZERO,
    };
    if let Some(cycle) = &play.cycle {
        let ws: Vec<Weight> = cycle.iter().map(weight).collect();
        return if mp_check_liminf(&[], &ws) { Outcome::WinE } else { Outcome::WinA };
    }
    debug_assert!(play.prefix.len() >= 2, "an entrance always has a successor");
    match *play.prefix.last().expect("non-empty play") {
        Step::Exit(j) if play.prefix.len() == 2 => Outcome::Exit(j),
        Step::Exit(j) => Outcome::Weighted(play.prefix.iter().map(weight).sum(), j),
        Step::Pos(q) => match game.positions[q].role {
            Role::Forall => Outcome::WinE,
            Role::Exists => Outcome::WinA,
        },
        Step::Entrance(_) => unreachable!("entrance without successor violates (†)"),
    }
}

/// The mean payoff condition on an ultimately periodic weight sequence,
/// decided by the sign of the cycle sum. The prefix never matters.
pub fn mp_check_liminf(_prefix: &[Weight], cycle: &[Weight]) -> bool {
    assert!(!cycle.is_empty(), "a lasso needs a non-empty cycle");
    !cycle.iter().copied().sum::<Weight>().is_negative()
}

/// Average of the first `steps` weights of `prefix · cycle^ω`, for
/// cross-checking the cycle test against the liminf form.
pub fn running_average(prefix: &[Weight], cycle: &[Weight], steps: usize) -> f64 {
    assert!(!cycle.is_empty() && steps > 0);
    let p: Vec<f64> = prefix.iter().map(Weight::to_f64).collect();
    let c: Vec<f64> = cycle.iter().map(Weight::to_f64).collect();
    let mut total = 0.0;
    for k in 0..steps {
        total += if k < p.len() { p[k] } else { c[(k - p.len()) % c.len()] };
    }
    total / steps as f64
}

/// Scratch space for repeated deterministic walks over one position set.
pub(crate) struct Walker {
    first_seen: Vec<u32>,
    sums: Vec<Weight>,
    visited: Vec<usize>,
}

impl Walker {
    pub(crate) fn new(positions: usize) -> Self {
        Walker { first_seen: vec![0; positions], sums: Vec::new(), visited: Vec::new() }
    }

    pub(crate) fn denote(
        &mut self,
        positions: &[Position],
        start: Target,
        next: impl Fn(usize) -> Option<Target>,
    ) -> TValue {
        let mut q = match start {
            Target::Exit(j) => return Outcome::Exit(j),
            Target::Pos(q) => q,
        };
        let mut sum = Weight::ZERO;
        let result = loop {
            let seen = self.first_seen[q];
            if seen != 0 {
                let cycle = sum - self.sums[seen as usize - 1];
                break if cycle.is_negative() { Outcome::WinA } else { Outcome::WinE };
            }
            self.visited.push(q);
            self.sums.push(sum);
            self.first_seen[q] = self.visited.len() as u32;
            sum += positions[q].weight;
            match next(q) {
                None => {
                    break match positions[q].role {
                        Role::Forall => Outcome::WinE,
                        Role::Exists => Outcome::WinA,
                    }
                }
                Some(Target::Exit(j)) => break Outcome::Weighted(sum, j),
                Some(Target::Pos(p)) => q = p,
            }
        };
        for &v in &self.visited {
            self.first_seen[v] = 0;
        }
        self.visited.clear();
        self.sums.clear();
        result
    }
}
