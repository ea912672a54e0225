//! The fat semantics: sets of sets of play arrows, outer index an
//! ∃-strategy, inner index a ∀-response.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::game::{Odometer, OpenGame, Role, Target, Walker};
use crate::play::{seq_play, sum_play, trace_play, Outcome, PlayArrow, PlayError, TValue};
use crate::traced::Traced;

pub type ArrowSet = BTreeSet<PlayArrow>;

/// Default cap on the number of reachable branching positions of a leaf.
pub const DEFAULT_LEAF_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LeafError {
    #[error("leaf has {choices} branching positions, more than the limit of {limit}; decompose it further")]
    LeafTooLarge { choices: usize, limit: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Winning,
    Losing,
    Pending,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Winning => "winning",
            Status::Losing => "losing",
            Status::Pending => "pending",
        }
    }
}

/// Common interface of the fat and meager denotations.
pub trait Semantics: Traced<Error = PlayError> + Clone + PartialEq + core::fmt::Debug {
    fn from_leaf(game: &OpenGame, leaf_limit: usize) -> Result<Self, LeafError>;
    /// The denotation `{{f}}`.
    fn from_arrow(f: PlayArrow) -> Self;
    fn sets(&self) -> &BTreeSet<ArrowSet>;

    fn classify(&self, i: usize) -> Status {
        classify_sets(self.sets(), i)
    }
}

/// Per-entrance projection `{{f(i) | f ∈ S} | S ∈ F}`.
pub fn project(sets: &BTreeSet<ArrowSet>, i: usize) -> BTreeSet<BTreeSet<TValue>> {
    sets.iter().map(|s| s.iter().map(|f| f.at(i)).collect()).collect()
}

/// Winning iff ∃ has a strategy all of whose responses reach Win∃; losing
/// iff every strategy admits a response reaching Win∀.
pub fn classify_sets(sets: &BTreeSet<ArrowSet>, i: usize) -> Status {
    if sets.iter().any(|s| s.iter().all(|f| f.at(i) == Outcome::WinE)) {
        Status::Winning
    } else if sets.iter().all(|s| s.iter().any(|f| f.at(i) == Outcome::WinA)) {
        Status::Losing
    } else {
        Status::Pending
    }
}

/// Calls `emit` once per ∃-strategy with the play arrows of all ∀-responses.
/// Only positions reachable from an entrance are branched on; the others
/// cannot influence any play.
pub(crate) fn enumerate_leaf(
    game: &OpenGame,
    leaf_limit: usize,
    mut emit: impl FnMut(Vec<PlayArrow>),
) -> Result<(), LeafError> {
    let reachable = game.reachable();
    let n = game.positions().len();
    let mut next: Vec<Option<Target>> = (0..n).map(|q| game.successors(q).first().copied()).collect();
    let choosers = |role: Role| -> Vec<usize> {
        (0..n)
            .filter(|&q| reachable[q] && game.positions()[q].role == role && game.successors(q).len() > 1)
            .collect()
    };
    let (ce, ca) = (choosers(Role::Exists), choosers(Role::Forall));
    if ce.len() + ca.len() > leaf_limit {
        return Err(LeafError::LeafTooLarge { choices: ce.len() + ca.len(), limit: leaf_limit });
    }
    let mut walker = Walker::new(n);
    let mut exists = Odometer::new(game, ce.clone());
    while let Some(de) = exists.next() {
        for (&q, &d) in ce.iter().zip(de) {
            next[q] = Some(game.successors(q)[d]);
        }
        let mut forall = Odometer::new(game, ca.clone());
        let mut inner = Vec::new();
        while let Some(da) = forall.next() {
            for (&q, &d) in ca.iter().zip(da) {
                next[q] = Some(game.successors(q)[d]);
            }
            let map = game
                .entrance_targets()
                .iter()
                .map(|&t| walker.denote(game.positions(), t, |q| next[q]))
                .collect();
            inner.push(PlayArrow::new_unchecked(game.exit_count(), map));
        }
        emit(inner);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FatDenotation {
    dom: usize,
    cod: usize,
    sets: BTreeSet<ArrowSet>,
}

impl FatDenotation {
    pub fn new(dom: usize, cod: usize, sets: BTreeSet<ArrowSet>) -> Self {
        debug_assert!(sets.iter().flatten().all(|f| f.dom() == dom && f.cod() == cod));
        FatDenotation { dom, cod, sets }
    }

    pub fn singleton(f: PlayArrow) -> Self {
        let (dom, cod) = (f.dom(), f.cod());
        FatDenotation { dom, cod, sets: BTreeSet::from([BTreeSet::from([f])]) }
    }

    pub fn into_sets(self) -> BTreeSet<ArrowSet> {
        self.sets
    }

    /// Applies a binary play operation to every pair of inner sets.
    fn pairwise(
        &self,
        other: &Self,
        cod: usize,
        op: impl Fn(&PlayArrow, &PlayArrow) -> Result<PlayArrow, PlayError>,
    ) -> Result<Self, PlayError> {
        let mut sets = BTreeSet::new();
        for s in &self.sets {
            for t in &other.sets {
                let mut inner = BTreeSet::new();
                for f in s {
                    for g in t {
                        inner.insert(op(f, g)?);
                    }
                }
                sets.insert(inner);
            }
        }
        Ok(FatDenotation { dom: self.dom, cod, sets })
    }
}

pub fn seq_fat(f: &FatDenotation, g: &FatDenotation) -> Result<FatDenotation, PlayError> {
    if f.cod != g.dom {
        return Err(PlayError::ArityMismatch(f.cod, g.dom));
    }
    f.pairwise(g, g.cod, seq_play)
}

pub fn sum_fat(f: &FatDenotation, g: &FatDenotation) -> FatDenotation {
    let r = f.pairwise(g, f.cod + g.cod, |a, b| Ok(sum_play(a, b))).expect("sum cannot fail");
    FatDenotation { dom: f.dom + g.dom, ..r }
}

pub fn trace_fat(f: &FatDenotation, l: usize) -> Result<FatDenotation, PlayError> {
    if f.dom < l || f.cod < l {
        return Err(PlayError::ArityMismatch(f.dom.min(f.cod), l));
    }
    let sets = f
        .sets
        .iter()
        .map(|s| s.iter().map(|a| trace_play(a, l)).collect::<Result<ArrowSet, _>>())
        .collect::<Result<_, _>>()?;
    Ok(FatDenotation { dom: f.dom - l, cod: f.cod - l, sets })
}

/// Strategy enumeration over the underlying rightward game.
pub fn denote_leaf(game: &OpenGame, leaf_limit: usize) -> Result<FatDenotation, LeafError> {
    let mut sets = BTreeSet::new();
    enumerate_leaf(game, leaf_limit, |inner| {
        sets.insert(inner.into_iter().collect());
    })?;
    Ok(FatDenotation { dom: game.entrance_count(), cod: game.exit_count(), sets })
}

impl Traced for FatDenotation {
    type Error = PlayError;

    fn dom(&self) -> usize {
        self.dom
    }

    fn cod(&self) -> usize {
        self.cod
    }

    fn wiring(cod: usize, wiring: &[usize]) -> Self {
        FatDenotation::singleton(PlayArrow::wiring(cod, wiring))
    }

    fn then(&self, other: &Self) -> Result<Self, PlayError> {
        seq_fat(self, other)
    }

    fn plus(&self, other: &Self) -> Self {
        sum_fat(self, other)
    }

    fn trace(&self, l: usize) -> Result<Self, PlayError> {
        trace_fat(self, l)
    }
}

impl Semantics for FatDenotation {
    fn from_leaf(game: &OpenGame, leaf_limit: usize) -> Result<Self, LeafError> {
        denote_leaf(game, leaf_limit)
    }

    fn from_arrow(f: PlayArrow) -> Self {
        FatDenotation::singleton(f)
    }

    fn sets(&self) -> &BTreeSet<ArrowSet> {
        &self.sets
    }
}

/// Per-entrance denotation straight from the definition: enumerate both
/// players' strategies over all positions and collect the entrance's
/// outcomes. Exponential, used as an oracle.
pub fn entrance_denotation_direct(game: &OpenGame, i: usize) -> BTreeSet<BTreeSet<TValue>> {
    use crate::game::{enumerate_strategies, induced_ropg, play_denotation};
    let alls: Vec<_> = enumerate_strategies(game, Role::Forall).collect();
    enumerate_strategies(game, Role::Exists)
        .map(|se| {
            alls.iter()
                .map(|sa| play_denotation(&induced_ropg(game, &se, sa).expect("own strategies"), i))
                .collect()
        })
        .collect()
}
