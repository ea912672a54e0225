//! The meager semantics: fat denotations pruned to antichains under the
//! dominance order on play arrows.
//!
//! `f <= g` means `f` is at least as good for ∃ as `g` at every entrance.
//! Inner sets keep ∀'s maximal responses, outer sets keep ∃'s minimal
//! strategies under the lifted order `S <= T iff ∀x∈S ∃y∈T. x <= y`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::fat::{enumerate_leaf, ArrowSet, FatDenotation, LeafError, Semantics};
use crate::game::OpenGame;
use crate::play::{seq_play, sum_play, trace_play, Outcome, PlayArrow, PlayError, TValue};
use crate::traced::Traced;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("cannot take extremal elements of an empty set")]
    EmptyInput,
    #[error("arrows of different interfaces are incomparable")]
    ArityMismatch,
}

pub fn leq_value(a: &TValue, b: &TValue) -> bool {
    match (a, b) {
        (Outcome::WinE, _) | (_, Outcome::WinA) => true,
        (Outcome::Exit(i), Outcome::Exit(j)) => i == j,
        (Outcome::Weighted(r, i), Outcome::Weighted(q, j)) => i == j && r >= q,
        _ => false,
    }
}

pub fn leq_play(f: &PlayArrow, g: &PlayArrow) -> Result<bool, OrderError> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(OrderError::ArityMismatch);
    }
    Ok(leq(f, g))
}

fn leq(f: &PlayArrow, g: &PlayArrow) -> bool {
    f.map().iter().zip(g.map()).all(|(a, b)| leq_value(a, b))
}

pub fn lifted_leq(s: &ArrowSet, t: &ArrowSet) -> bool {
    s.iter().all(|x| t.iter().any(|y| leq(x, y)))
}

fn maximal_of(items: impl IntoIterator<Item = PlayArrow>) -> ArrowSet {
    let mut kept: Vec<PlayArrow> = Vec::new();
    for x in items {
        if kept.iter().any(|y| leq(&x, y)) {
            continue;
        }
        kept.retain(|y| !leq(y, &x));
        kept.push(x);
    }
    kept.into_iter().collect()
}

fn minimal_of(items: impl IntoIterator<Item = ArrowSet>) -> BTreeSet<ArrowSet> {
    let mut kept: Vec<ArrowSet> = Vec::new();
    for s in items {
        if kept.iter().any(|t| lifted_leq(t, &s)) {
            continue;
        }
        kept.retain(|t| !lifted_leq(&s, t));
        kept.push(s);
    }
    kept.into_iter().collect()
}

/// The maximal elements of `s`.
pub fn maximal(s: &ArrowSet) -> Result<ArrowSet, OrderError> {
    if s.is_empty() {
        return Err(OrderError::EmptyInput);
    }
    Ok(maximal_of(s.iter().cloned()))
}

/// The minimal elements of `s` under the lifted order.
pub fn minimal(s: &BTreeSet<ArrowSet>) -> Result<BTreeSet<ArrowSet>, OrderError> {
    if s.is_empty() {
        return Err(OrderError::EmptyInput);
    }
    Ok(minimal_of(s.iter().cloned()))
}

pub fn is_antichain(s: &ArrowSet) -> bool {
    s.iter().all(|x| s.iter().all(|y| x == y || !leq(x, y)))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeagerDenotation {
    dom: usize,
    cod: usize,
    sets: BTreeSet<ArrowSet>,
}

impl MeagerDenotation {
    pub fn singleton(f: PlayArrow) -> Self {
        let (dom, cod) = (f.dom(), f.cod());
        MeagerDenotation { dom, cod, sets: BTreeSet::from([BTreeSet::from([f])]) }
    }

    pub fn into_sets(self) -> BTreeSet<ArrowSet> {
        self.sets
    }

    /// Checks that inner sets are antichains and the outer set is an
    /// antichain under the lifted order.
    pub fn is_well_formed(&self) -> bool {
        self.sets.iter().all(|s| !s.is_empty() && is_antichain(s))
            && self.sets.iter().all(|s| self.sets.iter().all(|t| s == t || !lifted_leq(s, t)))
    }

    fn pairwise(
        &self,
        other: &Self,
        dom: usize,
        cod: usize,
        op: impl Fn(&PlayArrow, &PlayArrow) -> Result<PlayArrow, PlayError>,
    ) -> Result<Self, PlayError> {
        let mut outer = Vec::with_capacity(self.sets.len() * other.sets.len());
        for s in &self.sets {
            for t in &other.sets {
                let mut inner = Vec::with_capacity(s.len() * t.len());
                for f in s {
                    for g in t {
                        inner.push(op(f, g)?);
                    }
                }
                outer.push(maximal_of(inner));
            }
        }
        Ok(MeagerDenotation { dom, cod, sets: minimal_of(outer) })
    }
}

pub fn fat_to_meager(f: &FatDenotation) -> MeagerDenotation {
    let sets = minimal_of(f.sets().iter().map(|s| maximal_of(s.iter().cloned())));
    MeagerDenotation { dom: f.dom(), cod: f.cod(), sets }
}

pub fn seq_meager(f: &MeagerDenotation, g: &MeagerDenotation) -> Result<MeagerDenotation, PlayError> {
    if f.cod != g.dom {
        return Err(PlayError::ArityMismatch(f.cod, g.dom));
    }
    f.pairwise(g, f.dom, g.cod, seq_play)
}

pub fn sum_meager(f: &MeagerDenotation, g: &MeagerDenotation) -> MeagerDenotation {
    f.pairwise(g, f.dom + g.dom, f.cod + g.cod, |a, b| Ok(sum_play(a, b))).expect("sum cannot fail")
}

pub fn trace_meager(f: &MeagerDenotation, l: usize) -> Result<MeagerDenotation, PlayError> {
    if f.dom < l || f.cod < l {
        return Err(PlayError::ArityMismatch(f.dom.min(f.cod), l));
    }
    if l == 0 {
        return Ok(f.clone());
    }
    let mut outer = Vec::with_capacity(f.sets.len());
    for s in &f.sets {
        let inner = s.iter().map(|a| trace_play(a, l)).collect::<Result<Vec<_>, _>>()?;
        outer.push(maximal_of(inner));
    }
    Ok(MeagerDenotation { dom: f.dom - l, cod: f.cod - l, sets: minimal_of(outer) })
}

/// Leaf enumeration with ∀-responses pruned per ∃-strategy, then dominated
/// ∃-strategies dropped.
pub fn denote_leaf_meager(game: &OpenGame, leaf_limit: usize) -> Result<MeagerDenotation, LeafError> {
    let mut kept: Vec<ArrowSet> = Vec::new();
    enumerate_leaf(game, leaf_limit, |inner| {
        let s = maximal_of(inner);
        if kept.iter().any(|t| lifted_leq(t, &s)) {
            return;
        }
        kept.retain(|t| !lifted_leq(&s, t));
        kept.push(s);
    })?;
    Ok(MeagerDenotation { dom: game.entrance_count(), cod: game.exit_count(), sets: kept.into_iter().collect() })
}

impl Traced for MeagerDenotation {
    type Error = PlayError;

    fn dom(&self) -> usize {
        self.dom
    }

    fn cod(&self) -> usize {
        self.cod
    }

    fn wiring(cod: usize, wiring: &[usize]) -> Self {
        MeagerDenotation::singleton(PlayArrow::wiring(cod, wiring))
    }

    fn then(&self, other: &Self) -> Result<Self, PlayError> {
        seq_meager(self, other)
    }

    fn plus(&self, other: &Self) -> Self {
        sum_meager(self, other)
    }

    fn trace(&self, l: usize) -> Result<Self, PlayError> {
        trace_meager(self, l)
    }
}

impl Semantics for MeagerDenotation {
    fn from_leaf(game: &OpenGame, leaf_limit: usize) -> Result<Self, LeafError> {
        denote_leaf_meager(game, leaf_limit)
    }

    fn from_arrow(f: PlayArrow) -> Self {
        MeagerDenotation::singleton(f)
    }

    fn sets(&self) -> &BTreeSet<ArrowSet> {
        &self.sets
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fat::{denote_leaf, DEFAULT_LEAF_LIMIT};
    use crate::game::tests::{example_game, w};
    use Outcome::*;

    fn arrow(cod: usize, map: &[TValue]) -> PlayArrow {
        PlayArrow::new(cod, map.to_vec()).unwrap()
    }

    #[test]
    fn order_cases() {
        let f = arrow(2, &[Weighted(w("5"), 0)]);
        let g = arrow(2, &[Weighted(w("3"), 0)]);
        let h = arrow(2, &[Weighted(w("5"), 1)]);
        assert!(leq(&f, &g) && !leq(&g, &f));
        assert!(!leq(&f, &h) && !leq(&h, &f));
        let bottom = arrow(2, &[WinE]);
        let top = arrow(2, &[WinA]);
        for x in [&f, &g, &h, &bottom, &top] {
            assert!(leq(&bottom, x) && leq(x, &top));
        }
        assert_eq!(leq_play(&f, &arrow(1, &[Exit(0)])), Err(OrderError::ArityMismatch));
    }

    #[test]
    fn extremal_elements() {
        let chain = [WinE, Weighted(w("1"), 0), WinA].map(|t| arrow(1, &[t]));
        let s: ArrowSet = chain.iter().cloned().collect();
        assert_eq!(maximal(&s).unwrap(), BTreeSet::from([chain[2].clone()]));
        assert_eq!(maximal(&BTreeSet::new()), Err(OrderError::EmptyInput));

        let low = BTreeSet::from([chain[0].clone()]);
        let high = BTreeSet::from([chain[1].clone()]);
        assert_eq!(minimal(&BTreeSet::from([low.clone(), high])).unwrap(), BTreeSet::from([low]));
    }

    #[test]
    fn example_game_prunes_consistently() {
        let g = example_game();
        let fat = denote_leaf(&g, DEFAULT_LEAF_LIMIT).unwrap();
        let meager = denote_leaf_meager(&g, DEFAULT_LEAF_LIMIT).unwrap();
        assert_eq!(fat_to_meager(&fat), meager);
        assert!(meager.is_well_formed());
        for i in 0..4 {
            assert_eq!(meager.classify(i), fat.classify(i));
        }
        assert_eq!(fat_to_meager(&fat), fat_to_meager(&FatDenotation::new(fat.dom(), fat.cod(), fat_to_meager(&fat).into_sets())));
    }

    #[test]
    fn winning_leaf_collapses_to_bottom() {
        use crate::game::{validate_game, Arity, Port, RawEndpoint, RawGame, Role};
        let g = validate_game(
            &RawGame::new(Arity::rightward(1), Arity::ZERO)
                .position("e", Role::Exists, w("1"))
                .position("z", Role::Exists, w("-1"))
                .edge(RawEndpoint::Port(Port::LhsR(0)), RawEndpoint::Pos("e".into()))
                .edge(RawEndpoint::Pos("e".into()), RawEndpoint::Pos("e".into()))
                .edge(RawEndpoint::Pos("e".into()), RawEndpoint::Pos("z".into()))
                .edge(RawEndpoint::Pos("z".into()), RawEndpoint::Pos("z".into())),
        )
        .unwrap();
        let m = denote_leaf_meager(&g, DEFAULT_LEAF_LIMIT).unwrap();
        assert_eq!(m, MeagerDenotation::singleton(arrow(0, &[WinE])));
    }
}
