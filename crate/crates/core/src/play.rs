//! The play-level semantic category: outcomes of single plays, play arrows
//! and their sequential composition, sum and trace.

use alloc::vec;
use alloc::vec::Vec;

use crate::game::{RoPG, Walker};
use crate::weight::Weight;

/// The play monad `T(X) = X + R×X + {W∃, W∀}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome<X> {
    Exit(X),
    Weighted(Weight, X),
    WinE,
    WinA,
}

/// Outcome of one deterministic play: an exit index, a weighted exit index,
/// or a decided winner.
pub type TValue = Outcome<usize>;

impl<X> Outcome<X> {
    pub fn map<Y>(self, f: impl FnOnce(X) -> Y) -> Outcome<Y> {
        match self {
            Outcome::Exit(x) => Outcome::Exit(f(x)),
            Outcome::Weighted(r, x) => Outcome::Weighted(r, f(x)),
            Outcome::WinE => Outcome::WinE,
            Outcome::WinA => Outcome::WinA,
        }
    }

    pub fn target(&self) -> Option<&X> {
        match self {
            Outcome::Exit(x) | Outcome::Weighted(_, x) => Some(x),
            _ => None,
        }
    }

    pub fn is_winner(&self) -> bool {
        matches!(self, Outcome::WinE | Outcome::WinA)
    }
}

pub fn eta<X>(x: X) -> Outcome<X> {
    Outcome::Exit(x)
}

pub fn monad_mult<X>(z: Outcome<Outcome<X>>) -> Outcome<X> {
    match z {
        Outcome::Exit(t) => t,
        Outcome::Weighted(r, Outcome::Exit(x)) => Outcome::Weighted(r, x),
        Outcome::Weighted(r, Outcome::Weighted(q, x)) => Outcome::Weighted(r + q, x),
        Outcome::WinE | Outcome::Weighted(_, Outcome::WinE) => Outcome::WinE,
        Outcome::WinA | Outcome::Weighted(_, Outcome::WinA) => Outcome::WinA,
    }
}

/// Kleisli extension: `bind(t, k) = μ(T k (t))`.
pub fn bind<X, Y>(t: Outcome<X>, k: impl FnOnce(X) -> Outcome<Y>) -> Outcome<Y> {
    monad_mult(t.map(k))
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PlayError {
    #[error("arrow interfaces do not match: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("exit {0} is reached plainly from one entrance and also from another")]
    RealizabilityViolation(usize),
    #[error("trace reached a cycle of loop ports without any weight")]
    NonProductiveCycle,
}

/// An arrow `m -> n` of the play category: one outcome per entrance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayArrow {
    cod: usize,
    map: Vec<TValue>,
}

impl PlayArrow {
    /// Checks exit ranges and realizability.
    pub fn new(cod: usize, map: Vec<TValue>) -> Result<Self, PlayError> {
        let f = PlayArrow { cod, map };
        f.check()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(cod: usize, map: Vec<TValue>) -> Self {
        let f = PlayArrow { cod, map };
        debug_assert_eq!(f.check(), Ok(()));
        f
    }

    pub fn identity(n: usize) -> Self {
        PlayArrow { cod: n, map: (0..n).map(Outcome::Exit).collect() }
    }

    /// Plain rewiring: entrance `i` goes straight to exit `wiring[i]`.
    pub fn wiring(cod: usize, wiring: &[usize]) -> Self {
        Self::new_unchecked(cod, wiring.iter().map(|&j| Outcome::Exit(j)).collect())
    }

    /// The symmetry `a + b -> b + a`.
    pub fn swap(a: usize, b: usize) -> Self {
        let w: Vec<usize> = (0..a).map(|i| b + i).chain(0..b).collect();
        Self::wiring(a + b, &w)
    }

    pub fn dom(&self) -> usize {
        self.map.len()
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn map(&self) -> &[TValue] {
        &self.map
    }

    pub fn at(&self, i: usize) -> TValue {
        self.map[i]
    }

    pub fn check(&self) -> Result<(), PlayError> {
        let mut plain = vec![false; self.cod];
        let mut hits = vec![0usize; self.cod];
        for t in &self.map {
            let (&j, is_plain) = match t {
                Outcome::Exit(j) => (j, true),
                Outcome::Weighted(_, j) => (j, false),
                _ => continue,
            };
            if j >= self.cod {
                return Err(PlayError::ArityMismatch(j, self.cod));
            }
            plain[j] |= is_plain;
            hits[j] += 1;
            if plain[j] && hits[j] > 1 {
                return Err(PlayError::RealizabilityViolation(j));
            }
        }
        Ok(())
    }
}

pub fn seq_play(f: &PlayArrow, g: &PlayArrow) -> Result<PlayArrow, PlayError> {
    if f.cod != g.dom() {
        return Err(PlayError::ArityMismatch(f.cod, g.dom()));
    }
    let map = f
        .map
        .iter()
        .map(|t| match *t {
            Outcome::WinE => Outcome::WinE,
            Outcome::WinA => Outcome::WinA,
            Outcome::Exit(j) => g.map[j],
            Outcome::Weighted(r, j) => match g.map[j] {
                Outcome::WinE => Outcome::WinE,
                Outcome::WinA => Outcome::WinA,
                Outcome::Exit(k) => Outcome::Weighted(r, k),
                Outcome::Weighted(q, k) => Outcome::Weighted(r + q, k),
            },
        })
        .collect();
    Ok(PlayArrow::new_unchecked(g.cod, map))
}

pub fn sum_play(f: &PlayArrow, g: &PlayArrow) -> PlayArrow {
    let n = f.cod;
    let map = f.map.iter().copied().chain(g.map.iter().map(|t| t.map(|j| j + n))).collect();
    PlayArrow::new_unchecked(f.cod + g.cod, map)
}

/// One element of a traced denotation of plays.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TdpStep {
    Start(usize),
    /// Outcome of one application of `f`; exit indices are in `[l + n]`.
    Hit(TValue),
}

/// Result of unfolding the trace from one entrance: a finite sequence, or a
/// lasso whose cycle repeats forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tdp {
    pub loops: usize,
    pub prefix: Vec<TdpStep>,
    pub cycle: Option<Vec<TdpStep>>,
}

/// Unfolds `f` from entrance `l + i`, re-entering at each loop port reached.
pub fn semantic_tdp(f: &PlayArrow, l: usize, i: usize) -> Tdp {
    let mut prefix = vec![TdpStep::Start(i)];
    let mut first_seen = vec![usize::MAX; l];
    let mut t = f.map[l + i];
    loop {
        match t {
            Outcome::Exit(k) | Outcome::Weighted(_, k) if k < l => {
                if first_seen[k] != usize::MAX {
                    // The repeating part is everything emitted since the
                    // first arrival at `k`, closed by this second arrival.
                    let mut cycle = prefix.split_off(first_seen[k]);
                    cycle.push(TdpStep::Hit(t));
                    return Tdp { loops: l, prefix, cycle: Some(cycle) };
                }
                prefix.push(TdpStep::Hit(t));
                first_seen[k] = prefix.len();
                t = f.map[k];
            }
            _ => {
                prefix.push(TdpStep::Hit(t));
                return Tdp { loops: l, prefix, cycle: None };
            }
        }
    }
}

pub fn tdp_denotation(v: &Tdp) -> Result<TValue, PlayError> {
    let l = v.loops;
    if let Some(cycle) = &v.cycle {
        let mut productive = false;
        let mut sum = Weight::ZERO;
        for s in cycle {
            if let TdpStep::Hit(Outcome::Weighted(r, _)) = s {
                productive = true;
                sum += *r;
            }
        }
        if !productive {
            return Err(PlayError::NonProductiveCycle);
        }
        return Ok(if sum.is_negative() { Outcome::WinA } else { Outcome::WinE });
    }
    let mut weighted = false;
    let mut sum = Weight::ZERO;
    for s in &v.prefix {
        if let TdpStep::Hit(Outcome::Weighted(r, _)) = s {
            weighted = true;
            sum += *r;
        }
    }
    Ok(match v.prefix.last() {
        Some(TdpStep::Hit(Outcome::WinE)) => Outcome::WinE,
        Some(TdpStep::Hit(Outcome::WinA)) => Outcome::WinA,
        Some(TdpStep::Hit(t)) => {
            let j = *t.target().expect("terminal step is an exit") - l;
            if weighted {
                Outcome::Weighted(sum, j)
            } else {
                Outcome::Exit(j)
            }
        }
        _ => unreachable!("a TDP always ends with a hit"),
    })
}

/// `tr^l(f)` for `f: l + m -> l + n`.
pub fn trace_play(f: &PlayArrow, l: usize) -> Result<PlayArrow, PlayError> {
    if f.dom() < l || f.cod < l {
        return Err(PlayError::ArityMismatch(f.dom().min(f.cod), l));
    }
    if l == 0 {
        return Ok(f.clone());
    }
    let m = f.dom() - l;
    let mut map = Vec::with_capacity(m);
    let mut first_seen = vec![usize::MAX; l];
    let mut sums: Vec<Weight> = Vec::with_capacity(l);
    let mut visited = Vec::with_capacity(l);
    for i in 0..m {
        let mut sum = Weight::ZERO;
        let mut weighted = false;
        let mut t = f.map[l + i];
        let out = loop {
            let (k, r) = match t {
                Outcome::WinE | Outcome::WinA => break Ok(t),
                Outcome::Exit(k) => (k, None),
                Outcome::Weighted(r, k) => (k, Some(r)),
            };
            if let Some(r) = r {
                sum += r;
                weighted = true;
            }
            if k >= l {
                break Ok(if weighted { Outcome::Weighted(sum, k - l) } else { Outcome::Exit(k - l) });
            }
            if first_seen[k] != usize::MAX {
                let cycle_sum = sum - sums[first_seen[k]];
                // The cycle consists of the hits leaving each port visited
                // since the first arrival at `k`.
                if !cycle_has_weight(f, &visited[first_seen[k]..]) {
                    break Err(PlayError::NonProductiveCycle);
                }
                break Ok(if cycle_sum.is_negative() { Outcome::WinA } else { Outcome::WinE });
            }
            first_seen[k] = visited.len();
            visited.push(k);
            sums.push(sum);
            t = f.map[k];
        };
        for &k in &visited {
            first_seen[k] = usize::MAX;
        }
        visited.clear();
        sums.clear();
        map.push(out?);
    }
    Ok(PlayArrow::new_unchecked(f.cod - l, map))
}

fn cycle_has_weight(f: &PlayArrow, ports: &[usize]) -> bool {
    ports.iter().any(|&k| matches!(f.map[k], Outcome::Weighted(..)))
}

/// The play arrow of a play graph: each entrance's outcome.
pub fn ropg_denotation(pg: &RoPG) -> PlayArrow {
    let g = pg.game();
    let mut walker = Walker::new(g.positions().len());
    let map = g
        .entrance_targets()
        .iter()
        .map(|&t| walker.denote(g.positions(), t, |q| pg.next(q)))
        .collect();
    PlayArrow::new_unchecked(g.exit_count(), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::tests::w;
    use Outcome::*;

    fn arrow(cod: usize, map: &[TValue]) -> PlayArrow {
        PlayArrow::new(cod, map.to_vec()).unwrap()
    }

    #[test]
    fn realizability() {
        assert!(PlayArrow::new(1, vec![Exit(0), Weighted(w("1"), 0)]).is_err());
        assert!(PlayArrow::new(1, vec![Weighted(w("2"), 0), Weighted(w("1"), 0)]).is_ok());
        assert!(PlayArrow::new(1, vec![Exit(1)]).is_err());
    }

    #[test]
    fn seq_cases() {
        let g = arrow(2, &[Weighted(w("3"), 1), WinA, Exit(0)]);
        let f = arrow(3, &[WinE, Weighted(w("2"), 0), Weighted(w("2"), 1), Exit(2)]);
        let fg = seq_play(&f, &g).unwrap();
        assert_eq!(fg.map(), &[WinE, Weighted(w("5"), 1), WinA, Exit(0)]);
        assert_eq!(seq_play(&f, &PlayArrow::identity(3)).unwrap(), f);
    }

    #[test]
    fn sum_shifts_second_operand() {
        let f = arrow(1, &[Exit(0)]);
        let g = arrow(2, &[Weighted(w("1"), 1), WinA]);
        assert_eq!(sum_play(&f, &g).map(), &[Exit(0), Weighted(w("1"), 2), WinA]);
        assert_eq!(sum_play(&f, &PlayArrow::identity(0)), f);
    }

    #[test]
    fn tdp_examples() {
        // l = 1, entrance 0 of the traced arrow is index 1 of f.
        let f = arrow(2, &[Weighted(w("2.5"), 1), Weighted(w("1"), 0)]);
        let v = semantic_tdp(&f, 1, 0);
        assert_eq!(v.prefix, vec![TdpStep::Start(0), TdpStep::Hit(Weighted(w("1"), 0)), TdpStep::Hit(Weighted(w("2.5"), 1))]);
        assert_eq!(tdp_denotation(&v), Ok(Weighted(w("3.5"), 0)));
        assert_eq!(trace_play(&f, 1).unwrap().map(), &[Weighted(w("3.5"), 0)]);

        let f = arrow(2, &[Weighted(w("-1"), 0), Weighted(w("-1"), 0)]);
        let v = semantic_tdp(&f, 1, 0);
        assert_eq!(v.prefix, vec![TdpStep::Start(0), TdpStep::Hit(Weighted(w("-1"), 0))]);
        assert_eq!(v.cycle, Some(vec![TdpStep::Hit(Weighted(w("-1"), 0))]));
        assert_eq!(tdp_denotation(&v), Ok(WinA));
        assert_eq!(trace_play(&f, 1).unwrap().map(), &[WinA]);

        // Weight collected on the way in does not count towards the cycle.
        let f = arrow(2, &[Weighted(w("1"), 0), Weighted(w("-5"), 0)]);
        let v = semantic_tdp(&f, 1, 0);
        assert_eq!(v.cycle, Some(vec![TdpStep::Hit(Weighted(w("1"), 0))]));
        assert_eq!(tdp_denotation(&v), Ok(WinE));
        assert_eq!(trace_play(&f, 1).unwrap().map(), &[WinE]);

        let f = arrow(2, &[Weighted(w("0"), 0), Weighted(w("-7"), 0)]);
        assert_eq!(trace_play(&f, 1).unwrap().map(), &[WinE]);

        let f = arrow(2, &[Exit(1), Exit(0)]);
        assert_eq!(tdp_denotation(&semantic_tdp(&f, 0, 1)), Ok(Exit(0)));
        assert_eq!(trace_play(&f, 1).unwrap(), PlayArrow::identity(1));
    }

    #[test]
    fn plain_cycle_is_reported() {
        // Not realizable: loop port 0 is hit plainly from two entrances.
        let f = PlayArrow { cod: 2, map: vec![Exit(0), Exit(0)] };
        assert_eq!(trace_play(&f, 1), Err(PlayError::NonProductiveCycle));
        assert_eq!(tdp_denotation(&semantic_tdp(&f, 1, 0)), Err(PlayError::NonProductiveCycle));
    }

    #[test]
    fn monad_table() {
        let z: Outcome<Outcome<u8>> = Weighted(w("2"), Weighted(w("3"), 7));
        assert_eq!(monad_mult(z), Weighted(w("5"), 7));
        assert_eq!(monad_mult::<u8>(Weighted(w("2"), WinA)), WinA);
        assert_eq!(monad_mult::<u8>(WinE), WinE);
        assert_eq!(monad_mult(Exit(Weighted(w("1"), 3u8))), Weighted(w("1"), 3));
    }
}
