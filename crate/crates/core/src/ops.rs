//! Game-level composition: sequential composition, sum and trace of
//! rightward games, the bidirectional operations built from them, and the
//! constant games.
//!
//! Positions of composites are the disjoint union of the operands' positions,
//! first operand first. Labels are carried over unchanged; a position is
//! identified by its index.

use alloc::vec::Vec;

use crate::diagram::ConstKind;
use crate::game::{Arity, OpenGame, Target};
use crate::traced::{int_seq, int_sum, sum_arity, Traced};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OpError {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: Arity, found: Arity },
    #[error("operation needs a purely rightward game")]
    NotRightward,
}

fn mismatch(expected: usize, found: usize) -> OpError {
    OpError::ArityMismatch { expected: Arity::rightward(expected), found: Arity::rightward(found) }
}

fn push_unique(list: &mut Vec<Target>, t: Target) {
    if !list.contains(&t) {
        list.push(t);
    }
}

/// `A ; B` on the underlying rightward games.
fn seq_underlying(a: &OpenGame, b: &OpenGame) -> Result<OpenGame, OpError> {
    if a.exit_count() != b.entrance_count() {
        return Err(mismatch(a.exit_count(), b.entrance_count()));
    }
    let shift = a.positions().len();
    // An exit of A continues wherever B's matching entrance leads.
    let through = |t: Target| match t {
        Target::Exit(j) => b.entrance_target(j).shift(0, shift),
        Target::Pos(q) => Target::Pos(q),
    };
    let entrances = a.entrance_targets().iter().map(|&t| through(t)).collect();
    let mut succ = Vec::with_capacity(shift + b.positions().len());
    for q in 0..shift {
        let mut list = Vec::with_capacity(a.successors(q).len());
        for &t in a.successors(q) {
            push_unique(&mut list, through(t));
        }
        succ.push(list);
    }
    for q in 0..b.positions().len() {
        succ.push(b.successors(q).iter().map(|t| t.shift(0, shift)).collect());
    }
    let positions = a.positions().iter().chain(b.positions()).cloned().collect();
    Ok(OpenGame::from_parts(
        Arity::rightward(a.entrance_count()),
        Arity::rightward(b.exit_count()),
        positions,
        entrances,
        succ,
    ))
}

fn sum_underlying(a: &OpenGame, b: &OpenGame) -> OpenGame {
    let (n, shift) = (a.exit_count(), a.positions().len());
    let entrances = a
        .entrance_targets()
        .iter()
        .copied()
        .chain(b.entrance_targets().iter().map(|t| t.shift(n, shift)))
        .collect();
    let succ = (0..shift)
        .map(|q| a.successors(q).to_vec())
        .chain((0..b.positions().len()).map(|q| b.successors(q).iter().map(|t| t.shift(n, shift)).collect()))
        .collect();
    let positions = a.positions().iter().chain(b.positions()).cloned().collect();
    OpenGame::from_parts(
        Arity::rightward(a.entrance_count() + b.entrance_count()),
        Arity::rightward(n + b.exit_count()),
        positions,
        entrances,
        succ,
    )
}

fn trace_underlying(a: &OpenGame, l: usize) -> Result<OpenGame, OpError> {
    if a.entrance_count() < l || a.exit_count() < l {
        return Err(mismatch(l, a.entrance_count().min(a.exit_count())));
    }
    // Follow a chain of loop ends; a chain revisiting a loop end is a pure
    // wire cycle and yields no edge.
    let resolve = |mut t: Target| -> Option<Target> {
        for _ in 0..=l {
            match t {
                Target::Exit(k) if k < l => t = a.entrance_target(k),
                Target::Exit(j) => return Some(Target::Exit(j - l)),
                Target::Pos(q) => return Some(Target::Pos(q)),
            }
        }
        None
    };
    let entrances = a.entrance_targets()[l..]
        .iter()
        .map(|&t| resolve(t).expect("an entrance chain cannot close on itself"))
        .collect();
    let succ = (0..a.positions().len())
        .map(|q| {
            let mut list = Vec::new();
            for &t in a.successors(q) {
                if let Some(r) = resolve(t) {
                    push_unique(&mut list, r);
                }
            }
            list
        })
        .collect();
    Ok(OpenGame::from_parts(
        Arity::rightward(a.entrance_count() - l),
        Arity::rightward(a.exit_count() - l),
        a.positions().to_vec(),
        entrances,
        succ,
    ))
}

/// Games under their underlying rightward reading form a traced category.
impl Traced for OpenGame {
    type Error = OpError;

    fn dom(&self) -> usize {
        self.entrance_count()
    }

    fn cod(&self) -> usize {
        self.exit_count()
    }

    fn wiring(cod: usize, wiring: &[usize]) -> Self {
        OpenGame::wires(Arity::rightward(wiring.len()), Arity::rightward(cod), wiring)
    }

    fn then(&self, other: &Self) -> Result<Self, OpError> {
        seq_underlying(self, other)
    }

    fn plus(&self, other: &Self) -> Self {
        sum_underlying(self, other)
    }

    fn trace(&self, l: usize) -> Result<Self, OpError> {
        trace_underlying(self, l)
    }
}

fn require_rightward(g: &OpenGame) -> Result<(), OpError> {
    if g.is_rightward() {
        Ok(())
    } else {
        Err(OpError::NotRightward)
    }
}

pub fn seq_rightward(a: &OpenGame, b: &OpenGame) -> Result<OpenGame, OpError> {
    require_rightward(a)?;
    require_rightward(b)?;
    seq_underlying(a, b)
}

pub fn sum_games(a: &OpenGame, b: &OpenGame) -> Result<OpenGame, OpError> {
    require_rightward(a)?;
    require_rightward(b)?;
    Ok(sum_underlying(a, b))
}

/// `tr^l(A)` for a rightward `A: l + m -> l + n`.
pub fn trace_game(a: &OpenGame, l: usize) -> Result<OpenGame, OpError> {
    require_rightward(a)?;
    trace_underlying(a, l)
}

pub fn seq_bidirectional(a: &OpenGame, b: &OpenGame) -> Result<OpenGame, OpError> {
    if a.right() != b.left() {
        return Err(OpError::ArityMismatch { expected: a.right(), found: b.left() });
    }
    let g = int_seq(a, a.left(), a.right(), b, b.right())?;
    Ok(g.with_arities(a.left(), b.right()))
}

pub fn sum_bidirectional(a: &OpenGame, b: &OpenGame) -> Result<OpenGame, OpError> {
    let g = int_sum(a, a.left(), a.right(), b, b.left(), b.right())?;
    let (left, right) = sum_arity(a.left(), a.right(), b.left(), b.right());
    Ok(g.with_arities(left, right))
}

/// The position-free game of a constant. Every constant is a bijection
/// between its single-wire entrances and exits.
pub fn constant_game(kind: ConstKind) -> OpenGame {
    let (left, right) = kind.arity();
    OpenGame::wires(left, right, kind.wiring())
}
