//! Monolithic solvers for closed games: exhaustive strategy enumeration and
//! an energy progress-measure solver.

use alloc::vec;
use alloc::vec::Vec;

use crate::fat::Status;
use crate::game::{enumerate_strategies, induced_ropg, play_denotation, OpenGame, Role, Strategies, Target};
use crate::play::Outcome;

pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("game has {positions} positions, more than the brute-force limit of {limit}")]
    GameTooLargeForBruteForce { positions: usize, limit: usize },
    #[error("game has {0} exits; only closed games can be solved monolithically")]
    NotClosed(usize),
    #[error("solver stopped before reaching a fixpoint")]
    Interrupted,
}

fn require_closed(g: &OpenGame) -> Result<(), OracleError> {
    match g.exit_count() {
        0 => Ok(()),
        n => Err(OracleError::NotClosed(n)),
    }
}

/// Winner of every entrance by trying all strategy pairs.
pub fn brute_force_solve(g: &OpenGame, limit: usize) -> Result<Vec<Status>, OracleError> {
    require_closed(g)?;
    if g.positions().len() > limit {
        return Err(OracleError::GameTooLargeForBruteForce { positions: g.positions().len(), limit });
    }
    let alls: Vec<_> = enumerate_strategies(g, Role::Forall).collect();
    let mut winning = vec![false; g.entrance_count()];
    for se in enumerate_strategies(g, Role::Exists) {
        let pgs: Vec<_> = alls.iter().map(|sa| induced_ropg(g, &se, sa).expect("own strategies")).collect();
        for (i, won) in winning.iter_mut().enumerate() {
            if !*won && pgs.iter().all(|pg| play_denotation(pg, i) == Outcome::WinE) {
                *won = true;
            }
        }
    }
    Ok(winning.into_iter().map(|w| if w { Status::Winning } else { Status::Losing }).collect())
}

/// Number of strategy pairs brute force would enumerate.
pub fn brute_force_cost(g: &OpenGame) -> u128 {
    Strategies::count(g, Role::Exists).saturating_mul(Strategies::count(g, Role::Forall))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgressMeasure {
    pub statuses: Vec<Status>,
    /// Common denominator used to turn weights into integers.
    pub scale: i128,
    /// Measure bound; a position whose measure exceeds it is lost by ∃.
    pub top: i128,
    pub lifts: u64,
}

/// Energy progress-measure lifting on the closed game. A position's measure
/// is the least credit ∃ needs to keep the running energy non-negative
/// forever; ∃ wins exactly where it stays bounded.
///
/// `interrupt` is polled every few thousand lifts; returning `true` aborts.
pub fn progress_measure_solve(
    g: &OpenGame,
    mut interrupt: impl FnMut() -> bool,
) -> Result<ProgressMeasure, OracleError> {
    require_closed(g)?;
    let n = g.positions().len();
    let scale = g
        .positions()
        .iter()
        .fold(1i128, |acc, p| num_integer::lcm(acc, p.weight.denom()));
    let w: Vec<i128> = g.positions().iter().map(|p| p.weight.scaled_integer(scale)).collect();
    let top: i128 = w.iter().filter(|&&x| x < 0).map(|x| -x).sum();
    let inf = top + 1;

    let succ: Vec<Vec<usize>> = (0..n)
        .map(|q| {
            g.successors(q)
                .iter()
                .map(|t| match t {
                    Target::Pos(p) => *p,
                    Target::Exit(_) => unreachable!("closed game"),
                })
                .collect()
        })
        .collect();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (q, ss) in succ.iter().enumerate() {
        for &p in ss {
            preds[p].push(q);
        }
    }
    let exists: Vec<bool> = g.positions().iter().map(|p| p.role == Role::Exists).collect();

    let mut f = vec![0i128; n];
    let lift = |f: &[i128], v: usize| -> i128 {
        let step = |u: usize| if f[u] >= inf { inf } else { (f[u] - w[v]).max(0).min(inf) };
        let vals = succ[v].iter().map(|&u| step(u));
        if exists[v] {
            // A stuck ∃ position is lost outright.
            vals.min().unwrap_or(inf)
        } else {
            vals.max().unwrap_or(0)
        }
    };

    let mut queue: Vec<usize> = (0..n).collect();
    let mut queued = vec![true; n];
    let mut lifts = 0u64;
    while let Some(v) = queue.pop() {
        queued[v] = false;
        let new = lift(&f, v);
        if new <= f[v] {
            continue;
        }
        f[v] = new;
        lifts += 1;
        if lifts % 4096 == 0 && interrupt() {
            return Err(OracleError::Interrupted);
        }
        for &u in &preds[v] {
            if !queued[u] {
                queued[u] = true;
                queue.push(u);
            }
        }
    }
    let statuses = g
        .entrance_targets()
        .iter()
        .map(|t| match t {
            Target::Pos(q) if f[*q] >= inf => Status::Losing,
            Target::Pos(_) => Status::Winning,
            Target::Exit(_) => unreachable!("closed game"),
        })
        .collect();
    Ok(ProgressMeasure { statuses, scale, top, lifts })
}
