//! Traced monoidal structure shared by games and their denotations, and the
//! Int construction that builds bidirectional `;` and `⊕` out of it.

use alloc::vec::Vec;

use crate::game::Arity;

/// A traced symmetric monoidal category whose objects are natural numbers.
pub trait Traced: Sized {
    type Error;

    fn dom(&self) -> usize;
    fn cod(&self) -> usize;

    /// Plain rewiring `dom -> cod`, entrance `i` to exit `wiring[i]`.
    fn wiring(cod: usize, wiring: &[usize]) -> Self;

    fn then(&self, other: &Self) -> Result<Self, Self::Error>;
    fn plus(&self, other: &Self) -> Self;
    fn trace(&self, l: usize) -> Result<Self, Self::Error>;

    fn identity(n: usize) -> Self {
        let w: Vec<usize> = (0..n).collect();
        Self::wiring(n, &w)
    }

    /// The symmetry `a + b -> b + a`.
    fn swap(a: usize, b: usize) -> Self {
        let w: Vec<usize> = (0..a).map(|i| b + i).chain(0..b).collect();
        Self::wiring(a + b, &w)
    }
}

fn pad<T: Traced>(x: &T, n: usize) -> T {
    x.plus(&T::identity(n))
}

fn between<T: Traced>(before: usize, x: &T, after: usize) -> T {
    T::identity(before).plus(x).plus(&T::identity(after))
}

/// `A ; B` of bidirectional arrows `A: m -> l`, `B: l -> n`, each given as
/// its underlying rightward arrow `m_r + l_l -> l_r + m_l`.
pub fn int_seq<T: Traced>(a: &T, m: Arity, l: Arity, b: &T, n: Arity) -> Result<T, T::Error> {
    if l.left == 0 && m.left == 0 && n.left == 0 {
        return a.then(b);
    }
    let body = T::swap(l.left, m.right)
        .plus(&T::identity(n.left))
        .then(&pad(a, n.left))?
        .then(&T::identity(l.right).plus(&T::swap(m.left, n.left)))?
        .then(&pad(b, m.left))?
        .then(&T::swap(n.right, l.left).plus(&T::identity(m.left)))?;
    body.trace(l.left)
}

/// `A ⊕ B` of bidirectional arrows `A: m -> n`, `B: k -> l`. The result goes
/// from `(m_r + k_r, k_l + m_l)` to `(n_r + l_r, l_l + n_l)`.
pub fn int_sum<T: Traced>(a: &T, m: Arity, n: Arity, b: &T, k: Arity, l: Arity) -> Result<T, T::Error> {
    if m.left == 0 && n.left == 0 && k.left == 0 && l.left == 0 {
        return Ok(a.plus(b));
    }
    T::swap(m.right, k.right)
        .plus(&T::swap(l.left, n.left))
        .then(&between(k.right, a, l.left))?
        .then(&T::swap(k.right, n.right).plus(&T::swap(m.left, l.left)))?
        .then(&between(n.right, b, m.left))
}

/// Arity of a bidirectional sum.
pub fn sum_arity(m: Arity, n: Arity, k: Arity, l: Arity) -> (Arity, Arity) {
    (Arity::new(m.right + k.right, k.left + m.left), Arity::new(n.right + l.right, l.left + n.left))
}
