//! Exact rational weights.
//!
//! Winner classification is a sign test on cycle sums, so every weight and
//! every accumulated sum is kept as an exact fraction.

use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Neg, Sub};
use core::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedSub, Signed, Zero};

/// An exact rational weight.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(Ratio<i128>);

/// Failure to read a weight literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseWeightError(pub alloc::string::String);

impl Weight {
    pub const ZERO: Weight = Weight(Ratio::new_raw(0, 1));

    pub fn new(numer: i128, denom: i128) -> Self {
        assert!(denom != 0, "zero denominator");
        Weight(Ratio::new(numer, denom))
    }

    pub fn from_int(v: i64) -> Self {
        Weight(Ratio::from_integer(v as i128))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn abs(&self) -> Self {
        Weight(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// True when the value has a terminating decimal expansion.
    pub fn is_decimal(&self) -> bool {
        let mut d = self.denom();
        while d % 2 == 0 {
            d /= 2;
        }
        while d % 5 == 0 {
            d /= 5;
        }
        d == 1
    }

    /// `self * factor` as an integer; `factor` must clear the denominator.
    pub fn scaled_integer(&self, factor: i128) -> i128 {
        let (q, r) = (self.numer() * factor).div_rem(&self.denom());
        debug_assert_eq!(r, 0, "scale factor does not clear the denominator");
        q
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integers print bare, terminating decimals print in decimal notation and
/// everything else as `n/d`. The output always parses back to the same value.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = (self.numer(), self.denom());
        if d == 1 {
            return write!(f, "{n}");
        }
        if !self.is_decimal() {
            return write!(f, "{n}/{d}");
        }
        let mut scale: i128 = 1;
        let mut digits = 0usize;
        while scale % d != 0 {
            scale *= 10;
            digits += 1;
        }
        let scaled = n.abs() * (scale / d);
        let sign = if n < 0 { "-" } else { "" };
        write!(
            f,
            "{sign}{}.{:0width$}",
            scaled / scale,
            scaled % scale,
            width = digits
        )
    }
}

impl FromStr for Weight {
    type Err = ParseWeightError;

    /// Accepts `-12`, `3.25`, `-7/4` and `+1.5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseWeightError(s.into());
        let (neg, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        let value = if let Some((n, d)) = body.split_once('/') {
            if !digits(n) || !digits(d) {
                return Err(err());
            }
            let n: i128 = n.parse().map_err(|_| err())?;
            let d: i128 = d.parse().map_err(|_| err())?;
            if d == 0 {
                return Err(err());
            }
            Ratio::new(n, d)
        } else if let Some((int, frac)) = body.split_once('.') {
            if !digits(int) || !digits(frac) || frac.len() > 30 {
                return Err(err());
            }
            let scale = 10i128.checked_pow(frac.len() as u32).ok_or_else(err)?;
            let i: i128 = int.parse().map_err(|_| err())?;
            let fr: i128 = frac.parse().map_err(|_| err())?;
            let n = i
                .checked_mul(scale)
                .and_then(|v| v.checked_add(fr))
                .ok_or_else(err)?;
            Ratio::new(n, scale)
        } else {
            if !digits(body) {
                return Err(err());
            }
            Ratio::from_integer(body.parse().map_err(|_| err())?)
        };
        Ok(Weight(if neg { -value } else { value }))
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        if self.denom() == 1 && rhs.denom() == 1 {
            let n = self.numer().checked_add(rhs.numer()).expect("weight overflow");
            return Weight(Ratio::from_integer(n));
        }
        Weight(self.0.checked_add(&rhs.0).expect("weight overflow"))
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        *self = *self + rhs;
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight(self.0.checked_sub(&rhs.0).expect("weight overflow"))
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(-self.0)
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, Add::add)
    }
}

impl From<i64> for Weight {
    fn from(v: i64) -> Self {
        Weight::from_int(v)
    }
}
