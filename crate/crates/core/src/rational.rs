//! Exact rational numbers and the extended values (`Infinity`) that orbifold
//! weights can take.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;

/// A rational number kept in lowest terms with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRational(Ratio<i64>);

impl ExactRational {
    /// Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        ExactRational(Ratio::new(num, den))
    }

    pub fn from_integer(n: i64) -> Self {
        ExactRational(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    pub fn is_integer(&self) -> bool {
        self.denom() == 1
    }

    /// True when the value lies in ½ℤ, i.e. the reduced denominator divides 2.
    pub fn is_half_integer(&self) -> bool {
        self.denom() <= 2
    }

    /// True when the value lies in ½ℤ but not in ℤ.
    pub fn is_strict_half_integer(&self) -> bool {
        self.denom() == 2
    }

    pub fn to_integer(&self) -> Option<i64> {
        self.is_integer().then(|| self.numer())
    }

    pub fn abs(&self) -> Self {
        ExactRational(if self.numer() < 0 { -self.0 } else { self.0 })
    }

    /// `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| ExactRational(self.0.recip()))
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl Add for ExactRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ExactRational(self.0 + rhs.0)
    }
}

impl Sub for ExactRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ExactRational(self.0 - rhs.0)
    }
}

impl Mul for ExactRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        ExactRational(self.0 * rhs.0)
    }
}

impl Neg for ExactRational {
    type Output = Self;
    fn neg(self) -> Self {
        ExactRational(-self.0)
    }
}

impl std::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite rational or the distinguished value `Infinity`, which is what
/// inverting zero produces.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtendedValue {
    Finite(ExactRational),
    Infinity,
}

impl ExtendedValue {
    /// `1 / x`, with `1 / 0 = Infinity`.
    pub fn inverse_of(x: ExactRational) -> Self {
        match x.recip() {
            Some(r) => ExtendedValue::Finite(r),
            None => ExtendedValue::Infinity,
        }
    }

    pub fn finite(&self) -> Option<ExactRational> {
        match self {
            ExtendedValue::Finite(r) => Some(*r),
            ExtendedValue::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedValue::Infinity)
    }

    pub fn is_integer(&self) -> bool {
        self.finite().is_some_and(|r| r.is_integer())
    }

    pub fn is_negative(&self) -> bool {
        self.finite().is_some_and(|r| r.numer() < 0)
    }

    /// Multiplies a finite value by `k`; `Infinity` stays `Infinity`.
    pub fn scale(&self, k: i64) -> Self {
        match self {
            ExtendedValue::Finite(r) => ExtendedValue::Finite(*r * ExactRational::from_integer(k)),
            ExtendedValue::Infinity => ExtendedValue::Infinity,
        }
    }

    pub fn double(&self) -> Self {
        self.scale(2)
    }

    /// Negation with `-Infinity = Infinity` (the projective convention).
    pub fn negate(&self) -> Self {
        match self {
            ExtendedValue::Finite(r) => ExtendedValue::Finite(-*r),
            ExtendedValue::Infinity => ExtendedValue::Infinity,
        }
    }

    /// Integer divisibility up to sign: `self | other`.
    ///
    /// Both sides must be integers; `Infinity` divides nothing and is
    /// divided by nothing finite.
    pub fn divides(&self, other: &ExtendedValue) -> bool {
        match (self.finite().and_then(|r| r.to_integer()), other.finite()) {
            (Some(d), Some(n)) => match n.to_integer() {
                Some(n) => d != 0 && n % d == 0,
                None => false,
            },
            _ => false,
        }
    }
}

impl From<ExactRational> for ExtendedValue {
    fn from(r: ExactRational) -> Self {
        ExtendedValue::Finite(r)
    }
}

impl PartialOrd for ExtendedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => a.partial_cmp(b),
            (ExtendedValue::Infinity, ExtendedValue::Infinity) => Some(Ordering::Equal),
            _ => None,
        }
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(r) => write!(f, "{r}"),
            ExtendedValue::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let r = ExactRational::new(6, -8);
        assert_eq!((r.numer(), r.denom()), (-3, 4));
    }

    #[test]
    fn half_integers() {
        assert!(ExactRational::new(5, 2).is_half_integer());
        assert!(ExactRational::new(5, 2).is_strict_half_integer());
        assert!(ExactRational::new(4, 2).is_half_integer());
        assert!(!ExactRational::new(4, 2).is_strict_half_integer());
        assert!(!ExactRational::new(5, 3).is_half_integer());
    }

    #[test]
    fn inverse_of_zero_is_infinity() {
        assert_eq!(ExtendedValue::inverse_of(ExactRational::zero()), ExtendedValue::Infinity);
        assert_eq!(
            ExtendedValue::inverse_of(ExactRational::new(-1, 4)),
            ExtendedValue::Finite(ExactRational::from_integer(-4))
        );
    }

    #[test]
    fn signed_divisibility() {
        let v = |n| ExtendedValue::Finite(ExactRational::from_integer(n));
        assert!(v(-4).divides(&v(4)));
        assert!(v(4).divides(&v(-8)));
        assert!(!v(6).divides(&v(3)));
        assert!(!ExtendedValue::Infinity.divides(&v(3)));
        assert!(!v(3).divides(&ExtendedValue::Infinity));
        let half = ExtendedValue::Finite(ExactRational::new(5, 2));
        assert!(!half.divides(&v(5)));
        assert!(!v(5).divides(&half));
    }
}
