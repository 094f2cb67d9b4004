//! Exact first-order jets `a + b·ε` over the rationals.
//!
//! `ε` is a positive formal infinitesimal, smaller than every positive
//! rational. The induced total order is lexicographic on `(a, b)`, which is the
//! limit order as `ε → 0⁺`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Exact rational number used throughout the combinatorial layers.
pub type Rational = Ratio<i64>;

/// Shorthand for constructing a [`Rational`].
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The value `a + b·ε`.
///
/// Equality, hashing and ordering ignore the truncation flag.
#[derive(Debug, Clone, Copy)]
pub struct FormalScalar {
    /// Standard part.
    pub a: Rational,
    /// Coefficient of the infinitesimal.
    pub b: Rational,
    /// Set when a product discarded an `ε²` term.
    pub truncated: bool,
}

impl FormalScalar {
    /// Builds `a + b·ε`.
    pub fn new(a: Rational, b: Rational) -> Self {
        Self {
            a,
            b,
            truncated: false,
        }
    }

    /// A purely standard value.
    pub fn real(a: Rational) -> Self {
        Self::new(a, Rational::zero())
    }

    /// The infinitesimal `ε` itself.
    pub fn epsilon() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    /// Formal floor: the largest integer not exceeding the value.
    pub fn floor(&self) -> i64 {
        let fl = self.a.floor().to_integer();
        if self.a.is_integer() && self.b.is_negative() {
            fl - 1
        } else {
            fl
        }
    }

    /// Formal ceiling: the smallest integer not below the value.
    pub fn ceil(&self) -> i64 {
        let ce = self.a.ceil().to_integer();
        if self.a.is_integer() && self.b.is_positive() {
            ce + 1
        } else {
            ce
        }
    }

    /// True when the value equals an integer exactly (`b = 0`, `a ∈ ℤ`).
    pub fn is_integer(&self) -> bool {
        self.a.is_integer() && self.b.is_zero()
    }

    /// Multiplies by a rational without truncation.
    pub fn scale(&self, r: Rational) -> Self {
        Self {
            a: self.a * r,
            b: self.b * r,
            truncated: self.truncated,
        }
    }
}

impl Default for FormalScalar {
    fn default() -> Self {
        Self::real(Rational::zero())
    }
}

impl PartialEq for FormalScalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl Eq for FormalScalar {}

impl Hash for FormalScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

impl PartialOrd for FormalScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FormalScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.a.cmp(&other.a).then(self.b.cmp(&other.b))
    }
}

impl Add for FormalScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            truncated: self.truncated || rhs.truncated,
        }
    }
}

impl Sub for FormalScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FormalScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            truncated: self.truncated,
        }
    }
}

impl Mul for FormalScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let dropped = !(self.b * rhs.b).is_zero();
        Self {
            a: self.a * rhs.a,
            b: self.a * rhs.b + self.b * rhs.a,
            truncated: self.truncated || rhs.truncated || dropped,
        }
    }
}

impl From<Rational> for FormalScalar {
    fn from(a: Rational) -> Self {
        Self::real(a)
    }
}

impl fmt::Display for FormalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{} {sign} {}·eps",
            format_rational(&self.a),
            format_rational(&self.b.abs())
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fs(a: (i64, i64), b: (i64, i64)) -> FormalScalar {
        FormalScalar::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn floor_and_ceil_at_integers() {
        assert_eq!(fs((2, 1), (1, 1)).floor(), 2);
        assert_eq!(fs((2, 1), (1, 1)).ceil(), 3);
        assert_eq!(fs((2, 1), (-1, 1)).floor(), 1);
        assert_eq!(fs((2, 1), (-1, 1)).ceil(), 2);
        assert_eq!(fs((2, 1), (0, 1)).floor(), 2);
        assert_eq!(fs((2, 1), (0, 1)).ceil(), 2);
    }

    #[test]
    fn floor_and_ceil_off_integers() {
        assert_eq!(fs((7, 3), (-5, 1)).floor(), 2);
        assert_eq!(fs((7, 3), (-5, 1)).ceil(), 3);
        assert_eq!(fs((-1, 2), (1, 1)).floor(), -1);
    }

    #[test]
    fn order_is_lexicographic() {
        assert!(fs((1, 1), (100, 1)) < fs((2, 1), (-100, 1)));
        assert!(fs((1, 1), (-1, 1)) < fs((1, 1), (0, 1)));
        assert!(FormalScalar::epsilon() > FormalScalar::default());
    }

    #[test]
    fn product_truncates_and_flags() {
        let e = FormalScalar::epsilon();
        let p = e * e;
        assert!(p.truncated);
        assert_eq!(p, FormalScalar::default());
        let q = fs((2, 1), (0, 1)) * fs((3, 1), (1, 1));
        assert!(!q.truncated);
        assert_eq!(q, fs((6, 1), (2, 1)));
    }

    #[test]
    fn display_renders_fractions() {
        assert_eq!(fs((5, 3), (-1, 2)).to_string(), "5/3 - 1/2·eps");
        assert_eq!(fs((2, 1), (0, 1)).to_string(), "2 + 0·eps");
    }

    proptest! {
        #[test]
        fn floor_ceil_bracket_value(an in -50i64..50, ad in 1i64..12, bn in -5i64..5) {
            let x = fs((an, ad), (bn, 1));
            let fl = x.floor();
            let ce = x.ceil();
            prop_assert!(FormalScalar::real(rat(fl, 1)) <= x);
            prop_assert!(FormalScalar::real(rat(ce, 1)) >= x);
            prop_assert!(ce - fl <= 1);
            prop_assert_eq!(ce == fl, x.is_integer());
        }

        #[test]
        fn addition_respects_order(a1 in -20i64..20, b1 in -5i64..5, a2 in -20i64..20, b2 in -5i64..5, c in -20i64..20, d in -5i64..5) {
            let x = fs((a1, 3), (b1, 1));
            let y = fs((a2, 3), (b2, 1));
            let z = fs((c, 7), (d, 1));
            prop_assert_eq!(x.cmp(&y), (x + z).cmp(&(y + z)));
        }
    }
}
