//! Exact rationals with a machine-word fast path.
//!
//! Values that fit in `Ratio<i64>` stay there; any operation that would
//! overflow is redone in arbitrary precision. The representation is kept
//! canonical (a `Big` value never fits in `Small`), so equality is structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rational {
    pub fn zero() -> Self {
        Rational::Small(Ratio::from_integer(0))
    }

    pub fn one() -> Self {
        Rational::Small(Ratio::from_integer(1))
    }

    pub fn from_int(x: i64) -> Self {
        Rational::Small(Ratio::from_integer(x))
    }

    pub fn from_bigint(x: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(x))
    }

    /// `numer / denom`; panics on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Self {
        Rational::Small(Ratio::new(numer, denom))
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => {
                Rational::Small(Ratio::new_raw(n, d))
            }
            _ => Rational::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_zero(),
            Rational::Big(r) => r.is_zero(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_integer(),
            Rational::Big(r) => r.is_integer(),
        }
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(r) => r.numer().signum() as i32,
            Rational::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(r) => BigInt::from(*r.numer()),
            Rational::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(r) => BigInt::from(*r.denom()),
            Rational::Big(r) => r.denom().clone(),
        }
    }

    pub fn recip(&self) -> Self {
        Rational::one() / self
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(x: i64) -> Self {
        Rational::from_int(x)
    }
}

impl From<BigInt> for Rational {
    fn from(x: BigInt) -> Self {
        Rational::from_bigint(x)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                if let (Rational::Small(a), Rational::Small(b)) = (self, rhs) {
                    if let Some(r) = a.$checked(b) {
                        if *r.numer() != i64::MIN && *r.denom() != i64::MIN {
                            return Rational::Small(r);
                        }
                    }
                }
                Rational::from_big(self.to_big().$method(rhs.to_big()))
            }
        }

        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(r) => Rational::Small(-*r),
            Rational::Big(r) => Rational::from_big(-r.clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a), Rational::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(r) => write!(f, "{r}"),
            Rational::Big(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::one()
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_int(i64::MAX);
        let sum = &big + &big;
        assert!(matches!(sum, Rational::Big(_)));
        let back = &sum - &big;
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(_)));
    }

    #[test]
    fn mixed_arithmetic() {
        let a = Rational::new(1, 3);
        let b = Rational::new(1, 6);
        assert_eq!(&a + &b, Rational::new(1, 2));
        assert_eq!(&a / &b, Rational::from_int(2));
        assert_eq!((-&a).signum(), -1);
        assert!(Rational::new(4, 2).is_integer());
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(
            an in -1_000_000_000_000i64..1_000_000_000_000, ad in 1i64..1_000_000_000,
            bn in -1_000_000_000_000i64..1_000_000_000_000, bd in 1i64..1_000_000_000,
        ) {
            let a = Rational::new(an, ad);
            let b = Rational::new(bn, bd);
            let (ba, bb) = (a.to_big(), b.to_big());
            prop_assert_eq!((&a + &b).to_big(), &ba + &bb);
            prop_assert_eq!((&a - &b).to_big(), &ba - &bb);
            prop_assert_eq!((&a * &b).to_big(), &ba * &bb);
            if !b.is_zero() {
                prop_assert_eq!((&a / &b).to_big(), &ba / &bb);
            }
            prop_assert_eq!(a.cmp(&b), ba.cmp(&bb));
        }
    }
}
