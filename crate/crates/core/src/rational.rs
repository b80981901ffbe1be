//! Exact rationals with an `i64` fast path.
//!
//! Almost every coefficient met in practice is a small integer, so values are
//! kept as `Ratio<i64>` and promoted to big integers only when a checked
//! operation overflows. A value is `Big` only if it does not fit the small
//! representation, so structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone, Debug)]
pub enum Rational {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

impl Rational {
    pub fn zero() -> Self {
        Rational::Small(Ratio::from_integer(0))
    }

    pub fn one() -> Self {
        Rational::Small(Ratio::from_integer(1))
    }

    pub fn from_int(n: i64) -> Self {
        if n == i64::MIN {
            return Rational::Big(Box::new(BigRational::from_integer(BigInt::from(n))));
        }
        Rational::Small(Ratio::from_integer(n))
    }

    /// `numer / denom`, reduced. Panics on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_big(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Rational::Small(Ratio::new_raw(n, d)),
            _ => Rational::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_zero(),
            Rational::Big(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(r) if r.is_one())
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_integer(),
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Rational::Small(r) if r.is_integer() => Some(*r.numer()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if let (Rational::Small(a), Rational::Small(b)) = (self, other) {
            if let Some(c) = a.checked_add(b) {
                return Self::small_checked(c);
            }
        }
        Self::from_big(self.to_big() + other.to_big())
    }

    pub fn sub(&self, other: &Self) -> Self {
        if let (Rational::Small(a), Rational::Small(b)) = (self, other) {
            if let Some(c) = a.checked_sub(b) {
                return Self::small_checked(c);
            }
        }
        Self::from_big(self.to_big() - other.to_big())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let (Rational::Small(a), Rational::Small(b)) = (self, other) {
            if let Some(c) = a.checked_mul(b) {
                return Self::small_checked(c);
            }
        }
        Self::from_big(self.to_big() * other.to_big())
    }

    pub fn neg(&self) -> Self {
        match self {
            Rational::Small(a) => match a.numer().checked_neg() {
                Some(n) => Self::small_checked(Ratio::new_raw(n, *a.denom())),
                None => Self::from_big(-self.to_big()),
            },
            Rational::Big(b) => Self::from_big(-(**b).clone()),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match self {
            Rational::Small(a) => {
                let (n, d) = (*a.numer(), *a.denom());
                if n > 0 {
                    Some(Self::small_checked(Ratio::new_raw(d, n)))
                } else {
                    // n != i64::MIN by the representation invariant
                    Some(Self::small_checked(Ratio::new_raw(-d, -n)))
                }
            }
            Rational::Big(b) => Some(Self::from_big(b.recip())),
        }
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.recip().map(|r| self.mul(&r))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn small_checked(r: Ratio<i64>) -> Self {
        if *r.numer() == i64::MIN || *r.denom() == i64::MIN {
            Self::from_big(BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())))
        } else {
            Rational::Small(r)
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(r) => r.numer().signum() as i32,
            Rational::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small(a), Rational::Small(b)) => a == b,
            (Rational::Big(a), Rational::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rational::Small(r) => {
                0u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
            Rational::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
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

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Self::from_int(n as i64)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Rational::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Self::from_big(BigRational::new(n, d)))
    }
}
