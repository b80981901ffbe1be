//! Coefficient rings: exact rationals, and polynomials in one marker `t`.

use std::fmt;

use crate::rational::Rational;

/// The scalar ring a series is taken over.
pub trait Coefficient: Clone + Eq + std::hash::Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// Inverse of a unit, `None` otherwise.
    fn inverse(&self) -> Option<Self>;
    fn to_tpoly(&self) -> TPoly;

    fn add_product(&mut self, a: &Self, b: &Self) {
        self.add_assign_ref(&a.mul_ref(b));
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Rational::zero()
    }

    fn one() -> Self {
        Rational::one()
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = Rational::add(self, other);
    }

    fn mul_ref(&self, other: &Self) -> Self {
        Rational::mul(self, other)
    }

    fn neg_ref(&self) -> Self {
        Rational::neg(self)
    }

    fn scale(&self, r: &Rational) -> Self {
        Rational::mul(self, r)
    }

    fn inverse(&self) -> Option<Self> {
        self.recip()
    }

    fn to_tpoly(&self) -> TPoly {
        TPoly::constant(self.clone())
    }

    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
}

/// Dense polynomial in `t` with rational coefficients, lowest degree first.
/// Trailing zeros are trimmed; the zero polynomial is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TPoly(Vec<Rational>);

impl TPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The marker `t` itself.
    pub fn t() -> Self {
        TPoly(vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn coeff(&self, deg: usize) -> Rational {
        self.0.get(deg).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(&other.neg_ref());
        out
    }
}

impl Coefficient for TPoly {
    fn zero() -> Self {
        TPoly(Vec::new())
    }

    fn one() -> Self {
        TPoly(vec![Rational::one()])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn from_rational(r: Rational) -> Self {
        Self::constant(r)
    }

    fn add_assign_ref(&mut self, other: &Self) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), Rational::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = a.add(b);
        }
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return TPoly(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    fn neg_ref(&self) -> Self {
        TPoly(self.0.iter().map(Rational::neg).collect())
    }

    fn scale(&self, r: &Rational) -> Self {
        Self::new(self.0.iter().map(|c| c.mul(r)).collect())
    }

    fn inverse(&self) -> Option<Self> {
        match self.0.as_slice() {
            [c] => c.recip().map(Self::constant),
            _ => None,
        }
    }

    fn to_tpoly(&self) -> TPoly {
        self.clone()
    }
}

impl From<Rational> for TPoly {
    fn from(r: Rational) -> Self {
        TPoly::constant(r)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let power = if d == 1 { "t".to_string() } else { format!("t^{d}") };
            match d {
                0 => write!(f, "{c}")?,
                _ if c.is_one() => write!(f, "{power}")?,
                _ => write!(f, "{c}*{power}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tpoly_arithmetic() {
        let a = TPoly::new(vec![Rational::one(), Rational::one()]); // 1 + t
        let b = a.mul_ref(&a);
        assert_eq!(b, TPoly::new(vec![1.into(), 2.into(), 1.into()]));
        assert!(a.sub(&a).is_zero());
        assert_eq!(TPoly::constant(Rational::new(1, 2)).inverse(), Some(TPoly::constant(2.into())));
        assert_eq!(a.inverse(), None);
        assert_eq!(TPoly::t().degree(), Some(1));
    }
}
