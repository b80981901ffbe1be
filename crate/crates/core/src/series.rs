//! Truncated noncommutative power series.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::par::{self, Terms};
use crate::rational::Rational;
use crate::window::TruncationWindow;
use crate::word::Word;

/// A finitely supported map from words to coefficients, exact on its window.
/// Zero coefficients are never stored.
#[derive(Clone)]
pub struct Series<C: Coefficient = Rational> {
    terms: Terms<C>,
    window: TruncationWindow,
}

impl<C: Coefficient> Series<C> {
    pub fn zero(window: TruncationWindow) -> Self {
        Series { terms: FxHashMap::default(), window }
    }

    pub fn one(window: TruncationWindow) -> Self {
        Self::monomial(Word::empty(), C::one(), window)
    }

    pub fn monomial(word: Word, coeff: C, window: TruncationWindow) -> Self {
        Self::from_terms([(word, coeff)], window)
    }

    /// The single letter `X_k`.
    pub fn letter(k: i32, window: TruncationWindow) -> Self {
        Self::monomial(Word::letter(k), C::one(), window)
    }

    /// Builds a series from terms, summing duplicates and dropping anything the
    /// window does not admit.
    pub fn from_terms(terms: impl IntoIterator<Item = (Word, C)>, window: TruncationWindow) -> Self {
        let mut map: Terms<C> = FxHashMap::default();
        for (w, c) in terms {
            if window.admits(&w) {
                par::accumulate(&mut map, w, c);
            }
        }
        par::prune(&mut map);
        Series { terms: map, window }
    }

    pub(crate) fn from_map(mut terms: Terms<C>, window: TruncationWindow) -> Self {
        par::prune(&mut terms);
        debug_assert!(terms.keys().all(|w| window.admits(w)));
        Series { terms, window }
    }

    pub fn window(&self) -> &TruncationWindow {
        &self.window
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    /// Terms sorted lexicographically by word.
    pub fn sorted_terms(&self) -> Vec<(&Word, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// Exact coefficient of `w`; errors when the window does not certify it.
    pub fn coefficient(&self, w: &Word) -> Result<C> {
        if !self.window.certifies(w) {
            return Err(Error::OutsideWindow(w.clone()));
        }
        Ok(self.terms.get(w).cloned().unwrap_or_else(C::zero))
    }

    pub fn constant_term(&self) -> C {
        self.terms.get(&Word::empty()).cloned().unwrap_or_else(C::zero)
    }

    /// Smallest length carrying a nonzero coefficient, or `L + 1` when the
    /// series vanishes on its window.
    pub fn valuation(&self) -> usize {
        self.terms.keys().map(|w| w.len()).min().unwrap_or(self.window.max_len + 1)
    }

    /// Largest stored word length.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    /// Narrow the certified region; the floor is kept.
    pub fn restrict(&self, window: &TruncationWindow) -> Self {
        let w = TruncationWindow {
            max_len: window.max_len.min(self.window.max_len),
            max_letter: window.max_letter.min(self.window.max_letter),
            min_letter: self.window.min_letter,
        };
        let terms = self.terms.iter().filter(|(word, _)| w.admits(word)).map(|(a, b)| (a.clone(), b.clone())).collect();
        Series { terms, window: w }
    }

    /// Declare a tighter support floor. Errors if a stored word contradicts it.
    pub fn with_floor(&self, floor: i32) -> Result<Self> {
        if let Some((w, _)) = self.terms.iter().find(|(w, _)| w.iter().any(|&k| k < floor)) {
            return Err(Error::InvalidParam(format!("word {w} lies below floor {floor}")));
        }
        let mut out = self.clone();
        out.window.min_letter = floor;
        Ok(out)
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))), self.window)
    }

    pub fn lift<D: Coefficient>(&self) -> Series<D>
    where
        C: Into<D>,
    {
        self.map_coeffs(|c| c.clone().into())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(r))
    }

    pub fn scale_by(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.mul_ref(c))
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn add(&self, other: &Self) -> Self {
        series_linear(&[(Rational::one(), self), (Rational::one(), other)]).expect("nonempty")
    }

    pub fn sub(&self, other: &Self) -> Self {
        series_linear(&[(Rational::one(), self), (Rational::one().neg(), other)]).expect("nonempty")
    }

    pub fn mul(&self, other: &Self) -> Self {
        series_mul(self, other)
    }

    pub fn inverse(&self) -> Result<Self> {
        series_inverse(self)
    }

    pub fn shift(&self, n: i32) -> Self {
        shift(self, n)
    }

    pub fn sign_flip(&self) -> Self {
        sign_flip(self)
    }

    /// First word (shortest, then lexicographic) where the two series differ
    /// on the region both certify, with both coefficients.
    pub fn first_discrepancy(&self, other: &Self) -> Option<(Word, C, C)> {
        let common = self.window.meet(&other.window);
        let mut bad: Vec<&Word> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .filter(|w| common.certifies(w))
            .filter(|w| {
                let a = self.terms.get(*w);
                let b = other.terms.get(*w);
                match (a, b) {
                    (Some(a), Some(b)) => a != b,
                    (None, None) => false,
                    _ => true,
                }
            })
            .collect();
        bad.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        bad.first().map(|w| {
            let a = self.terms.get(*w).cloned().unwrap_or_else(C::zero);
            let b = other.terms.get(*w).cloned().unwrap_or_else(C::zero);
            ((*w).clone(), a, b)
        })
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_discrepancy(other).is_none()
    }

    pub(crate) fn by_length(&self, max_len: usize, max_letter: i32) -> Vec<Vec<(Word, C)>> {
        let mut out = vec![Vec::new(); max_len + 1];
        for (w, c) in &self.terms {
            if w.len() <= max_len && w.iter().all(|&k| k <= max_letter) {
                out[w.len()].push((w.clone(), c.clone()));
            }
        }
        out
    }
}

/// Equality on the region certified by both windows.
impl<C: Coefficient> PartialEq for Series<C> {
    fn eq(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
}

impl<C: Coefficient> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        write!(f, "Series[{}; {} terms]{{", self.window, terms.len())?;
        for (i, (w, c)) in terms.iter().take(24).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}·X{w}")?;
        }
        if terms.len() > 24 {
            write!(f, ", …")?;
        }
        write!(f, "}}")
    }
}

/// Coefficient-wise linear combination over the common window.
pub fn series_linear<C: Coefficient>(terms: &[(Rational, &Series<C>)]) -> Result<Series<C>> {
    let (_, first) = terms.first().ok_or(Error::EmptyCombination)?;
    let window = terms.iter().skip(1).fold(first.window, |w, (_, s)| w.meet(&s.window));
    let mut map: Terms<C> = FxHashMap::default();
    for (r, s) in terms {
        if r.is_zero() {
            continue;
        }
        for (w, c) in &s.terms {
            if window.admits(w) {
                par::accumulate(&mut map, w.clone(), c.scale(r));
            }
        }
    }
    Ok(Series::from_map(map, window))
}

/// Window of a product: letters up to the smaller `K`, lengths up to the
/// point where an uncertified factor could contribute.
fn product_window(a: &Series<impl Coefficient>, b: &Series<impl Coefficient>) -> TruncationWindow {
    let (wa, wb) = (a.window, b.window);
    let max_len = wa.max_len.max(wb.max_len).min(wa.max_len + b.valuation()).min(wb.max_len + a.valuation());
    TruncationWindow {
        max_len,
        max_letter: wa.max_letter.min(wb.max_letter),
        min_letter: wa.min_letter.min(wb.min_letter),
    }
}

/// Cauchy (concatenation) product.
pub fn series_mul<C: Coefficient>(a: &Series<C>, b: &Series<C>) -> Series<C> {
    let window = product_window(a, b);
    let left: Vec<(Word, C)> =
        a.terms.iter().filter(|(w, _)| window.certifies(w)).map(|(w, c)| (w.clone(), c.clone())).collect();
    let right = b.by_length(window.max_len, window.max_letter);
    let map = par::fold_chunks(
        &left,
        par::chunk_for(left.len()),
        FxHashMap::default,
        |mut acc, chunk| {
            for (u, cu) in chunk {
                for bucket in right.iter().take(window.max_len - u.len() + 1) {
                    for (v, cv) in bucket {
                        par::accumulate(&mut acc, u.concat(v), cu.mul_ref(cv));
                    }
                }
            }
            acc
        },
        par::merge,
    );
    Series::from_map(map, window)
}

/// Multiplicative inverse, graded by length:
/// `inv_n = -(1/α) Σ_{j≥1} R_j · inv_{n-j}` with `inv_0 = 1/α`.
pub fn series_inverse<C: Coefficient>(r: &Series<C>) -> Result<Series<C>> {
    let alpha = r.constant_term();
    let alpha_inv = alpha.inverse().ok_or_else(|| Error::NotInvertible(alpha.to_string()))?;
    let window = r.window;
    let max_len = window.max_len;
    let parts = r.by_length(max_len, window.max_letter);
    let minus_alpha_inv = alpha_inv.neg_ref();

    let mut inv: Vec<Vec<(Word, C)>> = vec![vec![(Word::empty(), alpha_inv.clone())]];
    for n in 1..=max_len {
        let mut acc: Terms<C> = FxHashMap::default();
        for j in 1..=n {
            let (rj, prev) = (&parts[j], &inv[n - j]);
            if rj.is_empty() || prev.is_empty() {
                continue;
            }
            let contrib = if rj.len() >= prev.len() {
                par::fold_chunks(
                    rj,
                    par::chunk_for(rj.len()),
                    FxHashMap::default,
                    |mut m, chunk| {
                        for (u, cu) in chunk {
                            for (v, cv) in prev {
                                par::accumulate(&mut m, u.concat(v), cu.mul_ref(cv));
                            }
                        }
                        m
                    },
                    par::merge,
                )
            } else {
                par::fold_chunks(
                    prev,
                    par::chunk_for(prev.len()),
                    FxHashMap::default,
                    |mut m, chunk| {
                        for (v, cv) in chunk {
                            for (u, cu) in rj {
                                par::accumulate(&mut m, u.concat(v), cu.mul_ref(cv));
                            }
                        }
                        m
                    },
                    par::merge,
                )
            };
            acc = par::merge(acc, contrib);
        }
        let level: Vec<(Word, C)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (w, c.mul_ref(&minus_alpha_inv))).collect();
        inv.push(level);
    }
    let map = inv.into_iter().flatten().collect();
    Ok(Series::from_map(map, window))
}

/// `σⁿR`: every letter moves by `n`; the window moves with it.
pub fn shift<C: Coefficient>(r: &Series<C>, n: i32) -> Series<C> {
    let terms = r.terms.iter().map(|(w, c)| (w.shifted(n), c.clone())).collect();
    Series { terms, window: r.window.shifted(n) }
}

/// `R(-X)`: coefficients of odd-length words change sign.
pub fn sign_flip<C: Coefficient>(r: &Series<C>) -> Series<C> {
    let terms =
        r.terms.iter().map(|(w, c)| (w.clone(), if w.len() % 2 == 1 { c.neg_ref() } else { c.clone() })).collect();
    Series { terms, window: r.window }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win(l: usize, k: i32) -> TruncationWindow {
        TruncationWindow::new(l, k)
    }

    fn x(k: i32, w: TruncationWindow) -> Series {
        Series::letter(k, w)
    }

    fn geometric(k: i32, w: TruncationWindow) -> Series {
        Series::from_terms((0..=w.max_len).map(|n| (Word::from(vec![k; n]), Rational::one())), w)
    }

    #[test]
    fn linear_examples() {
        let w = win(3, 4);
        let one = Series::<Rational>::one(w);
        let s = series_linear(&[(Rational::one(), &one), (Rational::one(), &x(1, w))]).unwrap();
        assert_eq!(s.coefficient(&Word::empty()).unwrap(), Rational::one());
        assert_eq!(s.coefficient(&Word::from([1])).unwrap(), Rational::one());
        assert_eq!(s.len(), 2);

        let r = geometric(2, w);
        let zero = series_linear(&[(Rational::one(), &r), (Rational::one().neg(), &r)]).unwrap();
        assert!(zero.is_empty());

        let two = Series::from_terms([(Word::empty(), Rational::from(2)), (Word::from([0]), Rational::from(2))], w);
        let half = series_linear(&[(Rational::new(1, 2), &two)]).unwrap();
        assert_eq!(half, one.add(&x(0, w)));
        assert_eq!(series_linear::<Rational>(&[]).unwrap_err(), Error::EmptyCombination);
    }

    #[test]
    fn mul_examples() {
        let w = win(4, 5);
        assert_eq!(x(1, w).mul(&x(2, w)), Series::monomial(Word::from([1, 2]), Rational::one(), w));
        let ba = x(2, w).mul(&x(1, w));
        assert_eq!(ba.coefficient(&Word::from([2, 1])).unwrap(), Rational::one());
        assert_eq!(ba.coefficient(&Word::from([1, 2])).unwrap(), Rational::zero());
        let one = Series::one(w);
        let p = one.add(&x(1, w)).mul(&one.add(&x(2, w)));
        let expect = Series::from_terms(
            [
                (Word::empty(), Rational::one()),
                (Word::from([1]), Rational::one()),
                (Word::from([2]), Rational::one()),
                (Word::from([1, 2]), Rational::one()),
            ],
            w,
        );
        assert_eq!(p, expect);
    }

    #[test]
    fn product_window_uses_valuation() {
        let long = win(6, 5);
        let short = win(5, 5);
        let a = x(0, long);
        let b = geometric(1, short);
        let p = a.mul(&b);
        assert_eq!(p.window().max_len, 6);
        assert_eq!(p.coefficient(&Word::from([0, 1, 1, 1, 1, 1])).unwrap(), Rational::one());
    }

    #[test]
    fn inverse_examples() {
        let w = win(5, 3);
        let one = Series::<Rational>::one(w);
        let inv = one.sub(&x(1, w)).inverse().unwrap();
        assert_eq!(inv, geometric(1, w));
        let two = Series::from_terms([(Word::empty(), Rational::from(2)), (Word::from([0]), Rational::from(-2))], w);
        assert_eq!(two.inverse().unwrap(), geometric(0, w).scale(&Rational::new(1, 2)));
        let nil = x(1, w);
        assert!(matches!(nil.inverse(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn inverse_matches_geometric_sum() {
        // (1/α) Σ_{n=0}^{L} (1 - R/α)^n, evaluated literally
        let w = win(4, 3);
        let r = Series::from_terms(
            [
                (Word::empty(), Rational::from(3)),
                (Word::from([1]), Rational::from(-1)),
                (Word::from([2, 0]), Rational::new(1, 2)),
                (Word::from([3]), Rational::from(5)),
            ],
            w,
        );
        let alpha_inv = Rational::new(1, 3);
        let base = Series::one(w).sub(&r.scale(&alpha_inv));
        let mut power = Series::one(w);
        let mut sum = Series::zero(w);
        for _ in 0..=w.max_len {
            sum = sum.add(&power);
            power = power.mul(&base);
        }
        assert_eq!(r.inverse().unwrap(), sum.scale(&alpha_inv));
    }

    #[test]
    fn shift_examples() {
        let w = win(3, 4);
        assert_eq!(shift(&x(0, w), 1).coefficient(&Word::from([1])).unwrap(), Rational::one());
        let s = shift(&Series::monomial(Word::from([1, 2]), Rational::one(), w), 2);
        assert_eq!(s.coefficient(&Word::from([3, 4])).unwrap(), Rational::one());
        assert_eq!(*s.window(), TruncationWindow::with_floor(3, 6, 2));
        let neg = shift(&x(0, w), -1);
        assert_eq!(neg.coefficient(&Word::from([-1])).unwrap(), Rational::one());
    }

    #[test]
    fn sign_flip_examples() {
        let w = win(3, 4);
        let even = Series::monomial(Word::from([1, 2]), Rational::one(), w);
        assert_eq!(sign_flip(&even), even);
        assert_eq!(sign_flip(&x(1, w)), x(1, w).neg());
    }

    #[test]
    fn outside_window_is_an_error() {
        let w = win(2, 3);
        let s = x(1, w);
        assert!(matches!(s.coefficient(&Word::from([4])), Err(Error::OutsideWindow(_))));
        assert!(matches!(s.coefficient(&Word::from([1, 1, 1])), Err(Error::OutsideWindow(_))));
        // below the floor is a certified zero
        assert_eq!(s.coefficient(&Word::from([-1])).unwrap(), Rational::zero());
    }
}
