//! Partition and composition languages, linked languages and K-duality.
//!
//! Every language is materialized by enumerating the words that satisfy its
//! defining constraint on a window; algebraic descriptions such as
//! `𝒞 = (1 − Σ₁)⁻¹` are only used as cross-checks.

use std::fmt;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::par;
use crate::rational::Rational;
use crate::series::{series_inverse, sign_flip, Series};
use crate::setspec::SetSpec;
use crate::window::TruncationWindow;
use crate::word::Word;

/// Allowed adjacent pairs `(a, b)` of a linked language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkRule {
    All,
    /// `b ≤ a`.
    WeaklyDecreasing,
    /// `b > a`.
    StrictlyIncreasing,
    /// `b − a ≥ m`.
    RiseAtLeast(i64),
    /// `b − a ≤ m`.
    RiseAtMost(i64),
    /// `b − a ∈ S`.
    RiseIn(SetSpec),
    /// `b = a`.
    Equal,
}

impl LinkRule {
    fn holds(&self, a: i64, b: i64) -> bool {
        match self {
            LinkRule::All => true,
            LinkRule::WeaklyDecreasing => b <= a,
            LinkRule::StrictlyIncreasing => b > a,
            LinkRule::RiseAtLeast(m) => b - a >= *m,
            LinkRule::RiseAtMost(m) => b - a <= *m,
            LinkRule::RiseIn(s) => s.contains(b - a),
            LinkRule::Equal => a == b,
        }
    }
}

/// `1 + Σ_W + L_B` for an alphabet `W ⊆ ℕ₊` and links `B ⊆ W × W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkedLanguage {
    pub alphabet: SetSpec,
    pub rule: LinkRule,
    /// Use the complement of `rule` as the link set.
    pub complemented: bool,
}

impl LinkedLanguage {
    pub fn new(alphabet: SetSpec, rule: LinkRule) -> Result<Self> {
        alphabet.require_natural(true)?;
        Ok(LinkedLanguage { alphabet, rule, complemented: false })
    }

    pub fn links(&self, a: i64, b: i64) -> bool {
        self.rule.holds(a, b) != self.complemented
    }

    /// The K-dual: same alphabet, complementary links.
    pub fn dual(&self) -> Self {
        LinkedLanguage { complemented: !self.complemented, ..self.clone() }
    }

    pub fn accepts(&self, w: &[i32]) -> bool {
        w.iter().all(|&k| self.alphabet.contains(k.into()))
            && w.windows(2).all(|p| self.links(p[0].into(), p[1].into()))
    }

    /// All accepted words on the window, each with coefficient 1.
    pub fn realize(&self, window: &TruncationWindow) -> Series {
        let lo = i64::from(window.min_letter.max(1));
        let letters: Vec<i32> =
            self.alphabet.members_between(lo, window.max_letter.into()).into_iter().map(|k| k as i32).collect();
        let mut firsts: Vec<Vec<Word>> = par::map_collect(&letters, |&k| {
            let mut out = Vec::new();
            let mut stack = vec![k];
            self.extend(&letters, &mut stack, window.max_len, i64::MAX, &mut out);
            out
        });
        let mut words = vec![Word::empty()];
        for part in firsts.iter_mut() {
            words.append(part);
        }
        Series::from_terms(words.into_iter().map(|w| (w, Rational::one())), *window)
    }

    /// Accepted words of positive letters with at most `max_len` letters
    /// and weight at most `max_weight`, the empty word included.
    pub fn words_up_to_weight(&self, max_len: usize, max_weight: i64) -> Vec<Word> {
        let letters: Vec<i32> = self.alphabet.members_between(1, max_weight).into_iter().map(|k| k as i32).collect();
        let mut out = vec![Word::empty()];
        if max_len == 0 {
            return out;
        }
        for &k in &letters {
            self.extend(&letters, &mut vec![k], max_len, max_weight - i64::from(k), &mut out);
        }
        out
    }

    /// `budget` is the weight still available after `stack`.
    fn extend(&self, letters: &[i32], stack: &mut Vec<i32>, max_len: usize, budget: i64, out: &mut Vec<Word>) {
        out.push(Word::from_slice(stack));
        if stack.len() == max_len {
            return;
        }
        let last = *stack.last().expect("nonempty");
        for &k in letters {
            if i64::from(k) > budget {
                break;
            }
            if self.links(last.into(), k.into()) {
                stack.push(k);
                self.extend(letters, stack, max_len, budget - i64::from(k), out);
                stack.pop();
            }
        }
    }
}

/// The named families of the paper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LanguageKind {
    /// `Σ_S = Σ_{k∈S} X_k`, single letters only.
    Sigma(SetSpec),
    /// `𝒞`, all compositions.
    Compositions,
    /// `Π_m`: weakly decreasing, parts at most `m`.
    PiM(i64),
    /// `Π_∞`: weakly decreasing.
    PiInf,
    /// `Π^m`: strictly increasing, parts at most `m`.
    PiUpperM(i64),
    /// `Π^∞`: strictly increasing.
    PiUpperInf,
    /// `𝒫_m`: increasing, rises at least `m`.
    PM(i64),
    /// `𝒫_S`: increasing, rises in `S`.
    PS(SetSpec),
    /// `𝒞^(m)`: compositions with contiguous differences at most `m`.
    CM(i64),
    /// `𝒞^Ŝ`: compositions with contiguous differences outside `S`.
    CShat(SetSpec),
    /// Compositions without equal adjacent parts.
    Carlitz,
    /// Words repeating a single letter; the K-dual of Carlitz.
    RepeatedLetter,
}

impl LanguageKind {
    /// The linked-language presentation; `None` for `Σ_S`, which has no unit.
    pub fn linked(&self) -> Result<Option<LinkedLanguage>> {
        let positive = SetSpec::at_least(1);
        let (alphabet, rule, complemented) = match self {
            LanguageKind::Sigma(_) => return Ok(None),
            LanguageKind::Compositions => (positive, LinkRule::All, false),
            LanguageKind::PiM(m) => (SetSpec::range(1, nonneg(*m)?), LinkRule::WeaklyDecreasing, false),
            LanguageKind::PiInf => (positive, LinkRule::WeaklyDecreasing, false),
            LanguageKind::PiUpperM(m) => (SetSpec::range(1, nonneg(*m)?), LinkRule::StrictlyIncreasing, false),
            LanguageKind::PiUpperInf => (positive, LinkRule::StrictlyIncreasing, false),
            LanguageKind::PM(m) => (positive, LinkRule::RiseAtLeast(nonneg(*m)?), false),
            LanguageKind::PS(s) => {
                s.require_natural(false)?;
                (positive, LinkRule::RiseIn(s.clone()), false)
            }
            LanguageKind::CM(m) => (positive, LinkRule::RiseAtMost(*m), false),
            LanguageKind::CShat(s) => {
                s.require_natural(false)?;
                (positive, LinkRule::RiseIn(s.clone()), true)
            }
            LanguageKind::Carlitz => (positive, LinkRule::Equal, true),
            LanguageKind::RepeatedLetter => (positive, LinkRule::Equal, false),
        };
        let mut lang = LinkedLanguage::new(alphabet, rule)?;
        lang.complemented = complemented;
        Ok(Some(lang))
    }
}

fn nonneg(m: i64) -> Result<i64> {
    if m < 0 {
        return Err(Error::InvalidParam(format!("parameter must be >= 0, got {m}")));
    }
    Ok(m)
}

impl fmt::Display for LanguageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LanguageKind::Sigma(s) => write!(f, "sigma[{s}]"),
            LanguageKind::Compositions => write!(f, "compositions"),
            LanguageKind::PiM(m) => write!(f, "pi[{m}]"),
            LanguageKind::PiInf => write!(f, "pi-inf"),
            LanguageKind::PiUpperM(m) => write!(f, "pi-upper[{m}]"),
            LanguageKind::PiUpperInf => write!(f, "pi-upper-inf"),
            LanguageKind::PM(m) => write!(f, "p[{m}]"),
            LanguageKind::PS(s) => write!(f, "p-s[{s}]"),
            LanguageKind::CM(m) => write!(f, "c[{m}]"),
            LanguageKind::CShat(s) => write!(f, "c-shat[{s}]"),
            LanguageKind::Carlitz => write!(f, "carlitz"),
            LanguageKind::RepeatedLetter => write!(f, "repeated-letter"),
        }
    }
}

/// The exact truncation of the named series on `window`.
pub fn build_language(kind: &LanguageKind, window: &TruncationWindow) -> Result<Series> {
    if let LanguageKind::Sigma(s) = kind {
        s.require_natural(false)?;
        let lo = i64::from(window.min_letter).max(0);
        let terms = s
            .members_between(lo, window.max_letter.into())
            .into_iter()
            .map(|k| (Word::letter(k as i32), Rational::one()));
        return Ok(Series::from_terms(terms, *window));
    }
    let lang = kind.linked()?.expect("linked family");
    Ok(lang.realize(window))
}

/// `L^g = Σ (−1)^{ℓ(κ)} X_κ` over the words of `L`.
pub fn graded_gf<C: Coefficient>(realized: &Series<C>) -> Series<C> {
    sign_flip(realized)
}

/// `L^! = (L^g)⁻¹`, checked to be a language.
pub fn k_dual(realized: &Series) -> Result<Series> {
    let dual = series_inverse(&graded_gf(realized))?;
    if let Some((w, c)) = dual.sorted_terms().into_iter().find(|(_, c)| !c.is_one()) {
        return Err(Error::NotALanguage { word: w.clone(), coeff: c.to_string() });
    }
    Ok(dual)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_weight(s: &Series, n: i64) -> usize {
        s.iter().filter(|(w, c)| w.weight() == n && !c.is_zero()).count()
    }

    #[test]
    fn spec_counts() {
        let w = TruncationWindow::new(6, 8);
        assert_eq!(count_weight(&build_language(&LanguageKind::Compositions, &w).unwrap(), 4), 8);
        let p2 = build_language(&LanguageKind::PM(2), &w).unwrap();
        let mut got: Vec<_> = p2.iter().filter(|(w, _)| w.weight() == 5).map(|(w, _)| w.clone()).collect();
        got.sort();
        assert_eq!(got, vec![Word::from([1, 4]), Word::from([5])]);
        let carlitz = build_language(&LanguageKind::Carlitz, &w).unwrap();
        let mut got: Vec<_> = carlitz.iter().filter(|(w, _)| w.weight() == 4).map(|(w, _)| w.clone()).collect();
        got.sort();
        assert_eq!(got, vec![Word::from([1, 2, 1]), Word::from([1, 3]), Word::from([3, 1]), Word::from([4])]);
    }

    #[test]
    fn graded_signs() {
        let w = TruncationWindow::new(3, 5);
        let g = graded_gf(&build_language(&LanguageKind::PM(2), &w).unwrap());
        assert_eq!(g.coefficient(&Word::from([1, 3])).unwrap(), Rational::one());
        assert_eq!(g.coefficient(&Word::from([1])).unwrap(), Rational::from(-1));
        let alphabet_only = LinkedLanguage::new(SetSpec::range(1, 3), LinkRule::All).unwrap().dual();
        let realized = alphabet_only.realize(&w);
        let expect = Series::one(w).sub(&build_language(&LanguageKind::Sigma(SetSpec::range(1, 3)), &w).unwrap());
        assert_eq!(graded_gf(&realized), expect);
    }

    #[test]
    fn duality_pairs() {
        let w = TruncationWindow::new(5, 10);
        let p2 = build_language(&LanguageKind::PM(2), &w).unwrap();
        assert_eq!(k_dual(&p2).unwrap(), build_language(&LanguageKind::CM(1), &w).unwrap());
        let rep = build_language(&LanguageKind::RepeatedLetter, &w).unwrap();
        assert_eq!(k_dual(&rep).unwrap(), build_language(&LanguageKind::Carlitz, &w).unwrap());
        let free = LinkedLanguage::new(SetSpec::range(1, 3), LinkRule::All).unwrap();
        assert_eq!(k_dual(&free.dual().realize(&w)).unwrap(), free.realize(&w));
        assert_eq!(k_dual(&k_dual(&p2).unwrap()).unwrap(), p2);
    }

    #[test]
    fn k_dual_rejects_non_languages() {
        let w = TruncationWindow::new(3, 3);
        let not_linked = Series::one(w).add(&Series::monomial(Word::from([1, 1]), Rational::one(), w));
        assert!(matches!(k_dual(&not_linked), Err(Error::NotALanguage { .. })));
    }

    #[test]
    fn alphabet_must_be_positive() {
        assert!(LinkedLanguage::new(SetSpec::at_least(0), LinkRule::All).is_err());
        assert!(build_language(&LanguageKind::PM(-1), &TruncationWindow::new(2, 2)).is_err());
    }

    #[test]
    fn distinct_partitions_are_pi_upper() {
        let w = TruncationWindow::new(5, 9);
        assert_eq!(
            build_language(&LanguageKind::PM(1), &w).unwrap(),
            build_language(&LanguageKind::PiUpperInf, &w).unwrap()
        );
    }
}
