//! Enriched shift-plethystic trees, hydra continued fractions and the
//! local-minima structure of compositions.
//!
//! `ℛₘ` is the series of `Πₘ(−X)`-enriched trees, the `m`-headed
//! generalization of the Rogers-Ramanujan continued fraction. The prose
//! introducing it in the source literature names `Π_{m−1}(−X)`, while the
//! displayed equations use `Πₘ(−X)`; the displayed form is implemented, so
//! that `m = 1` recovers Rogers-Ramanujan.

use crate::coeff::{Coefficient, TPoly};
use crate::error::{Error, Result};
use crate::languages::{build_language, LanguageKind};
use crate::plethysm::{plethysm, solve_implicit, BiSeries};
use crate::series::{series_inverse, series_mul, shift, sign_flip, Series};
use crate::window::TruncationWindow;
use crate::word::Word;

/// Number of heads of a hydra fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Heads {
    Finite(u32),
    Infinite,
}

impl Heads {
    pub fn partitions(self) -> LanguageKind {
        match self {
            Heads::Finite(m) => LanguageKind::PiM(m.into()),
            Heads::Infinite => LanguageKind::PiInf,
        }
    }
}

/// Window on which an enriching series must be known to determine the trees
/// on `window`: one vertex fewer below the root, same colors.
pub fn enriching_window(window: &TruncationWindow) -> TruncationWindow {
    TruncationWindow::with_floor(window.max_len.saturating_sub(1).max(1), window.max_letter, 0)
}

/// Right-hand side `X₀·M(Y)` of the tree equation.
pub fn tree_equation<C: Coefficient>(m: &Series<C>) -> Result<BiSeries<C>> {
    if !m.constant_term().is_one() {
        return Err(Error::InvalidParam(format!("enriching series needs constant term 1, got {}", m.constant_term())));
    }
    Ok(BiSeries::x0_times_y(m))
}

/// `𝒜_M = X₀(M ∘ₛ 𝒜_M)` on `window`.
pub fn enriched_trees<C: Coefficient>(m: &Series<C>, window: &TruncationWindow) -> Result<Series<C>> {
    let f = tree_equation(m)?;
    solve_implicit(&f, window)
}

/// `ℛₘ = 𝒜_{Πₘ(−X)}`, checked against `𝒜_{Πₘ} = −ℛₘ(−X)`.
pub fn hydra_r(heads: Heads, window: &TruncationWindow) -> Result<Series> {
    let pi = build_language(&heads.partitions(), &enriching_window(window))?;
    let r = enriched_trees(&sign_flip(&pi), window)?;
    let trees = enriched_trees(&pi, window)?;
    if let Some((w, _, _)) = sign_flip(&r).neg().first_discrepancy(&trees) {
        return Err(Error::Internal(format!("sign relation between hydra fraction and Π-trees fails at {w}")));
    }
    Ok(r)
}

/// `𝒜_{Π_m}` on `window`.
pub fn partition_trees(heads: Heads, window: &TruncationWindow) -> Result<Series> {
    let pi = build_language(&heads.partitions(), &enriching_window(window))?;
    enriched_trees(&pi, window)
}

fn need_m(m: u32) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidParam(format!("quotient forms need m >= 2, got {m}")));
    }
    Ok(())
}

/// `X₀(σ^{m−1}𝒫ₘ)(𝒫ₘ)⁻¹`, built by series algebra only.
pub fn quotient_partition_form(m: u32, window: &TruncationWindow) -> Result<Series> {
    need_m(m)?;
    let p = build_language(&LanguageKind::PM(m.into()), &enriching_window(window))?;
    let x0 = Series::letter(0, floor_zero(window));
    let num = shift(&p, m as i32 - 1);
    Ok(series_mul(&series_mul(&x0, &num), &series_inverse(&p)?))
}

/// `X₀(σ^{m−1}𝒞^(m−1))⁻¹𝒞^(m−1)`, built by series algebra only.
pub fn quotient_composition_form(m: u32, window: &TruncationWindow) -> Result<Series> {
    need_m(m)?;
    let c = build_language(&LanguageKind::CM(i64::from(m) - 1), &enriching_window(window))?;
    let x0 = Series::letter(0, floor_zero(window));
    let den = series_inverse(&shift(&c, m as i32 - 1))?;
    Ok(series_mul(&series_mul(&x0, &den), &c))
}

/// `X₀·Πᵐ`, the plethystic inverse of `ℛₘ`.
pub fn hydra_inverse_closed(m: u32, window: &TruncationWindow) -> Result<Series> {
    let pi_upper = build_language(&LanguageKind::PiUpperM(m.into()), &enriching_window(window))?;
    Ok(series_mul(&Series::letter(0, floor_zero(window)), &pi_upper))
}

/// Compositions weighted by `t^{number of local minima}`, computed as
/// `Π_∞ ∘ₛ (t·X₀𝒞)`.
pub fn compositions_by_minima(window: &TruncationWindow) -> Result<Series<TPoly>> {
    let pi: Series<TPoly> = build_language(&LanguageKind::PiInf, window)?.lift();
    let comps = build_language(&LanguageKind::Compositions, &enriching_window(window))?;
    let x0 = Series::letter(0, floor_zero(window));
    let marked: Series<TPoly> = series_mul(&x0, &comps).lift().scale_by(&TPoly::t());
    plethysm(&pi, &marked)
}

/// A composition cut before each running minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMinimaFactorization {
    /// Weakly decreasing local-minima list.
    pub minima: Vec<i32>,
    /// Tail following each minimum.
    pub blocks: Vec<Word>,
}

impl LocalMinimaFactorization {
    pub fn len(&self) -> usize {
        self.minima.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minima.is_empty()
    }

    pub fn reassemble(&self) -> Word {
        let mut out = Vec::new();
        for (mu, tail) in self.minima.iter().zip(&self.blocks) {
            out.push(*mu);
            out.extend_from_slice(tail);
        }
        Word::from(out)
    }
}

/// Factor `κ = μ₁ω₁|μ₂ω₂|…` where each `μⱼ₊₁` is the first part after `μⱼ`
/// that is at most `μⱼ`.
pub fn local_minima_factor(kappa: &[i32]) -> Result<LocalMinimaFactorization> {
    if let Some(&bad) = kappa.iter().find(|&&k| k < 1) {
        return Err(Error::InvalidParam(format!("compositions have positive parts, found {bad}")));
    }
    let mut minima: Vec<i32> = Vec::new();
    let mut blocks: Vec<Vec<i32>> = Vec::new();
    for &k in kappa {
        match minima.last() {
            Some(&mu) if k > mu => blocks.last_mut().expect("block per minimum").push(k),
            _ => {
                minima.push(k);
                blocks.push(Vec::new());
            }
        }
    }
    Ok(LocalMinimaFactorization { minima, blocks: blocks.into_iter().map(Word::from).collect() })
}

fn floor_zero(w: &TruncationWindow) -> TruncationWindow {
    TruncationWindow::with_floor(w.max_len, w.max_letter, 0)
}
