//! Exact noncommutative formal power series with shift-plethysm.
//!
//! Series live over the alphabet `{X_k : k ∈ ℤ}` and are stored on a finite
//! [`TruncationWindow`] where every coefficient is exact. On top of the series
//! ring sit shift-plethystic substitution and an implicit-equation solver
//! ([`plethysm`]), the classical languages of partitions and compositions
//! ([`languages`]), enriched plane trees and the insertion bijection
//! ([`trees`]), hydra continued fractions ([`hydra`]), the umbral map to
//! `(z, q, t)`-series with closed-form evaluators ([`qseries`]), brute-force
//! enumerators ([`oracle`]) and a catalog of identity checks ([`catalog`]).

pub mod catalog;
pub mod coeff;
pub mod error;
pub mod hydra;
pub mod json;
pub mod languages;
pub mod oracle;
mod par;
pub mod plethysm;
pub mod qseries;
pub mod rational;
pub mod series;
pub mod setspec;
pub mod trees;
pub mod window;
pub mod word;

pub use coeff::{Coefficient, TPoly};
pub use error::{Error, Result};
pub use rational::Rational;
pub use series::{series_inverse, series_linear, series_mul, shift, sign_flip, Series};
pub use setspec::SetSpec;
pub use window::TruncationWindow;
pub use word::{word_stats, Word};
