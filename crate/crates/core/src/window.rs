//! Truncation windows.
//!
//! A window `(L, K, O)` certifies every coefficient of every word of length
//! at most `L` whose letters are all at most `K`. The floor `O` is a lower
//! bound on the letters of the support: words with a letter below `O` are
//! known to have coefficient zero. Within that region the stored
//! coefficients equal those of the untruncated series.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncationWindow {
    #[serde(rename = "L")]
    pub max_len: usize,
    #[serde(rename = "K")]
    pub max_letter: i32,
    #[serde(rename = "O")]
    pub min_letter: i32,
}

impl TruncationWindow {
    pub fn new(max_len: usize, max_letter: i32) -> Self {
        Self::with_floor(max_len, max_letter, 0)
    }

    pub fn with_floor(max_len: usize, max_letter: i32, min_letter: i32) -> Self {
        TruncationWindow { max_len, max_letter, min_letter }
    }

    pub fn checked(max_len: usize, max_letter: i32, min_letter: i32) -> Result<Self> {
        if max_len < 1 || min_letter > max_letter {
            return Err(Error::InvalidParam(format!(
                "window needs L >= 1 and O <= K, got L={max_len} K={max_letter} O={min_letter}"
            )));
        }
        Ok(Self::with_floor(max_len, max_letter, min_letter))
    }

    /// Coefficient of `w` is certified (possibly as a known zero).
    pub fn certifies(&self, w: &[i32]) -> bool {
        w.len() <= self.max_len && w.iter().all(|&k| k <= self.max_letter)
    }

    /// `w` is certified and may carry a nonzero coefficient.
    pub fn admits(&self, w: &[i32]) -> bool {
        self.certifies(w) && w.iter().all(|&k| k >= self.min_letter)
    }

    /// Region certified by both windows; the floor is the smaller one.
    pub fn meet(&self, other: &Self) -> Self {
        TruncationWindow {
            max_len: self.max_len.min(other.max_len),
            max_letter: self.max_letter.min(other.max_letter),
            min_letter: self.min_letter.min(other.min_letter),
        }
    }

    pub fn shifted(&self, n: i32) -> Self {
        TruncationWindow { max_len: self.max_len, max_letter: self.max_letter + n, min_letter: self.min_letter + n }
    }

    pub fn with_max_len(&self, max_len: usize) -> Self {
        TruncationWindow { max_len, ..*self }
    }

    pub fn with_max_letter(&self, max_letter: i32) -> Self {
        TruncationWindow { max_letter, ..*self }
    }

    /// `self` certifies at least what `other` does.
    pub fn covers(&self, other: &Self) -> bool {
        self.max_len >= other.max_len && self.max_letter >= other.max_letter
    }
}

impl std::fmt::Display for TruncationWindow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "L={} K={} O={}", self.max_len, self.max_letter, self.min_letter)
    }
}
