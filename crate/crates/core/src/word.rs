//! Words over the integer-indexed alphabet.

use std::fmt;
use std::ops::Deref;

use smallvec::SmallVec;

pub type Letters = SmallVec<[i32; 8]>;

/// A finite sequence of letter indices; the empty word is the unit.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Letters);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(k: i32) -> Self {
        let mut v = SmallVec::new();
        v.push(k);
        Word(v)
    }

    pub fn from_slice(s: &[i32]) -> Self {
        Word(SmallVec::from_slice(s))
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(|&k| k as i64).sum()
    }

    pub fn order(&self) -> Option<i32> {
        self.0.iter().copied().min()
    }

    pub fn max_letter(&self) -> Option<i32> {
        self.0.iter().copied().max()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn shifted(&self, n: i32) -> Word {
        Word(self.0.iter().map(|&k| k + n).collect())
    }
}

impl Deref for Word {
    type Target = [i32];

    fn deref(&self) -> &[i32] {
        &self.0
    }
}

impl From<Vec<i32>> for Word {
    fn from(v: Vec<i32>) -> Self {
        Word(SmallVec::from_vec(v))
    }
}

impl From<&[i32]> for Word {
    fn from(v: &[i32]) -> Self {
        Word::from_slice(v)
    }
}

impl<const N: usize> From<[i32; N]> for Word {
    fn from(v: [i32; N]) -> Self {
        Word::from_slice(&v)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// `(weight, length, order)`; order is `None` for the empty word.
pub fn word_stats(w: &Word) -> (i64, usize, Option<i32>) {
    (w.weight(), w.len(), w.order())
}
