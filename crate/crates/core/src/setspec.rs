//! Integer sets used as rise sets, difference sets and alphabets.
//!
//! Text syntax:
//!
//! | text               | set                          |
//! |--------------------|------------------------------|
//! | `odd`              | `{1, 3, 5, …}`               |
//! | `even`             | `{0, 2, 4, …}`               |
//! | `m..`              | `[m, ∞)`                     |
//! | `m..n`             | `[m, n]`                     |
//! | `{a,b,c}` or `a`   | finite set                   |
//! | `l mod m`          | `{l, l+m, l+2m, …}`          |
//! | `l mod m, no-zero` | the same without `0`         |
//! | `A \| B`           | union                        |

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SetSpec {
    Finite(BTreeSet<i64>),
    Interval {
        lo: i64,
        hi: Option<i64>,
    },
    /// `{residue + j·modulus : j ≥ 0}`, without `0` when `positive`.
    Progression {
        residue: i64,
        modulus: i64,
        positive: bool,
    },
    Union(Vec<SetSpec>),
}

impl SetSpec {
    pub fn finite(items: impl IntoIterator<Item = i64>) -> Self {
        SetSpec::Finite(items.into_iter().collect())
    }

    pub fn at_least(lo: i64) -> Self {
        SetSpec::Interval { lo, hi: None }
    }

    pub fn range(lo: i64, hi: i64) -> Self {
        SetSpec::Interval { lo, hi: Some(hi) }
    }

    pub fn odd() -> Self {
        Self::progression(1, 2, false)
    }

    /// `mℕ` (with zero) or `mℕ₊` (without).
    pub fn multiples(m: i64, positive: bool) -> Self {
        Self::progression(0, m, positive)
    }

    pub fn progression(residue: i64, modulus: i64, positive: bool) -> Self {
        SetSpec::Progression { residue, modulus, positive }
    }

    pub fn contains(&self, n: i64) -> bool {
        match self {
            SetSpec::Finite(s) => s.contains(&n),
            SetSpec::Interval { lo, hi } => n >= *lo && hi.is_none_or(|h| n <= h),
            SetSpec::Progression { residue, modulus, positive } => {
                n >= *residue && (n - residue) % modulus == 0 && !(*positive && n == 0)
            }
            SetSpec::Union(parts) => parts.iter().any(|p| p.contains(n)),
        }
    }

    /// Smallest member, if the set is nonempty.
    pub fn min(&self) -> Option<i64> {
        match self {
            SetSpec::Finite(s) => s.first().copied(),
            SetSpec::Interval { lo, hi } => match hi {
                Some(h) if h < lo => None,
                _ => Some(*lo),
            },
            SetSpec::Progression { residue, modulus, positive } => {
                if *positive && *residue == 0 {
                    Some(*modulus)
                } else {
                    Some(*residue)
                }
            }
            SetSpec::Union(parts) => parts.iter().filter_map(SetSpec::min).min(),
        }
    }

    /// Largest member; `None` for unbounded sets and the empty set.
    pub fn max(&self) -> Option<i64> {
        match self {
            SetSpec::Finite(s) => s.last().copied(),
            SetSpec::Interval { lo, hi } => hi.filter(|h| h >= lo),
            SetSpec::Progression { .. } => None,
            SetSpec::Union(parts) => {
                let maxes: Option<Vec<i64>> = parts.iter().map(SetSpec::max).collect();
                maxes.and_then(|v| v.into_iter().max())
            }
        }
    }

    /// Members in `[lo, hi]`, ascending.
    pub fn members_between(&self, lo: i64, hi: i64) -> Vec<i64> {
        match self {
            SetSpec::Finite(s) => s.range(lo..=hi.max(lo)).copied().filter(|&n| n <= hi).collect(),
            SetSpec::Interval { lo: a, hi: b } => {
                let top = b.map_or(hi, |b| b.min(hi));
                (lo.max(*a)..=top).collect()
            }
            SetSpec::Progression { residue, modulus, .. } => {
                let mut n = *residue;
                if lo > n {
                    n += (lo - n + modulus - 1) / modulus * modulus;
                }
                let mut out = Vec::new();
                while n <= hi {
                    if self.contains(n) {
                        out.push(n);
                    }
                    n += modulus;
                }
                out
            }
            SetSpec::Union(parts) => {
                let all: BTreeSet<i64> = parts.iter().flat_map(|p| p.members_between(lo, hi)).collect();
                all.into_iter().collect()
            }
        }
    }

    /// Members `≤ bound`, ascending. Fails for sets unbounded below, which
    /// this type cannot express, so it never fails in practice.
    pub fn members_up_to(&self, bound: i64) -> Vec<i64> {
        match self.min() {
            Some(lo) => self.members_between(lo, bound),
            None => Vec::new(),
        }
    }

    /// Check that the set lies in `ℕ` (or `ℕ₊` when `positive`).
    pub fn require_natural(&self, positive: bool) -> Result<()> {
        let floor = i64::from(positive);
        match self.min() {
            Some(m) if m < floor => Err(Error::InvalidParam(format!(
                "set {self} must lie in {}",
                if positive { "the positive integers" } else { "the nonnegative integers" }
            ))),
            _ => Ok(()),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            SetSpec::Progression { modulus, residue, .. } if *modulus < 1 || *residue < 0 => Err(Error::InvalidParam(
                format!("progression needs modulus >= 1 and residue >= 0, got {residue} mod {modulus}"),
            )),
            SetSpec::Union(parts) => parts.iter().try_for_each(SetSpec::validate),
            _ => Ok(()),
        }
    }
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("expected an integer, got {s:?}")))
}

fn parse_atom(s: &str) -> Result<SetSpec> {
    let s = s.trim();
    if s == "odd" {
        return Ok(SetSpec::odd());
    }
    if s == "even" {
        return Ok(SetSpec::multiples(2, false));
    }
    if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        if inner.trim().is_empty() {
            return Ok(SetSpec::Finite(BTreeSet::new()));
        }
        return inner.split(',').map(parse_int).collect::<Result<BTreeSet<_>>>().map(SetSpec::Finite);
    }
    if let Some((head, tail)) = s.split_once("mod") {
        let (modulus, positive) = match tail.split_once(',') {
            Some((m, flag)) if flag.trim() == "no-zero" => (m, true),
            Some((_, flag)) => return Err(Error::Parse(format!("unknown progression flag {:?}", flag.trim()))),
            None => (tail, false),
        };
        let spec = SetSpec::progression(parse_int(head)?, parse_int(modulus)?, positive);
        spec.validate()?;
        return Ok(spec);
    }
    if let Some((lo, hi)) = s.split_once("..") {
        let lo = parse_int(lo)?;
        return if hi.trim().is_empty() { Ok(SetSpec::at_least(lo)) } else { Ok(SetSpec::range(lo, parse_int(hi)?)) };
    }
    Ok(SetSpec::finite([parse_int(s)?]))
}

impl FromStr for SetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('|').collect();
        if parts.len() == 1 {
            return parse_atom(parts[0]);
        }
        parts.into_iter().map(parse_atom).collect::<Result<Vec<_>>>().map(SetSpec::Union)
    }
}

impl fmt::Display for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetSpec::Finite(s) => {
                let items: Vec<String> = s.iter().map(i64::to_string).collect();
                write!(f, "{{{}}}", items.join(","))
            }
            SetSpec::Interval { lo, hi: None } => write!(f, "{lo}.."),
            SetSpec::Interval { lo, hi: Some(hi) } => write!(f, "{lo}..{hi}"),
            SetSpec::Progression { residue, modulus, positive } => {
                write!(f, "{residue} mod {modulus}")?;
                if *positive {
                    write!(f, ", no-zero")?;
                }
                Ok(())
            }
            SetSpec::Union(parts) => {
                let items: Vec<String> = parts.iter().map(SetSpec::to_string).collect();
                write!(f, "{}", items.join(" | "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> SetSpec {
        s.parse().unwrap()
    }

    #[test]
    fn syntax() {
        assert_eq!(parse("odd"), SetSpec::odd());
        assert_eq!(parse("2.."), SetSpec::at_least(2));
        assert_eq!(parse("1..3"), SetSpec::range(1, 3));
        assert_eq!(parse("{2}"), SetSpec::finite([2]));
        assert_eq!(parse("{1, 4,6}"), SetSpec::finite([1, 4, 6]));
        assert_eq!(parse("1 mod 3"), SetSpec::progression(1, 3, false));
        assert_eq!(parse("0 mod 2, no-zero"), SetSpec::multiples(2, true));
        assert_eq!(parse("{1} | 4.."), SetSpec::Union(vec![SetSpec::finite([1]), SetSpec::at_least(4)]));
        for bad in ["", "x..", "1 mod 0", "1 mod 2, maybe", "{1,a}"] {
            assert!(bad.parse::<SetSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["odd", "2..", "1..3", "{2}", "{0,5}", "1 mod 3", "0 mod 2, no-zero", "{1} | 4.."] {
            let spec = parse(s);
            assert_eq!(parse(&spec.to_string()), spec);
        }
    }

    #[test]
    fn membership() {
        assert_eq!(SetSpec::odd().members_up_to(9), vec![1, 3, 5, 7, 9]);
        assert_eq!(SetSpec::multiples(2, false).members_up_to(6), vec![0, 2, 4, 6]);
        assert_eq!(SetSpec::multiples(2, true).members_up_to(6), vec![2, 4, 6]);
        assert_eq!(SetSpec::progression(1, 3, false).members_up_to(10), vec![1, 4, 7, 10]);
        assert_eq!(SetSpec::range(1, 3).members_up_to(10), vec![1, 2, 3]);
        assert_eq!(SetSpec::at_least(3).members_between(0, 5), vec![3, 4, 5]);
        assert_eq!(SetSpec::progression(1, 3, false).members_between(5, 11), vec![7, 10]);
        assert!(!SetSpec::odd().contains(-1));
        assert_eq!(SetSpec::multiples(3, true).min(), Some(3));
        assert_eq!(SetSpec::range(2, 5).max(), Some(5));
        assert_eq!(SetSpec::odd().max(), None);
    }

    #[test]
    fn natural_check() {
        assert!(SetSpec::at_least(0).require_natural(false).is_ok());
        assert!(SetSpec::at_least(0).require_natural(true).is_err());
        assert!(SetSpec::finite([-1, 2]).require_natural(false).is_err());
    }
}
