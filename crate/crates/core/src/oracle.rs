//! Brute-force enumerators for compositions, partitions and plane trees.
//!
//! Nothing here touches the series machinery; the only shared type is
//! [`Word`]. Sets of integers are passed as plain predicates.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::word::Word;

/// Largest composition weight: `2^(n−1)` compositions before filtering.
pub const MAX_COMPOSITION_WEIGHT: u32 = 24;
/// Largest partition weight; the unrestricted count at 40 is 37 338.
pub const MAX_PARTITION_WEIGHT: u32 = 40;
/// Largest total color sum for tree enumeration; there are `2^(n−2)` cyclic
/// compositions of weight `n`, hence as many trees.
pub const MAX_TREE_WEIGHT: u32 = 18;

/// Membership predicate for a set of integers.
pub type IntSet = Arc<dyn Fn(i64) -> bool + Send + Sync>;

pub fn int_set(f: impl Fn(i64) -> bool + Send + Sync + 'static) -> IntSet {
    Arc::new(f)
}

fn check_limit(n: u32, limit: u32, what: &str) -> Result<()> {
    if n > limit {
        return Err(Error::EnumerationLimit(format!("{what} of weight {n} exceeds the limit {limit}")));
    }
    Ok(())
}

/// Compositions of `n` whose adjacent parts `(a, b)` all satisfy `adjacent`,
/// in lexicographic order.
pub fn enum_compositions(n: u32, adjacent: &dyn Fn(i32, i32) -> bool) -> Result<Vec<Word>> {
    if n == 0 {
        return Err(Error::EnumerationLimit("compositions need n >= 1".into()));
    }
    check_limit(n, MAX_COMPOSITION_WEIGHT, "composition")?;
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    compositions_rec(n as i32, adjacent, &mut prefix, &mut |w| out.push(Word::from_slice(w)));
    Ok(out)
}

fn compositions_rec(
    left: i32,
    adjacent: &dyn Fn(i32, i32) -> bool,
    prefix: &mut Vec<i32>,
    emit: &mut dyn FnMut(&[i32]),
) {
    if left == 0 {
        emit(prefix);
        return;
    }
    for part in 1..=left {
        if prefix.last().is_some_and(|&a| !adjacent(a, part)) {
            continue;
        }
        prefix.push(part);
        compositions_rec(left - part, adjacent, prefix, emit);
        prefix.pop();
    }
}

/// Partitions of `n` written in increasing order whose rises
/// `λᵢ₊₁ − λᵢ` all lie in `rises`; the first part is free.
pub fn enum_partitions_with_rises(n: u32, rises: &dyn Fn(i64) -> bool) -> Result<Vec<Word>> {
    check_limit(n, MAX_PARTITION_WEIGHT, "partition")?;
    let mut out = Vec::new();
    if n == 0 {
        out.push(Word::empty());
        return Ok(out);
    }
    let mut prefix = Vec::new();
    partitions_rec(n as i32, rises, &mut prefix, &mut out);
    Ok(out)
}

fn partitions_rec(left: i32, rises: &dyn Fn(i64) -> bool, prefix: &mut Vec<i32>, out: &mut Vec<Word>) {
    if left == 0 {
        out.push(Word::from_slice(prefix));
        return;
    }
    let lo = prefix.last().copied().unwrap_or(1);
    for part in lo..=left {
        if let Some(&a) = prefix.last() {
            if !rises(i64::from(part - a)) {
                continue;
            }
        }
        // every later part is at least this one
        if part != left && 2 * part > left {
            continue;
        }
        prefix.push(part);
        partitions_rec(left - part, rises, prefix, out);
        prefix.pop();
    }
}

/// Number of parts that are at most every part before them.
pub fn count_local_minima(kappa: &[i32]) -> usize {
    let mut low = i32::MAX;
    let mut count = 0;
    for &k in kappa {
        if k <= low {
            count += 1;
            low = k;
        }
    }
    count
}

/// Adjacent pairs with `κᵢ ≥ κᵢ₊₁`.
pub fn count_weak_descents(kappa: &[i32]) -> usize {
    kappa.windows(2).filter(|p| p[0] >= p[1]).count()
}

/// First part positive and strictly below all the others.
pub fn is_cyclic_composition(kappa: &[i32]) -> bool {
    !kappa.is_empty() && kappa[0] >= 1 && kappa[1..].iter().all(|&k| k > kappa[0])
}

/// Families the oracle can count.
#[derive(Clone)]
pub enum OracleKind {
    Compositions,
    Carlitz,
    /// Compositions with every `κᵢ₊₁ − κᵢ ≤ m`.
    DifferencesAtMost(i64),
    /// Compositions with no `κᵢ₊₁ − κᵢ` in the set.
    DifferencesAvoid(IntSet),
    /// Increasing partitions with consecutive gaps `≥ m`.
    MDistinct(i64),
    /// Increasing partitions with every rise in the set.
    RisesIn(IntSet),
    /// Compositions, marker = number of local minima.
    CompositionsByMinima,
}

impl fmt::Debug for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleKind::Compositions => write!(f, "Compositions"),
            OracleKind::Carlitz => write!(f, "Carlitz"),
            OracleKind::DifferencesAtMost(m) => write!(f, "DifferencesAtMost({m})"),
            OracleKind::DifferencesAvoid(_) => write!(f, "DifferencesAvoid(..)"),
            OracleKind::MDistinct(m) => write!(f, "MDistinct({m})"),
            OracleKind::RisesIn(_) => write!(f, "RisesIn(..)"),
            OracleKind::CompositionsByMinima => write!(f, "CompositionsByMinima"),
        }
    }
}

/// Counts keyed by `(weight, length, marker)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountTable {
    pub nmax: u32,
    pub map: BTreeMap<(u32, usize, usize), u64>,
}

impl CountTable {
    pub fn get(&self, n: u32, k: usize, marker: usize) -> u64 {
        self.map.get(&(n, k, marker)).copied().unwrap_or(0)
    }

    /// Total over lengths and markers at weight `n`.
    pub fn total(&self, n: u32) -> u64 {
        self.map.range((n, 0, 0)..(n + 1, 0, 0)).map(|(_, c)| c).sum()
    }

    fn bump(&mut self, n: u32, k: usize, marker: usize) {
        *self.map.entry((n, k, marker)).or_insert(0) += 1;
    }

    /// Same layout as the q-series tables: length as `z`, marker as `t`,
    /// weight as `q`.
    pub fn to_tsv(&self) -> String {
        let mut rows: Vec<_> = self.map.iter().map(|(&(n, k, m), &c)| (k, m, n, c)).collect();
        rows.sort_unstable();
        let mut s = String::from("z\tt\tq\tcoeff\n");
        for (k, m, n, c) in rows {
            let _ = writeln!(s, "{k}\t{m}\t{n}\t{c}");
        }
        s
    }
}

/// Count the members of `kind` of every weight `1..=nmax`; the empty
/// word is recorded at weight 0.
pub fn count_table(kind: &OracleKind, nmax: u32) -> Result<CountTable> {
    let mut table = CountTable { nmax, map: BTreeMap::new() };
    table.bump(0, 0, 0);
    let compositions = |table: &mut CountTable, adjacent: &dyn Fn(i32, i32) -> bool, mark: bool| -> Result<()> {
        check_limit(nmax, MAX_COMPOSITION_WEIGHT, "composition")?;
        for n in 1..=nmax {
            compositions_rec(n as i32, adjacent, &mut Vec::new(), &mut |w| {
                let marker = if mark { count_local_minima(w) } else { 0 };
                table.bump(n, w.len(), marker);
            });
        }
        Ok(())
    };
    match kind {
        OracleKind::Compositions => compositions(&mut table, &|_, _| true, false)?,
        OracleKind::Carlitz => compositions(&mut table, &|a, b| a != b, false)?,
        OracleKind::DifferencesAtMost(m) => compositions(&mut table, &|a, b| i64::from(b - a) <= *m, false)?,
        OracleKind::DifferencesAvoid(s) => compositions(&mut table, &|a, b| !s(i64::from(b - a)), false)?,
        OracleKind::CompositionsByMinima => compositions(&mut table, &|_, _| true, true)?,
        OracleKind::MDistinct(m) => {
            let m = *m;
            partition_counts(&mut table, nmax, &move |r| r >= m)?
        }
        OracleKind::RisesIn(s) => partition_counts(&mut table, nmax, s.as_ref())?,
    }
    Ok(table)
}

fn partition_counts(table: &mut CountTable, nmax: u32, rises: &dyn Fn(i64) -> bool) -> Result<()> {
    for n in 1..=nmax {
        for w in enum_partitions_with_rises(n, rises)? {
            table.bump(n, w.len(), 0);
        }
    }
    Ok(())
}

/// Plane tree as seen by the oracle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OracleTree {
    pub color: i32,
    pub kids: Vec<OracleTree>,
}

impl OracleTree {
    pub fn weight(&self) -> i64 {
        i64::from(self.color) + self.kids.iter().map(OracleTree::weight).sum::<i64>()
    }

    pub fn preorder(&self) -> Vec<i32> {
        let mut out = vec![self.color];
        for k in &self.kids {
            out.extend(k.preorder());
        }
        out
    }

    pub fn leaves(&self) -> usize {
        if self.kids.is_empty() {
            1
        } else {
            self.kids.iter().map(OracleTree::leaves).sum()
        }
    }
}

impl fmt::Display for OracleTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.color)?;
        if let Some((first, rest)) = self.kids.split_first() {
            write!(f, "({first}")?;
            for k in rest {
                write!(f, " {k}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Every tree whose root has color `root`, whose total color sum is at most
/// `max_weight`, and in which the children of each vertex, read left to
/// right and lowered by the vertex color, form a weakly decreasing sequence
/// of positive integers bounded by `max_step` (unbounded when `None`).
pub fn enumerate_trees(root: i32, max_weight: u32, max_step: Option<i32>) -> Result<Vec<OracleTree>> {
    check_limit(max_weight, MAX_TREE_WEIGHT, "tree")?;
    if root < 1 {
        return Err(Error::InvalidParam(format!("tree colors must be positive, got root {root}")));
    }
    let budget = i64::from(max_weight);
    let mut out: Vec<OracleTree> = trees_rec(root, budget, max_step).into_iter().map(|(t, _)| t).collect();
    out.sort();
    Ok(out)
}

fn trees_rec(color: i32, budget: i64, max_step: Option<i32>) -> Vec<(OracleTree, i64)> {
    if i64::from(color) > budget {
        return Vec::new();
    }
    let first = max_step.unwrap_or(i32::MAX);
    forests(color, first, budget - i64::from(color), max_step)
        .into_iter()
        .map(|(kids, w)| (OracleTree { color, kids }, w + i64::from(color)))
        .collect()
}

/// Sibling lists under a parent of color `parent`, with steps at most
/// `bound` and total weight at most `budget`.
fn forests(parent: i32, bound: i32, budget: i64, max_step: Option<i32>) -> Vec<(Vec<OracleTree>, i64)> {
    let mut out = vec![(Vec::new(), 0)];
    let mut step = 1;
    while step <= bound && i64::from(parent + step) <= budget {
        for (head, hw) in trees_rec(parent + step, budget, max_step) {
            for (tail, tw) in forests(parent, step, budget - hw, max_step) {
                let mut kids = Vec::with_capacity(tail.len() + 1);
                kids.push(head.clone());
                kids.extend(tail);
                out.push((kids, hw + tw));
            }
        }
        step += 1;
    }
    out
}

/// All cyclic compositions of weight `1..=max_weight` beginning with
/// `first`, optionally with every contiguous difference at most `max_step`.
pub fn cyclic_compositions(first: i32, max_weight: u32, max_step: Option<i32>) -> Result<Vec<Word>> {
    check_limit(max_weight, MAX_COMPOSITION_WEIGHT, "composition")?;
    let mut out = Vec::new();
    for n in 1..=max_weight as i32 {
        if n < first {
            continue;
        }
        let mut prefix = vec![first];
        let adjacent = |a: i32, b: i32| b > first && max_step.is_none_or(|m| b - a <= m);
        compositions_rec(n - first, &adjacent, &mut prefix, &mut |w| out.push(Word::from_slice(w)));
    }
    Ok(out)
}
