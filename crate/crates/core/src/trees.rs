//! Colored plane trees, preorder words and the insertion bijection between
//! cyclic compositions and `Π_∞`-enriched trees.

use std::fmt;
use std::str::FromStr;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::languages::LinkedLanguage;
use crate::series::Series;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PTree {
    pub color: i32,
    pub children: Vec<PTree>,
}

impl PTree {
    pub fn leaf(color: i32) -> Self {
        PTree { color, children: Vec::new() }
    }

    pub fn node(color: i32, children: Vec<PTree>) -> Self {
        PTree { color, children }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(PTree::size).sum::<usize>()
    }

    pub fn leaves(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(PTree::leaves).sum()
        }
    }

    pub fn internal_vertices(&self) -> usize {
        self.size() - self.leaves()
    }

    /// `σⁿT`: every color raised by `n`.
    pub fn shifted(&self, n: i32) -> Self {
        PTree { color: self.color + n, children: self.children.iter().map(|c| c.shifted(n)).collect() }
    }
}

/// Root-first, left-to-right serialization.
pub fn preorder_word(t: &PTree) -> Word {
    fn walk(t: &PTree, out: &mut Vec<i32>) {
        out.push(t.color);
        for c in &t.children {
            walk(c, out);
        }
    }
    let mut out = Vec::with_capacity(t.size());
    walk(t, &mut out);
    Word::from(out)
}

/// All parts positive and the first strictly below every other part.
pub fn is_cyclic(w: &[i32]) -> bool {
    match w.split_first() {
        Some((&first, rest)) => first >= 1 && rest.iter().all(|&k| k > first),
        None => false,
    }
}

/// Build the tree of a cyclic composition by inserting each part as the
/// last child of the deepest vertex on the rightmost branch whose color is
/// smaller.
pub fn insertion_tree(kappa: &[i32]) -> Result<PTree> {
    if !is_cyclic(kappa) {
        return Err(Error::InvalidParam(format!("{} is not a cyclic composition", Word::from_slice(kappa))));
    }
    let mut colors = Vec::with_capacity(kappa.len());
    let mut kids: Vec<Vec<usize>> = Vec::with_capacity(kappa.len());
    let mut branch: Vec<usize> = Vec::new();
    for &k in kappa {
        while branch.last().is_some_and(|&v| colors[v] >= k) {
            branch.pop();
        }
        let id = colors.len();
        colors.push(k);
        kids.push(Vec::new());
        if let Some(&parent) = branch.last() {
            kids[parent].push(id);
        }
        branch.push(id);
    }
    fn build(v: usize, colors: &[i32], kids: &[Vec<usize>]) -> PTree {
        PTree { color: colors[v], children: kids[v].iter().map(|&c| build(c, colors, kids)).collect() }
    }
    Ok(build(0, &colors, &kids))
}

/// Answer of a membership query; `None` when the question cannot be decided.
pub trait Membership {
    fn member(&self, w: &[i32]) -> Option<bool>;
}

impl<C: Coefficient> Membership for Series<C> {
    fn member(&self, w: &[i32]) -> Option<bool> {
        self.coefficient(&Word::from_slice(w)).ok().map(|c| !c.is_zero())
    }
}

impl Membership for LinkedLanguage {
    fn member(&self, w: &[i32]) -> Option<bool> {
        Some(self.accepts(w))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid,
    /// Some child word escapes the membership oracle's window.
    Undecidable,
}

/// Check that the root has `root_color` and every vertex's children colors,
/// lowered by the vertex color, form a word of `m`.
pub fn validate_tree(t: &PTree, m: &impl Membership, root_color: i32) -> Verdict {
    if t.color != root_color {
        return Verdict::Invalid;
    }
    fn walk(t: &PTree, m: &impl Membership) -> Verdict {
        let rel: Vec<i32> = t.children.iter().map(|c| c.color - t.color).collect();
        let mut verdict = match m.member(&rel) {
            Some(true) => Verdict::Valid,
            Some(false) => return Verdict::Invalid,
            None => Verdict::Undecidable,
        };
        for c in &t.children {
            match walk(c, m) {
                Verdict::Invalid => return Verdict::Invalid,
                Verdict::Undecidable => verdict = Verdict::Undecidable,
                Verdict::Valid => {}
            }
        }
        verdict
    }
    walk(t, m)
}

impl fmt::Display for PTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.color)?;
        if !self.children.is_empty() {
            write!(f, "(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl FromStr for PTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let t = parse_tree(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::Parse(format!("trailing input at byte {pos} in {s:?}")));
        }
        Ok(t)
    }
}

fn parse_tree(b: &[u8], pos: &mut usize) -> Result<PTree> {
    let start = *pos;
    if *pos < b.len() && b[*pos] == b'-' {
        *pos += 1;
    }
    while *pos < b.len() && b[*pos].is_ascii_digit() {
        *pos += 1;
    }
    let color: i32 = std::str::from_utf8(&b[start..*pos])
        .ok()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected a color at byte {start}")))?;
    let mut children = Vec::new();
    if *pos < b.len() && b[*pos] == b'(' {
        *pos += 1;
        loop {
            children.push(parse_tree(b, pos)?);
            match b.get(*pos) {
                Some(b' ') => *pos += 1,
                Some(b')') => {
                    *pos += 1;
                    break;
                }
                _ => return Err(Error::Parse(format!("expected ' ' or ')' at byte {pos}"))),
            }
        }
    }
    Ok(PTree { color, children })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::languages::{build_language, LanguageKind};
    use crate::window::TruncationWindow;

    fn t(s: &str) -> PTree {
        s.parse().unwrap()
    }

    #[test]
    fn preorder_examples() {
        assert_eq!(preorder_word(&PTree::leaf(3)), Word::from([3]));
        assert_eq!(preorder_word(&t("0(1 1)")), Word::from([0, 1, 1]));
        assert_eq!(preorder_word(&t("3(5(7 7) 4(5))")), Word::from([3, 5, 7, 7, 4, 5]));
    }

    #[test]
    fn text_round_trip() {
        for s in ["3", "0(1 1)", "3(5(7 7) 4(5))", "-1(0(2))"] {
            assert_eq!(t(s).to_string(), s);
        }
        for bad in ["", "3(", "3()", "3(4", "(4)", "3 4"] {
            assert!(bad.parse::<PTree>().is_err(), "{bad}");
        }
    }

    #[test]
    fn insertion_examples() {
        assert_eq!(insertion_tree(&[3, 5, 7, 7, 4, 5]).unwrap(), t("3(5(7 7) 4(5))"));
        assert_eq!(insertion_tree(&[4]).unwrap(), PTree::leaf(4));
        assert_eq!(insertion_tree(&[1, 2, 2]).unwrap(), t("1(2 2)"));
        assert!(insertion_tree(&[2, 3, 2]).is_err());
        assert!(insertion_tree(&[0, 1]).is_err());
        assert!(insertion_tree(&[]).is_err());
    }

    #[test]
    fn validation_examples() {
        let w = TruncationWindow::new(6, 10);
        let pi2 = build_language(&LanguageKind::PiM(2), &w).unwrap();
        assert_eq!(validate_tree(&t("0(2 1)"), &pi2, 0), Verdict::Valid);
        assert_eq!(validate_tree(&t("0(1 2)"), &pi2, 0), Verdict::Invalid);
        assert_eq!(validate_tree(&t("0(2 1)"), &pi2, 1), Verdict::Invalid);
        let pi_inf = build_language(&LanguageKind::PiInf, &w).unwrap();
        let fig = insertion_tree(&[3, 5, 7, 7, 4, 5]).unwrap();
        assert_eq!(validate_tree(&fig, &pi_inf, 3), Verdict::Valid);
        let small = build_language(&LanguageKind::PiInf, &TruncationWindow::new(1, 10)).unwrap();
        assert_eq!(validate_tree(&fig, &small, 3), Verdict::Undecidable);
        let lang = LanguageKind::PiInf.linked().unwrap().unwrap();
        assert_eq!(validate_tree(&fig, &lang, 3), Verdict::Valid);
    }
}
