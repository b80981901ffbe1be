//! Shift-plethysm, implicit shift-plethystic equations and plethystic
//! inversion.
//!
//! `R ∘ₛ S` replaces every letter `X_k` of every word of `R` by `σᵏS`.
//! Both plethysm and the implicit-equation solver go through one
//! substitution engine: the words being substituted into are walked as a
//! trie, so a shared prefix is multiplied out once.

use std::hash::Hash;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::par::{self, Terms};
use crate::rational::Rational;
use crate::series::{series_mul, shift, Series};
use crate::window::TruncationWindow;
use crate::word::Word;

/// Image of one letter under a substitution, bucketed by word length.
struct Block<C> {
    by_len: Vec<Vec<(Word, C)>>,
    valuation: usize,
}

impl<C: Coefficient> Block<C> {
    fn new(terms: impl IntoIterator<Item = (Word, C)>, max_len: usize) -> Self {
        let mut by_len = vec![Vec::new(); max_len + 1];
        let mut valuation = max_len + 1;
        for (w, c) in terms {
            if w.len() <= max_len && !c.is_zero() {
                valuation = valuation.min(w.len());
                by_len[w.len()].push((w, c));
            }
        }
        Block { by_len, valuation }
    }

    fn is_empty(&self) -> bool {
        self.valuation >= self.by_len.len()
    }
}

/// Largest letter (at least 0) plus length.
fn grade(w: &Word) -> usize {
    w.max_letter().map_or(0, |k| k.max(0) as usize) + w.len()
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Node<L, C> {
    /// Coefficient of the word ending here.
    end: Option<C>,
    kids: Vec<(L, usize)>,
}

/// The words being substituted into, stored as a trie in which identical
/// subtries are shared. Languages defined by local rules collapse to a few
/// nodes per depth.
struct SuffixDag<L, C> {
    nodes: Vec<Node<L, C>>,
    /// Length of the shortest word below each node.
    shortest: Vec<usize>,
    root: usize,
}

impl<L: Copy + Ord + Hash, C: Coefficient> SuffixDag<L, C> {
    fn build(mut terms: Vec<(SmallVec<[L; 8]>, C)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut dag = SuffixDag { nodes: Vec::new(), shortest: Vec::new(), root: 0 };
        let mut ids = FxHashMap::default();
        dag.root = dag.intern(&terms, 0, &mut ids);
        dag
    }

    /// `terms` share their first `depth` letters and are sorted.
    fn intern(
        &mut self,
        terms: &[(SmallVec<[L; 8]>, C)],
        depth: usize,
        ids: &mut FxHashMap<Node<L, C>, usize>,
    ) -> usize {
        let mut i = 0;
        let mut end: Option<C> = None;
        while i < terms.len() && terms[i].0.len() == depth {
            end.get_or_insert_with(C::zero).add_assign_ref(&terms[i].1);
            i += 1;
        }
        let end = end.filter(|c| !c.is_zero());
        let mut kids = Vec::new();
        let mut rest = &terms[i..];
        while !rest.is_empty() {
            let letter = rest[0].0[depth];
            let stop = rest.iter().position(|t| t.0[depth] != letter).unwrap_or(rest.len());
            kids.push((letter, self.intern(&rest[..stop], depth + 1, ids)));
            rest = &rest[stop..];
        }
        let node = Node { end, kids };
        if let Some(&id) = ids.get(&node) {
            return id;
        }
        let shortest = if node.end.is_some() {
            0
        } else {
            node.kids.iter().map(|&(_, k)| self.shortest[k] + 1).min().unwrap_or(usize::MAX / 2)
        };
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.shortest.push(shortest);
        ids.insert(node, id);
        id
    }
}

/// `block · tail`, keeping words of length at most `budget` and grade at
/// most `cap`. `tail` is sorted by length.
fn prepend<C: Coefficient>(block: &Block<C>, tail: &[(Word, C)], budget: usize, cap: usize) -> Terms<C> {
    let mut acc: Terms<C> = FxHashMap::default();
    for bucket in block.by_len.iter().take(budget + 1) {
        for (v, cv) in bucket {
            let room = budget - v.len();
            for (t, ct) in tail.iter().take_while(|(t, _)| t.len() <= room) {
                let w = v.concat(t);
                if cap == usize::MAX || grade(&w) <= cap {
                    par::accumulate(&mut acc, w, cv.mul_ref(ct));
                }
            }
        }
    }
    acc
}

/// A parent node, the block of the letter leading to a child, and the
/// child's value.
type Product<'a, C> = (usize, &'a Block<C>, &'a [(Word, C)]);

/// Substitute `blocks[letter]` for every letter of every word in `dag`,
/// keeping output words of length at most `max_len` and [`grade`] at most
/// `cap`.
///
/// Evaluates bottom-up: the value of a node is the sum, over words below
/// it, of the product of the blocks of their remaining letters. Each shared
/// node is evaluated once per depth, since the depth fixes how much length
/// the letters above it use up at least.
fn substitute<C, L>(dag: &SuffixDag<L, C>, blocks: &FxHashMap<L, Block<C>>, max_len: usize, cap: usize) -> Terms<C>
where
    C: Coefficient,
    L: Copy + Ord + Hash + Send + Sync,
{
    let min_valuation = blocks.values().map(|b| b.valuation).min().unwrap_or(1).max(1);
    let live = |letter: &L| blocks.get(letter).is_some_and(|b| !b.is_empty());
    let fits = |id: usize, depth: usize| (depth + dag.shortest[id]).saturating_mul(min_valuation) <= max_len;

    let mut levels: Vec<Vec<usize>> = Vec::new();
    if fits(dag.root, 0) {
        levels.push(vec![dag.root]);
    }
    while let Some(last) = levels.last() {
        let depth = levels.len();
        let mut next: Vec<usize> = last
            .iter()
            .flat_map(|&id| dag.nodes[id].kids.iter())
            .filter(|(l, k)| live(l) && fits(*k, depth))
            .map(|&(_, k)| k)
            .collect();
        next.sort_unstable();
        next.dedup();
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }

    let mut below: FxHashMap<usize, Vec<(Word, C)>> = FxHashMap::default();
    for (depth, ids) in levels.iter().enumerate().rev() {
        let used = depth * min_valuation;
        let budget = max_len - used;
        let level_cap = if cap == usize::MAX { cap } else { cap.saturating_sub(used) };
        let items: Vec<Product<'_, C>> = ids
            .iter()
            .flat_map(|&id| dag.nodes[id].kids.iter().map(move |k| (id, k)))
            .filter_map(|(id, (l, k))| Some((id, blocks.get(l)?, below.get(k)?.as_slice())))
            .collect();
        let parts = par::map_collect(&items, |&(_, block, tail)| prepend(block, tail, budget, level_cap));

        let mut values: FxHashMap<usize, Terms<C>> = FxHashMap::default();
        for &id in ids {
            let mut own = FxHashMap::default();
            if let Some(c) = &dag.nodes[id].end {
                own.insert(Word::empty(), c.clone());
            }
            values.insert(id, own);
        }
        for ((id, _, _), part) in items.iter().zip(parts) {
            let slot = values.get_mut(id).expect("node of this level");
            *slot = par::merge(std::mem::take(slot), part);
        }
        below = values
            .into_iter()
            .map(|(id, mut terms)| {
                par::prune(&mut terms);
                let mut v: Vec<(Word, C)> = terms.into_iter().collect();
                v.sort_by_key(|(w, _)| w.len());
                (id, v)
            })
            .collect();
    }
    below.remove(&dag.root).unwrap_or_default().into_iter().collect()
}

/// `X_κ ∘ₛ S = (σ^{k₁}S)…(σ^{k_ℓ}S)`; the empty word maps to 1.
pub fn word_plethysm<C: Coefficient>(w: &Word, s: &Series<C>) -> Result<Series<C>> {
    if !s.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let mut acc = Series::one(*s.window());
    for &k in w.iter() {
        acc = series_mul(&acc, &shift(s, k));
    }
    Ok(acc)
}

/// Largest window on which `R ∘ₛ S` is certified by the input windows.
pub fn plethysm_window<C: Coefficient>(r: &Series<C>, s: &Series<C>) -> Result<TruncationWindow> {
    let (wr, ws) = (r.window(), s.window());
    let max_len = ws.max_len.min(wr.max_len.saturating_mul(s.valuation()));
    let max_letter = (wr.max_letter + ws.min_letter).min(ws.max_letter + wr.min_letter);
    let min_letter = wr.min_letter + ws.min_letter;
    if max_letter < min_letter {
        return Err(Error::EmptyCertifiedWindow);
    }
    Ok(TruncationWindow { max_len, max_letter, min_letter })
}

/// Shift-plethysm `R ∘ₛ S = Σ_κ ⟨R,X_κ⟩ (σ^{k₁}S)…(σ^{k_ℓ}S)`.
///
/// Only coefficients certified by both input windows are produced; see
/// [`plethysm_window`].
pub fn plethysm<C: Coefficient>(r: &Series<C>, s: &Series<C>) -> Result<Series<C>> {
    if !s.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let out = plethysm_window(r, s)?;
    let vs = s.valuation().max(1);
    let top = out.max_letter - s.window().min_letter;
    let terms: Vec<(SmallVec<[i32; 8]>, C)> = r
        .iter()
        .filter(|(w, _)| w.len().saturating_mul(vs) <= out.max_len && w.iter().all(|&k| k <= top))
        .map(|(w, c)| (w.0.clone(), c.clone()))
        .collect();

    let mut letters: Vec<i32> = terms.iter().flat_map(|t| t.0.iter().copied()).collect();
    letters.sort_unstable();
    letters.dedup();
    let blocks: FxHashMap<i32, Block<C>> = letters
        .into_iter()
        .map(|k| {
            let image = s
                .iter()
                .filter(|(w, _)| w.iter().all(|&a| a + k <= out.max_letter))
                .map(|(w, c)| (w.shifted(k), c.clone()));
            (k, Block::new(image, out.max_len))
        })
        .collect();
    let map = substitute(&SuffixDag::build(terms), &blocks, out.max_len, usize::MAX);
    Ok(Series::from_map(map, out))
}

/// Minimum letter over the nonempty support words stored in the window.
pub fn series_order<C: Coefficient>(r: &Series<C>) -> Result<i32> {
    r.iter().filter_map(|(w, _)| w.order()).min().ok_or(Error::ConstantSeries)
}

/// A letter of the doubled alphabet `{X_k} ∪ {Y_k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BiLetter {
    X(i32),
    Y(i32),
}

impl BiLetter {
    fn index(self) -> i32 {
        match self {
            BiLetter::X(k) | BiLetter::Y(k) => k,
        }
    }
}

pub type BiWord = SmallVec<[BiLetter; 8]>;

/// A series in the letters `X_k` and `Y_k`, the right-hand side `F(X;Y)` of
/// an implicit equation `Y₀ = F(X;Y)`. The window bounds both families.
#[derive(Clone, Debug)]
pub struct BiSeries<C: Coefficient = Rational> {
    terms: FxHashMap<BiWord, C>,
    window: TruncationWindow,
}

impl<C: Coefficient> BiSeries<C> {
    pub fn from_terms(terms: impl IntoIterator<Item = (BiWord, C)>, window: TruncationWindow) -> Self {
        let mut map: FxHashMap<BiWord, C> = FxHashMap::default();
        for (w, c) in terms {
            let certified = w.len() <= window.max_len && w.iter().all(|l| l.index() <= window.max_letter);
            if certified {
                map.entry(w).or_insert_with(C::zero).add_assign_ref(&c);
            }
        }
        map.retain(|_, c| !c.is_zero());
        BiSeries { terms: map, window }
    }

    fn embed(s: &Series<C>, tag: fn(i32) -> BiLetter) -> Self {
        Self::from_terms(s.iter().map(|(w, c)| (w.iter().map(|&k| tag(k)).collect(), c.clone())), *s.window())
    }

    /// `S(X)`.
    pub fn from_x(s: &Series<C>) -> Self {
        Self::embed(s, BiLetter::X)
    }

    /// `S(Y)`.
    pub fn from_y(s: &Series<C>) -> Self {
        Self::embed(s, BiLetter::Y)
    }

    pub fn window(&self) -> &TruncationWindow {
        &self.window
    }

    pub fn coefficient(&self, w: &[BiLetter]) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn valuation(&self) -> usize {
        self.terms.keys().map(|w| w.len()).min().unwrap_or(self.window.max_len + 1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (wa, wb) = (self.window, other.window);
        let max_len = wa.max_len.max(wb.max_len).min(wa.max_len + other.valuation()).min(wb.max_len + self.valuation());
        let window = TruncationWindow {
            max_len,
            max_letter: wa.max_letter.min(wb.max_letter),
            min_letter: wa.min_letter.min(wb.min_letter),
        };
        let mut terms = Vec::new();
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                if u.len() + v.len() <= max_len {
                    let mut w = u.clone();
                    w.extend_from_slice(v);
                    terms.push((w, cu.mul_ref(cv)));
                }
            }
        }
        Self::from_terms(terms, window)
    }

    pub fn linear(parts: &[(Rational, &Self)]) -> Result<Self> {
        let (_, first) = parts.first().ok_or(Error::EmptyCombination)?;
        let window = parts.iter().skip(1).fold(first.window, |w, (_, s)| w.meet(&s.window));
        let terms = parts
            .iter()
            .flat_map(|(r, s)| s.terms.iter().map(move |(w, c)| (w.clone(), c.scale(r))))
            .collect::<Vec<_>>();
        Ok(Self::from_terms(terms, window))
    }

    /// `X₀·M(Y)`, the right-hand side defining `M`-enriched trees.
    pub fn x0_times_y(m: &Series<C>) -> Self {
        let w = m.window();
        let window = TruncationWindow { max_len: w.max_len + 1, ..*w };
        Self::from_terms(
            m.iter().map(|(word, c)| {
                let mut bw: BiWord = SmallVec::new();
                bw.push(BiLetter::X(0));
                bw.extend(word.iter().map(|&k| BiLetter::Y(k)));
                (bw, c.clone())
            }),
            window,
        )
    }
}

fn check_implicit<C: Coefficient>(f: &BiSeries<C>, window: &TruncationWindow) -> Result<()> {
    if !f.coefficient(&[]).is_zero() {
        return Err(Error::ImplicitPrecondition("F has a constant term".into()));
    }
    if !f.coefficient(&[BiLetter::Y(0)]).is_zero() {
        return Err(Error::ImplicitPrecondition("F has a Y₀ term".into()));
    }
    if window.min_letter < 0 {
        return Err(Error::ImplicitPrecondition("solver window must have floor >= 0".into()));
    }
    if !f.window.covers(window) {
        return Err(Error::ImplicitPrecondition(format!(
            "F is certified on {} but the solution was requested on {}",
            f.window, window
        )));
    }
    Ok(())
}

/// One substitution step `G ↦ F(X; G, σG, σ²G, …)` on `window`, keeping
/// words of [`grade`] at most `cap`.
fn implicit_step<C: Coefficient>(
    dag: &SuffixDag<BiLetter, C>,
    g: &Series<C>,
    window: &TruncationWindow,
    cap: usize,
) -> Series<C> {
    let mut letters: Vec<BiLetter> = dag.nodes.iter().flat_map(|n| n.kids.iter().map(|&(l, _)| l)).collect();
    letters.sort_unstable();
    letters.dedup();
    let blocks: FxHashMap<BiLetter, Block<C>> = letters
        .into_iter()
        .map(|l| {
            let block = match l {
                BiLetter::X(k) => Block::new([(Word::letter(k), C::one())], window.max_len),
                BiLetter::Y(k) => Block::new(
                    g.iter()
                        .filter(|(w, _)| w.iter().all(|&a| a + k <= window.max_letter))
                        .map(|(w, c)| (w.shifted(k), c.clone())),
                    window.max_len,
                ),
            };
            (l, block)
        })
        .collect();
    let map = substitute(dag, &blocks, window.max_len, cap);
    Series::from_terms(map, *window)
}

fn certified_terms<C: Coefficient>(f: &BiSeries<C>, window: &TruncationWindow) -> SuffixDag<BiLetter, C> {
    SuffixDag::build(
        f.terms
            .iter()
            .filter(|(w, _)| w.len() <= window.max_len && w.iter().all(|l| l.index() <= window.max_letter))
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect(),
    )
}

/// The iterate `G⁽ⁿ⁾` of `G⁽⁰⁾ = 0`, `G⁽ⁿ⁺¹⁾ = F(X; G⁽ⁿ⁾)`.
pub fn implicit_iterate<C: Coefficient>(f: &BiSeries<C>, window: &TruncationWindow, n: usize) -> Result<Series<C>> {
    check_implicit(f, window)?;
    let terms = certified_terms(f, window);
    let mut g = Series::zero(*window);
    for _ in 0..n {
        g = implicit_step(&terms, &g, window, usize::MAX);
    }
    Ok(g)
}

/// `G⁽ⁿ⁾` cut to words with largest letter plus length at most `n`.
///
/// Those coefficients only depend on words strictly lower in that grading,
/// so each cut iterate is an exact truncation of the solution, and the
/// unsettled remainder, which can fill the whole window, is never carried
/// along.
fn graded_iterate<C: Coefficient>(terms: &SuffixDag<BiLetter, C>, window: &TruncationWindow, n: usize) -> Series<C> {
    let mut g = Series::zero(*window);
    for step in 1..=n {
        g = implicit_step(terms, &g, window, step);
    }
    g
}

/// Iteration count after which every coefficient on `window` is stable:
/// a word with largest letter `k` and length `ℓ` settles by step `k + ℓ`.
pub fn stabilization_bound(window: &TruncationWindow) -> usize {
    window.max_letter.max(0) as usize + window.max_len
}

/// Result of [`solve_implicit_traced`].
#[derive(Clone, Debug)]
pub struct ImplicitSolution<C: Coefficient> {
    pub series: Series<C>,
    pub iterations: usize,
}

/// Solve `G = F(X; G, σG, σ²G, …)` on `window`.
///
/// Runs exactly [`stabilization_bound`] iterations from zero, each cut to
/// the words it has already settled, then checks that one more full
/// iteration changes nothing on the window.
pub fn solve_implicit<C: Coefficient>(f: &BiSeries<C>, window: &TruncationWindow) -> Result<Series<C>> {
    solve_implicit_traced(f, window).map(|s| s.series)
}

pub fn solve_implicit_traced<C: Coefficient>(
    f: &BiSeries<C>,
    window: &TruncationWindow,
) -> Result<ImplicitSolution<C>> {
    check_implicit(f, window)?;
    let terms = certified_terms(f, window);
    let n = stabilization_bound(window);
    let g = graded_iterate(&terms, window, n);
    let next = implicit_step(&terms, &g, window, usize::MAX);
    if let Some((w, _, _)) = g.first_discrepancy(&next) {
        return Err(Error::FixedPointCheck(w));
    }
    Ok(ImplicitSolution { series: g, iterations: n })
}

/// Right-hand side `(1/α)(X₀ − R⁺(Y))` whose solution is `R^⟨−1⟩` for a
/// series of order zero with `⟨R,X₀⟩ = α`.
pub fn inverse_equation<C: Coefficient>(r: &Series<C>) -> Result<BiSeries<C>> {
    let x0 = Word::letter(0);
    let alpha = r.coefficient(&x0)?;
    let alpha_inv =
        alpha.inverse().ok_or_else(|| Error::NotPlethysticallyInvertible(format!("⟨R,X₀⟩ = {alpha} is not a unit")))?;
    let window = *r.window();
    let r_plus = r.sub(&Series::monomial(x0.clone(), alpha, window));
    let f = BiSeries::linear(&[
        (Rational::one(), &BiSeries::from_x(&Series::letter(0, window))),
        (Rational::one().neg(), &BiSeries::from_y(&r_plus)),
    ])?;
    Ok(BiSeries::from_terms(f.terms.into_iter().map(|(w, c)| (w, c.mul_ref(&alpha_inv))), f.window))
}

/// Shift-plethystic inverse. For a series of order `n ≠ 0` the order-zero
/// series `σ⁻ⁿR` is inverted and the result shifted by `−n`.
///
/// The order is read off the window, so the lowest-order word of `R` must
/// lie inside it.
pub fn plethystic_inverse<C: Coefficient>(r: &Series<C>) -> Result<Series<C>> {
    if !r.constant_term().is_zero() {
        return Err(Error::NotPlethysticallyInvertible("nonzero constant term".into()));
    }
    let n = series_order(r)?;
    let alpha = r.coefficient(&Word::letter(n))?;
    if alpha.is_zero() {
        return Err(Error::NotPlethysticallyInvertible(format!("⟨R,X_{n}⟩ = 0 at the order {n}")));
    }
    let base = shift(r, -n).with_floor(0)?;
    if base.window().max_letter < 0 {
        return Err(Error::EmptyCertifiedWindow);
    }
    let f = inverse_equation(&base)?;
    let h = solve_implicit(&f, base.window())?;
    Ok(shift(&h, -n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win(l: usize, k: i32) -> TruncationWindow {
        TruncationWindow::new(l, k)
    }

    fn words(ws: &[&[i32]], w: TruncationWindow) -> Series {
        Series::from_terms(ws.iter().map(|x| (Word::from(*x), Rational::one())), w)
    }

    #[test]
    fn word_plethysm_examples() {
        let w = win(4, 8);
        let s = words(&[&[0, 1], &[2]], w);
        assert_eq!(word_plethysm(&Word::from([3]), &s).unwrap(), shift(&s, 3));
        assert_eq!(word_plethysm(&Word::empty(), &s).unwrap(), Series::<Rational>::one(w));
        let x1 = Series::<Rational>::letter(1, w);
        let p = word_plethysm(&Word::from([0, 0]), &x1).unwrap();
        assert_eq!(p, Series::monomial(Word::from([1, 1]), Rational::one(), w));
        let bad = Series::<Rational>::one(w);
        assert_eq!(word_plethysm(&Word::from([1]), &bad).unwrap_err(), Error::NonzeroConstantTerm);
    }

    #[test]
    fn plethysm_by_x0_is_identity() {
        let w = win(4, 6);
        let s = words(&[&[0], &[1, 3], &[2, 2, 0]], w);
        let p = plethysm(&Series::<Rational>::letter(0, w), &s).unwrap();
        assert_eq!(p, s);
        assert_eq!(*p.window(), w);
    }

    #[test]
    fn plethysm_matches_termwise_definition() {
        let w = win(4, 7);
        let r = Series::from_terms(
            [
                (Word::empty(), Rational::from(2)),
                (Word::from([0]), Rational::one()),
                (Word::from([1, 0]), Rational::from(-3)),
                (Word::from([2, 1, 0]), Rational::new(1, 2)),
            ],
            w,
        );
        let s = words(&[&[0], &[0, 1]], w);
        let mut expect = Series::zero(w);
        for (word, c) in r.iter() {
            expect = expect.add(&word_plethysm(word, &s).unwrap().scale(c));
        }
        assert_eq!(plethysm(&r, &s).unwrap(), expect);
    }

    #[test]
    fn plethysm_constant_term_and_output_window() {
        let w = win(3, 3);
        assert_eq!(
            plethysm(&Series::<Rational>::letter(0, w), &Series::<Rational>::one(w)).unwrap_err(),
            Error::NonzeroConstantTerm
        );
        let r = Series::<Rational>::letter(1, w);
        let s = Series::<Rational>::letter(-1, TruncationWindow::with_floor(3, 5, -1));
        let out = TruncationWindow::with_floor(3, 2, -1);
        assert_eq!(plethysm_window(&r, &s).unwrap(), out);
        let p = plethysm(&r, &s).unwrap();
        assert_eq!(*p.window(), out);
        assert_eq!(p, Series::letter(0, out));
    }

    #[test]
    fn solver_constant_map() {
        let w = win(3, 4);
        let f = BiSeries::from_x(&Series::<Rational>::letter(0, w));
        assert_eq!(solve_implicit(&f, &w).unwrap(), Series::<Rational>::letter(0, w));
        assert_eq!(implicit_iterate(&f, &w, 1).unwrap(), Series::<Rational>::letter(0, w));
    }

    #[test]
    fn solver_chain_example() {
        // F = X₀(1 + Y₁): solution words are the chains (0,1,…,j)
        let w = win(4, 6);
        let one_plus_y1 = Series::<Rational>::one(w).add(&Series::<Rational>::letter(1, w));
        let f = BiSeries::x0_times_y(&one_plus_y1);
        let g = solve_implicit(&f, &w).unwrap();
        assert_eq!(g.coefficient(&Word::from([0, 1])).unwrap(), Rational::one());
        assert_eq!(g.coefficient(&Word::from([0, 2])).unwrap(), Rational::zero());
        assert_eq!(g, words(&[&[0], &[0, 1], &[0, 1, 2], &[0, 1, 2, 3]], w));
        let two = implicit_iterate(&f, &w, 2).unwrap();
        assert_eq!(two.coefficient(&Word::from([0, 1])).unwrap(), Rational::one());
    }

    #[test]
    fn solver_preconditions() {
        let w = win(3, 3);
        let with_y0 = BiSeries::from_y(&Series::<Rational>::letter(0, w));
        assert!(matches!(solve_implicit(&with_y0, &w), Err(Error::ImplicitPrecondition(_))));
        let with_const = BiSeries::from_x(&Series::<Rational>::one(w));
        assert!(matches!(solve_implicit(&with_const, &w), Err(Error::ImplicitPrecondition(_))));
        let f = BiSeries::from_x(&Series::<Rational>::letter(0, w));
        assert!(matches!(solve_implicit(&f, &win(5, 3)), Err(Error::ImplicitPrecondition(_))));
    }

    #[test]
    fn order_examples() {
        let w = TruncationWindow::with_floor(3, 5, -1);
        let sigma1 = Series::from_terms((1..=5).map(|k| (Word::letter(k), Rational::one())), w);
        assert_eq!(series_order(&sigma1).unwrap(), 1);
        let inv = Series::<Rational>::letter(-1, w).sub(&Series::<Rational>::letter(0, w));
        assert_eq!(series_order(&inv).unwrap(), -1);
        assert_eq!(series_order(&Series::<Rational>::one(w)).unwrap_err(), Error::ConstantSeries);
    }

    #[test]
    fn inverse_of_x0() {
        let w = win(4, 5);
        assert_eq!(plethystic_inverse(&Series::<Rational>::letter(0, w)).unwrap(), Series::<Rational>::letter(0, w));
    }

    #[test]
    fn inverse_needs_unit_at_order() {
        let w = win(3, 4);
        let r = Series::monomial(Word::from([0, 1]), Rational::one(), w);
        assert!(matches!(plethystic_inverse(&r), Err(Error::NotPlethysticallyInvertible(_))));
    }

    #[test]
    fn inverse_of_scaled_letter() {
        let w = win(3, 4);
        let r = Series::<Rational>::letter(0, w).scale(&Rational::from(3)).add(&Series::monomial(
            Word::from([0, 0]),
            Rational::one(),
            w,
        ));
        let inv = plethystic_inverse(&r).unwrap();
        let x0 = Series::<Rational>::letter(0, w);
        assert_eq!(plethysm(&r, &inv).unwrap(), x0);
        assert_eq!(plethysm(&inv, &r).unwrap(), x0);
    }

    #[test]
    fn shared_subtries_are_stored_once() {
        let all: Vec<(SmallVec<[i32; 8]>, Rational)> = (0..=3usize)
            .flat_map(|len| {
                (0..3usize.pow(len as u32)).map(move |mut code| {
                    let mut w = SmallVec::new();
                    for _ in 0..len {
                        w.push((code % 3) as i32 + 1);
                        code /= 3;
                    }
                    (w, Rational::one())
                })
            })
            .collect();
        assert_eq!(all.len(), 40);
        let dag = SuffixDag::build(all);
        assert_eq!(dag.nodes.len(), 4);
        assert_eq!(dag.shortest[dag.root], 0);

        let increasing =
            vec![(SmallVec::from_slice(&[1, 2]), Rational::one()), (SmallVec::from_slice(&[2]), Rational::one())];
        let dag = SuffixDag::build(increasing);
        assert_eq!(dag.nodes.len(), 3);
    }
}
