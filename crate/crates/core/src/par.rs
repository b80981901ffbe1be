//! Data-parallel helpers. With the `parallel` feature these run on the rayon
//! pool; without it they are plain sequential loops with identical results.

use rustc_hash::FxHashMap;

use crate::coeff::Coefficient;
use crate::word::Word;

pub(crate) type Terms<C> = FxHashMap<Word, C>;

#[cfg(feature = "parallel")]
pub(crate) fn fold_chunks<T, R, I, F, G>(items: &[T], chunk: usize, identity: I, fold: F, reduce: G) -> R
where
    T: Sync,
    R: Send,
    I: Fn() -> R + Sync + Send,
    F: Fn(R, &[T]) -> R + Sync + Send,
    G: Fn(R, R) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_chunks(chunk.max(1)).fold(&identity, &fold).reduce(&identity, &reduce)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn fold_chunks<T, R, I, F, G>(items: &[T], chunk: usize, identity: I, fold: F, _reduce: G) -> R
where
    I: Fn() -> R,
    F: Fn(R, &[T]) -> R,
    G: Fn(R, R) -> R,
{
    items.chunks(chunk.max(1)).fold(identity(), fold)
}

#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

pub(crate) fn accumulate<C: Coefficient>(map: &mut Terms<C>, w: Word, c: C) {
    match map.entry(w) {
        std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().add_assign_ref(&c),
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// Sum two term maps, folding the smaller into the larger.
pub(crate) fn merge<C: Coefficient>(a: Terms<C>, b: Terms<C>) -> Terms<C> {
    let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    for (w, c) in small {
        accumulate(&mut big, w, c);
    }
    big
}

pub(crate) fn prune<C: Coefficient>(map: &mut Terms<C>) {
    map.retain(|_, c| !c.is_zero());
}

/// Default chunk size for splitting `n` items across the pool.
pub(crate) fn chunk_for(n: usize) -> usize {
    (n / 64).clamp(16, 4096)
}
