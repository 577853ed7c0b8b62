//! Enumeration of maximal subsets (remainders).
//!
//! A closed subset of a belief set with models `M` has models `M ∪ W` for some
//! set `W` of extra models. A remainder drops every non-tautological visible
//! formula (some model of `W` falsifies each member one), is closed, is
//! maximal (no closed set strictly between it and the original drops them
//! too), and restores the original set when the dropped formulas are added
//! back. Maximal theories are minimal `W`, so candidates are enumerated by
//! increasing size with supersets of earlier hits skipped.

use crate::belief::{BeliefSet, Incoming};
use crate::error::Error;
use crate::logic::{models_of, Formula, ModelSet};

/// Outcome of the search together with the number of candidates examined.
#[derive(Debug, Clone)]
pub struct RemainderSearch {
    pub remainders: Vec<BeliefSet>,
    pub examined: usize,
}

/// `Δ(bs, info)`.
pub fn remainders(bs: &BeliefSet, info: &impl Incoming) -> Result<Vec<BeliefSet>, Error> {
    search(bs, &info.visible(bs)).map(|s| s.remainders)
}

/// Remainders with respect to an explicit visible set.
pub fn search(bs: &BeliefSet, visible: &[Formula]) -> Result<RemainderSearch, Error> {
    let universe = bs.universe();
    let targets: Vec<ModelSet> = visible
        .iter()
        .map(|f| models_of(f, universe))
        .filter(|m| !m.is_full())
        .collect();
    if targets.is_empty() {
        return Ok(RemainderSearch {
            remainders: Vec::new(),
            examined: 0,
        });
    }
    let held: Vec<&ModelSet> = targets
        .iter()
        .filter(|m| bs.models().is_subset(m))
        .collect();
    if held.is_empty() {
        return Ok(RemainderSearch {
            remainders: vec![bs.clone()],
            examined: 0,
        });
    }

    let limit = bs.context().work_limit();
    let base = bs.models().clone();
    let free = base.complement();
    // Every candidate must contain a countermodel of each held formula.
    let counters: Vec<ModelSet> = held.iter().map(|m| free.minus(m)).collect();

    let mut examined = 0usize;
    let mut found: Vec<(ModelSet, BeliefSet)> = Vec::new();
    let mut pool: Vec<usize> = free.iter().collect();

    let tick = |examined: &mut usize| -> Result<(), Error> {
        *examined += 1;
        if *examined > limit {
            return Err(Error::WorkLimitExceeded { limit });
        }
        Ok(())
    };
    let check = |w: &ModelSet| -> Option<BeliefSet> {
        if !counters.iter().all(|c| c.intersects(w)) {
            return None;
        }
        let theory = base.or(w);
        let closed = BeliefSet::from_models(bs.context(), theory.clone(), bs.links().clone());
        (closed.models() == &theory).then_some(closed)
    };

    // Singletons first: every valid one leaves the pool, since any larger
    // candidate containing it would not be minimal.
    let mut rest = Vec::with_capacity(pool.len());
    for &m in &pool {
        let w = ModelSet::from_indices(base.atom_count(), [m]);
        tick(&mut examined)?;
        match check(&w) {
            Some(b) => found.push((w, b)),
            None => rest.push(m),
        }
    }
    pool = rest;

    let mut size = 2;
    while size <= pool.len() {
        let pool_set = ModelSet::from_indices(base.atom_count(), pool.iter().copied());
        if !counters.iter().all(|c| c.intersects(&pool_set)) {
            break;
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let w = ModelSet::from_indices(base.atom_count(), idx.iter().map(|&i| pool[i]));
            tick(&mut examined)?;
            if !found.iter().any(|(f, _)| f.is_subset(&w)) {
                if let Some(b) = check(&w) {
                    found.push((w, b));
                }
            }
            if !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
        size += 1;
    }

    // Adding the held visible formulas back must restore the original set.
    let held_models = held
        .iter()
        .fold(ModelSet::full(base.atom_count()), |acc, m| acc.and(m));
    let remainders = found
        .into_iter()
        .map(|(_, b)| b)
        .filter(|b| {
            let back = BeliefSet::from_models(
                bs.context(),
                b.models().and(&held_models),
                bs.links().clone(),
            );
            &back == bs
        })
        .collect();
    Ok(RemainderSearch {
        remainders,
        examined,
    })
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic
/// order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations() {
        let mut idx = vec![0, 1];
        let mut seen = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![2, 3]);
    }
}
