//! Selection functions over remainder sets.

use std::fmt;
use std::sync::Arc;

use crate::belief::BeliefSet;
use crate::error::Error;
use crate::logic::Formula;

type Rank = Arc<dyn Fn(&BeliefSet) -> i64 + Send + Sync>;
type Chooser = Arc<dyn Fn(&[BeliefSet]) -> Vec<usize> + Send + Sync>;

/// `γ`: picks a non-empty subset of the remainders.
#[derive(Clone)]
pub enum SelectionFunction {
    /// Keep every remainder (full meet).
    All,
    /// Pre-order induced by a priority list: a remainder retaining an earlier
    /// listed formula ranks higher; ties are broken by how many listed
    /// formulas it retains; all best elements are kept.
    Prefer(Vec<Formula>),
    /// Total pre-order given by a score; all maximal elements are kept.
    Ranked(Rank),
    /// Explicit choice of indices into the remainder list.
    Choose(Chooser),
}

impl SelectionFunction {
    pub fn ranked(f: impl Fn(&BeliefSet) -> i64 + Send + Sync + 'static) -> Self {
        SelectionFunction::Ranked(Arc::new(f))
    }

    pub fn choose(f: impl Fn(&[BeliefSet]) -> Vec<usize> + Send + Sync + 'static) -> Self {
        SelectionFunction::Choose(Arc::new(f))
    }

    /// Whether the selection is driven by a total pre-order.
    pub fn is_preorder(&self) -> bool {
        matches!(self, SelectionFunction::Prefer(_) | SelectionFunction::Ranked(_))
    }
}

impl fmt::Debug for SelectionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionFunction::All => write!(f, "All"),
            SelectionFunction::Prefer(list) => f.debug_tuple("Prefer").field(list).finish(),
            SelectionFunction::Ranked(_) => write!(f, "Ranked(..)"),
            SelectionFunction::Choose(_) => write!(f, "Choose(..)"),
        }
    }
}

/// Rank of a remainder under a priority list; larger is better.
fn preference(list: &[Formula], bs: &BeliefSet) -> (i64, usize) {
    let retained: Vec<usize> = list
        .iter()
        .enumerate()
        .filter(|(_, f)| bs.member(f))
        .map(|(i, _)| i)
        .collect();
    let earliest = retained.first().copied().unwrap_or(list.len());
    (-(earliest as i64), retained.len())
}

fn maxima<K: Ord>(delta: &[BeliefSet], key: impl Fn(&BeliefSet) -> K) -> Vec<BeliefSet> {
    let keys: Vec<K> = delta.iter().map(&key).collect();
    let Some(best) = keys.iter().max() else {
        return Vec::new();
    };
    delta
        .iter()
        .zip(&keys)
        .filter(|(_, k)| *k == best)
        .map(|(b, _)| b.clone())
        .collect()
}

/// `γ(Δ)`, or `{fallback}` when `Δ` is empty.
pub fn select(
    sel: &SelectionFunction,
    delta: &[BeliefSet],
    fallback: &BeliefSet,
) -> Result<Vec<BeliefSet>, Error> {
    if delta.is_empty() {
        return Ok(vec![fallback.clone()]);
    }
    match sel {
        SelectionFunction::All => Ok(delta.to_vec()),
        SelectionFunction::Prefer(list) => Ok(maxima(delta, |b| preference(list, b))),
        SelectionFunction::Ranked(rank) => Ok(maxima(delta, |b| rank(b))),
        SelectionFunction::Choose(choose) => {
            let mut picked = choose(delta);
            picked.sort_unstable();
            picked.dedup();
            if picked.is_empty() {
                return Err(Error::EmptySelection);
            }
            picked
                .into_iter()
                .map(|i| {
                    delta.get(i).cloned().ok_or(Error::SelectionOutOfRange {
                        index: i,
                        len: delta.len(),
                    })
                })
                .collect()
        }
    }
}
