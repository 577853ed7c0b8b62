//! Propositional logic over a finite atom universe.
//!
//! Semantics is by exhaustive model enumeration: every formula denotes the
//! [`ModelSet`] of assignments satisfying it, and entailment, equivalence and
//! consistency reduce to bitset operations.

mod formula;
mod models;
mod parse;

pub use formula::{canonical, negate, nnf, Display, Formula, Universe, DEFAULT_ATOM_LIMIT};
pub use models::{Model, ModelSet};
pub use parse::parse;

pub(crate) use formula::is_identifier;

/// Models of `f` over `universe`.
pub fn models_of(f: &Formula, universe: &Universe) -> ModelSet {
    let n = universe.len();
    match f {
        Formula::Top => ModelSet::full(n),
        Formula::Bot => ModelSet::empty(n),
        Formula::Atom(i) => universe.atom_models(*i).clone(),
        Formula::Not(a) => models_of(a, universe).complement(),
        Formula::And(a, b) => {
            let mut m = models_of(a, universe);
            if !m.is_empty() {
                m.and_assign(&models_of(b, universe));
            }
            m
        }
        Formula::Or(a, b) => {
            let mut m = models_of(a, universe);
            if !m.is_full() {
                m.or_assign(&models_of(b, universe));
            }
            m
        }
    }
}

/// Models of the conjunction of `premises`.
pub fn models_of_all<'a>(
    premises: impl IntoIterator<Item = &'a Formula>,
    universe: &Universe,
) -> ModelSet {
    let mut m = ModelSet::full(universe.len());
    for p in premises {
        m.and_assign(&models_of(p, universe));
    }
    m
}

/// `premises ⊨ f`: every model of all premises satisfies `f`.
pub fn entails(premises: &[Formula], f: &Formula, universe: &Universe) -> bool {
    models_of_all(premises, universe).is_subset(&models_of(f, universe))
}

pub fn equivalent(a: &Formula, b: &Formula, universe: &Universe) -> bool {
    models_of(a, universe) == models_of(b, universe)
}

pub fn is_tautology(f: &Formula, universe: &Universe) -> bool {
    models_of(f, universe).is_full()
}

pub fn is_contradiction(f: &Formula, universe: &Universe) -> bool {
    models_of(f, universe).is_empty()
}

/// The conjunction of `set` has at least one model.
pub fn is_consistent_semantic(set: &[Formula], universe: &Universe) -> bool {
    !models_of_all(set, universe).is_empty()
}

/// No formula occurs in `set` together with its negation, comparing
/// canonical forms.
pub fn is_consistent_syntactic(set: &[Formula]) -> bool {
    let canon: std::collections::HashSet<Formula> = set.iter().map(canonical).collect();
    !set
        .iter()
        .any(|f| canon.contains(&canonical(&Formula::not(f.clone()))))
}
