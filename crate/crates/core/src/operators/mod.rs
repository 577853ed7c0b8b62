//! Expansion, partial meet contraction and revision.
//!
//! * `expand` adds the incoming formulas and triplets and re-closes; newly
//!   believed triggers may reveal latent beliefs, possibly inconsistently.
//! * `contract` intersects the selected remainders (`⋂ γ(Δ)`).
//! * `revise` contracts by the negated visible part as a package, then expands
//!   by the visible part together with the information's triplets.

mod remainders;
mod selection;

use std::sync::Arc;

pub use remainders::{remainders, search, RemainderSearch};
pub use selection::{select, SelectionFunction};

use crate::belief::{visible, visible_neg, BeliefSet, Incoming, LinkStore, Rounds, TripletSet};
use crate::error::Error;
use crate::logic::{models_of_all, Formula, ModelSet};
use crate::association::BeliefTriplet;

/// A set of formulas taken as incoming information verbatim: every formula
/// is visible whatever the belief set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Package {
    pub formulas: Vec<Formula>,
    pub attributes: Vec<BeliefTriplet>,
}

impl Package {
    pub fn new(formulas: Vec<Formula>, attributes: Vec<BeliefTriplet>) -> Self {
        Package {
            formulas,
            attributes,
        }
    }

    pub fn formulas(formulas: Vec<Formula>) -> Self {
        Package {
            formulas,
            attributes: Vec::new(),
        }
    }
}

impl Incoming for Package {
    fn visible(&self, _bs: &BeliefSet) -> Vec<Formula> {
        self.formulas.clone()
    }

    fn explicit(&self) -> Vec<Formula> {
        self.formulas.clone()
    }

    fn attributes(&self) -> &[BeliefTriplet] {
        &self.attributes
    }
}

// ---------------------------------------------------------------------------
// Expansion
// ---------------------------------------------------------------------------

/// `bs + info`.
pub fn expand(bs: &BeliefSet, info: &impl Incoming) -> BeliefSet {
    expand_traced(bs, info).0
}

/// Expansion that also reports the triplets fired in each closure round.
pub fn expand_traced(bs: &BeliefSet, info: &impl Incoming) -> (BeliefSet, Rounds) {
    let universe = bs.universe();
    let models = bs.models().and(&models_of_all(&info.explicit(), universe));
    let links = extend_links(bs.links(), info.attributes(), universe);
    BeliefSet::close_traced(bs.context(), models, links)
}

fn extend_links(
    links: &Arc<LinkStore>,
    extra: &[BeliefTriplet],
    universe: &crate::logic::Universe,
) -> Arc<LinkStore> {
    if extra.is_empty() {
        return links.clone();
    }
    let mut store = (**links).clone();
    if store.add_all(extra, universe) {
        Arc::new(store)
    } else {
        links.clone()
    }
}

// ---------------------------------------------------------------------------
// Contraction
// ---------------------------------------------------------------------------

/// The closed intersection of belief sets: the union of their models,
/// re-closed. `sets` must be non-empty and share context and links.
pub fn meet(sets: &[BeliefSet]) -> BeliefSet {
    let first = &sets[0];
    if sets.len() == 1 {
        return first.clone();
    }
    let models = union_models(sets);
    BeliefSet::from_models(first.context(), models, first.links().clone())
}

/// The literal intersection: shared members (union of models) and shared
/// triplets, without re-closing. Inconsistent sets hold every triplet and so
/// do not constrain the triplet part.
pub fn raw_intersection(sets: &[BeliefSet]) -> BeliefSet {
    let first = &sets[0];
    let models = union_models(sets);
    let mut consistent = sets.iter().filter(|s| s.is_consistent());
    let triplets: TripletSet = match consistent.next() {
        None => first.triplets().clone(),
        Some(s) => consistent.fold(s.triplets().clone(), |acc, s| acc.intersection(s.triplets())),
    };
    first.raw(models, triplets)
}

fn union_models(sets: &[BeliefSet]) -> ModelSet {
    let mut models = sets[0].models().clone();
    for s in &sets[1..] {
        models.or_assign(s.models());
    }
    models
}

/// `bs ÷ info = ⋂ γ(Δ(bs, info))`; `bs` itself when `Δ` is empty.
pub fn contract(
    bs: &BeliefSet,
    info: &impl Incoming,
    sel: &SelectionFunction,
) -> Result<BeliefSet, Error> {
    let delta = remainders(bs, info)?;
    if delta.is_empty() {
        return Ok(bs.clone());
    }
    Ok(meet(&select(sel, &delta, bs)?))
}

// ---------------------------------------------------------------------------
// Revision
// ---------------------------------------------------------------------------

/// Intermediate results of a revision.
#[derive(Debug, Clone)]
pub struct Revision {
    pub visible: Vec<Formula>,
    pub visible_neg: Vec<Formula>,
    pub contracted: BeliefSet,
    pub result: BeliefSet,
    pub rounds: Rounds,
}

/// `bs * info`.
pub fn revise(
    bs: &BeliefSet,
    info: &impl Incoming,
    sel: &SelectionFunction,
) -> Result<BeliefSet, Error> {
    revise_stages(bs, info, sel).map(|r| r.result)
}

/// Revision exposing the contraction stage and the firing rounds of the
/// final expansion.
pub fn revise_stages(
    bs: &BeliefSet,
    info: &impl Incoming,
    sel: &SelectionFunction,
) -> Result<Revision, Error> {
    let v = visible(bs, info);
    let v_neg = visible_neg(bs, info);
    let contracted = contract(bs, &Package::formulas(v_neg.clone()), sel)?;
    let accepted = Package::new(v.clone(), info.attributes().to_vec());
    let (result, rounds) = expand_traced(&contracted, &accepted);
    Ok(Revision {
        visible: v,
        visible_neg: v_neg,
        contracted,
        result,
        rounds,
    })
}

// ---------------------------------------------------------------------------
// Conjunct substitution
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The visible set with every occurrence of the conjunction `conj` replaced
/// by one of its conjuncts.
pub fn substitute_conjunct(
    bs: &BeliefSet,
    info: &impl Incoming,
    conj: &Formula,
    side: Side,
) -> Result<Vec<Formula>, Error> {
    let Formula::And(left, right) = conj else {
        return Err(Error::ConjunctNotVisible);
    };
    let v = visible(bs, info);
    if !v.contains(conj) {
        return Err(Error::ConjunctNotVisible);
    }
    let part = match side {
        Side::Left => (**left).clone(),
        Side::Right => (**right).clone(),
    };
    let mut out: Vec<Formula> = Vec::new();
    for f in v {
        let g = if &f == conj { part.clone() } else { f };
        if !out.contains(&g) {
            out.push(g);
        }
    }
    Ok(out)
}

/// `<B, P, P1 ∧ P2, Pi>` as incoming information carrying the original
/// triplets.
pub fn substituted_package(
    bs: &BeliefSet,
    info: &impl Incoming,
    conj: &Formula,
    side: Side,
) -> Result<Package, Error> {
    Ok(Package::new(
        substitute_conjunct(bs, info, conj, side)?,
        info.attributes().to_vec(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::association::InterpretationMap;
    use crate::belief::{BeliefBase, Context, ExternalInfo};
    use crate::logic::{parse, Universe};

    fn ctx(atoms: usize, interp: &[(&str, &str, &str)]) -> Arc<crate::belief::Context> {
        let u = Universe::numbered(atoms).unwrap();
        let mut i = InterpretationMap::new();
        for (k, t, r) in interp {
            i.insert_formula(&parse(k, &u).unwrap(), parse(t, &u).unwrap(), parse(r, &u).unwrap(), &u)
                .unwrap();
        }
        Context::new(u, i)
    }

    fn f(c: &Context, s: &str) -> Formula {
        parse(s, c.universe()).unwrap()
    }

    fn set(c: &Arc<Context>, fs: &[&str]) -> BeliefSet {
        BeliefSet::close(c, &BeliefBase::new(fs.iter().map(|s| f(c, s)).collect(), vec![]))
    }

    #[test]
    fn expansion_of_empty_set() {
        let c = ctx(2, &[]);
        let bs = expand(&BeliefSet::empty(&c), &ExternalInfo::plain(f(&c, "p0")));
        assert!(bs.member(&f(&c, "p0")));
    }

    #[test]
    fn expansion_reveals_conflict() {
        let c = ctx(3, &[("p0", "p1", "p2")]);
        let bs = set(&c, &["p0", "~p2"]);
        let out = expand(&bs, &ExternalInfo::plain(f(&c, "p1")));
        assert!(!out.is_consistent());
    }

    #[test]
    fn expansion_absorbs_members() {
        let c = ctx(3, &[]);
        let bs = set(&c, &["p0 & p1"]);
        assert_eq!(expand(&bs, &ExternalInfo::plain(f(&c, "p0"))), bs);
    }

    #[test]
    fn remainders_of_single_atom() {
        let c = ctx(1, &[]);
        let bs = set(&c, &["p0"]);
        let delta = remainders(&bs, &ExternalInfo::plain(f(&c, "p0"))).unwrap();
        assert_eq!(delta, vec![BeliefSet::empty(&c)]);
    }

    #[test]
    fn remainders_of_conjunction() {
        let c = ctx(2, &[]);
        let bs = set(&c, &["p0 & p1"]);
        let info = ExternalInfo::plain(f(&c, "p0"));
        let delta = remainders(&bs, &info).unwrap();
        // One extra model falsifying p0: either 00 or 01.
        assert_eq!(delta.len(), 2);
        for r in &delta {
            assert!(!r.member(&f(&c, "p0")));
            let back = expand(r, &Package::formulas(vec![f(&c, "p0")]));
            assert_eq!(back, bs);
        }
    }

    #[test]
    fn tautologies_have_no_remainders() {
        let c = ctx(2, &[]);
        let bs = set(&c, &["p0"]);
        let info = ExternalInfo::plain(f(&c, "p1 | ~p1"));
        assert!(remainders(&bs, &info).unwrap().is_empty());
        assert_eq!(contract(&bs, &info, &SelectionFunction::All).unwrap(), bs);
    }

    #[test]
    fn contraction_drops_the_atom() {
        let c = ctx(1, &[]);
        let bs = set(&c, &["p0"]);
        let out = contract(&bs, &ExternalInfo::plain(f(&c, "p0")), &SelectionFunction::All).unwrap();
        assert_eq!(out, BeliefSet::empty(&c));
    }

    #[test]
    fn revision_may_be_inconsistent() {
        let c = ctx(3, &[("p0", "p1", "p2")]);
        let bs = set(&c, &["p0", "~p2"]);
        let out = revise(&bs, &ExternalInfo::plain(f(&c, "p1")), &SelectionFunction::All).unwrap();
        assert!(!out.is_consistent());
    }

    #[test]
    fn revision_of_empty_set_is_expansion() {
        let c = ctx(2, &[]);
        let empty = BeliefSet::empty(&c);
        let info = ExternalInfo::plain(f(&c, "p0"));
        let out = revise(&empty, &info, &SelectionFunction::All).unwrap();
        assert!(out.member(&f(&c, "p0")));
        assert_eq!(out, expand(&empty, &info));
    }

    #[test]
    fn revision_by_contradicting_atom() {
        let c = ctx(2, &[]);
        let bs = set(&c, &["p0", "p1"]);
        let info = ExternalInfo::plain(f(&c, "~p0"));
        // Full meet keeps only p0 -> p1, so p1 is lost ...
        let full = revise(&bs, &info, &SelectionFunction::All).unwrap();
        assert!(full.member(&f(&c, "~p0")));
        assert!(!full.member(&f(&c, "p1")));
        // ... while preferring remainders that keep p1 retains it.
        let keep = SelectionFunction::Prefer(vec![f(&c, "p1")]);
        let out = revise(&bs, &info, &keep).unwrap();
        assert!(out.member(&f(&c, "~p0")));
        assert!(out.member(&f(&c, "p1")));
    }

    #[test]
    fn selection_examples() {
        let c = ctx(2, &[]);
        let a = set(&c, &["p0"]);
        let b = set(&c, &["p1"]);
        let d = set(&c, &["p0 | p1"]);
        let delta = vec![a.clone(), b.clone(), d.clone()];
        let fallback = BeliefSet::empty(&c);
        assert_eq!(select(&SelectionFunction::All, &delta, &fallback).unwrap().len(), 3);
        let prefer = SelectionFunction::Prefer(vec![f(&c, "p1")]);
        assert_eq!(select(&prefer, &delta, &fallback).unwrap(), vec![b.clone()]);
        assert_eq!(select(&prefer, &[], &fallback).unwrap(), vec![fallback.clone()]);
        let none = SelectionFunction::choose(|_| vec![]);
        assert_eq!(select(&none, &delta, &fallback), Err(Error::EmptySelection));
        let far = SelectionFunction::choose(|_| vec![7]);
        assert!(matches!(
            select(&far, &delta, &fallback),
            Err(Error::SelectionOutOfRange { index: 7, len: 3 })
        ));
    }

    #[test]
    fn conjunct_substitution() {
        let c = ctx(3, &[]);
        let bs = BeliefSet::empty(&c);
        let conj = f(&c, "p0 & p1");
        let info = Package::formulas(vec![conj.clone(), f(&c, "p2")]);
        assert_eq!(
            substitute_conjunct(&bs, &info, &conj, Side::Left).unwrap(),
            vec![f(&c, "p0"), f(&c, "p2")]
        );
        let single = Package::formulas(vec![conj.clone()]);
        assert_eq!(
            substitute_conjunct(&bs, &single, &conj, Side::Right).unwrap(),
            vec![f(&c, "p1")]
        );
        let other = Package::formulas(vec![f(&c, "p2")]);
        assert_eq!(
            substitute_conjunct(&bs, &other, &conj, Side::Left),
            Err(Error::ConjunctNotVisible)
        );
    }
}
