//! Property tests for the logic kernel, the association function and the
//! operators on small random inputs.

use proptest::prelude::*;

use latentbr_core::association::{assoc, cond, AssociationTuple, InterpretationMap, Literal};
use latentbr_core::belief::{BeliefBase, BeliefSet, Context, ExternalInfo, TripletKey};
use latentbr_core::logic::{models_of, nnf, parse, Formula, ModelSet, Universe};
use latentbr_core::operators::{contract, expand, revise, SelectionFunction};

const ATOMS: usize = 3;

fn universe() -> Universe {
    Universe::numbered(ATOMS).unwrap()
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = (0..ATOMS).prop_map(Formula::atom);
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    })
}

fn literal() -> impl Strategy<Value = Literal> {
    (0..ATOMS, any::<bool>()).prop_map(|(a, pos)| {
        if pos {
            Literal::positive(a)
        } else {
            Literal::negative(a)
        }
    })
}

/// A valid interpretation map: entries excluded by their key are dropped.
fn interpretation() -> impl Strategy<Value = InterpretationMap> {
    prop::collection::vec((literal(), formula(), formula()), 0..4).prop_map(|entries| {
        let mut map = InterpretationMap::new();
        for (lit, t, r) in entries {
            map.insert(lit, t, r);
        }
        map.retain_valid(&universe());
        map
    })
}

fn context() -> impl Strategy<Value = ModelSet> {
    any::<u8>().prop_map(|bits| {
        ModelSet::from_indices(ATOMS, (0..1 << ATOMS).filter(|i| bits >> i & 1 == 1))
    })
}

/// `Cn(base)` in a context that declares the base and the incoming formula.
fn belief_set(interp: InterpretationMap, base: Vec<Formula>, incoming: &Formula) -> BeliefSet {
    let declared = base.iter().cloned().chain([incoming.clone()]);
    let ctx = Context::with_formulas(universe(), interp, declared);
    BeliefSet::close(&ctx, &BeliefBase::new(base, vec![]))
}

// ---------------------------------------------------------------------------
// Logic kernel
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn nnf_preserves_models(f in formula()) {
        let u = universe();
        prop_assert_eq!(models_of(&nnf(&f), &u), models_of(&f, &u));
    }

    #[test]
    fn display_round_trips(f in formula()) {
        let u = universe();
        let text = f.display(&u).to_string();
        let back = parse(&text, &u).unwrap();
        prop_assert_eq!(models_of(&back, &u), models_of(&f, &u));
    }
}

// ---------------------------------------------------------------------------
// Association function
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn assoc_is_invariant_under_nnf(interp in interpretation(), ctx in context(), f in formula()) {
        let u = universe();
        let tuple = AssociationTuple::new(&u, &interp, ctx);
        prop_assert_eq!(assoc(&tuple, &f), assoc(&tuple, &nnf(&f)));
    }

    #[test]
    fn assoc_is_symmetric(interp in interpretation(), ctx in context(), a in formula(), b in formula()) {
        let u = universe();
        let tuple = AssociationTuple::new(&u, &interp, ctx);
        prop_assert_eq!(
            assoc(&tuple, &Formula::and(a.clone(), b.clone())),
            assoc(&tuple, &Formula::and(b.clone(), a.clone()))
        );
        // A context refuting both disjuncts refutes the disjunction; the case
        // analysis then depends on which disjunct is inspected first.
        let either = Formula::or(a.clone(), b.clone());
        if tuple.context.intersects(&models_of(&either, &u)) {
            prop_assert_eq!(assoc(&tuple, &either), assoc(&tuple, &Formula::or(b, a)));
        }
    }
}

// ---------------------------------------------------------------------------
// Finite enumeration of Cond
// ---------------------------------------------------------------------------

/// Literals, and conjunctions and disjunctions of two literals.
fn small_subjects() -> Vec<Formula> {
    let lits: Vec<Formula> = (0..ATOMS)
        .flat_map(|a| [Formula::atom(a), Formula::not(Formula::atom(a))])
        .collect();
    let mut out = lits.clone();
    for a in &lits {
        for b in &lits {
            out.push(Formula::and(a.clone(), b.clone()));
            out.push(Formula::or(a.clone(), b.clone()));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Every derived triplet is attributive to a member subject.
    #[test]
    fn derived_triplets_are_sound(interp in interpretation(), base in prop::collection::vec(formula(), 0..3)) {
        let bs = belief_set(interp, base, &Formula::atom(0));
        let u = universe();
        for t in bs.triggered().chain(bs.latent()) {
            prop_assert!(bs.member(&t.subject));
            let found = cond(&bs.tuple(), &t.subject)
                .iter()
                .any(|c| TripletKey::of(c, &u) == TripletKey::of(t, &u));
            prop_assert!(found, "{} not attributive", t.display(&u));
        }
    }

    /// For member subjects of at most two literals, every attributive triplet
    /// is present, up to equivalence.
    #[test]
    fn small_subjects_are_complete(interp in interpretation(), base in prop::collection::vec(formula(), 0..3)) {
        let bs = belief_set(interp, base, &Formula::atom(0));
        prop_assume!(bs.is_consistent());
        let u = universe();
        for p in small_subjects().iter().filter(|p| bs.member(p)) {
            for t in cond(&bs.tuple(), p) {
                prop_assert!(
                    bs.triplets().contains_key(&TripletKey::of(&t, &u)),
                    "{} missing",
                    t.display(&u)
                );
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn expansion_is_monotone(interp in interpretation(), base in prop::collection::vec(formula(), 0..3), p in formula()) {
        let bs = belief_set(interp, base, &p);
        let out = expand(&bs, &ExternalInfo::plain(p.clone()));
        prop_assert!(bs.is_subset(&out));
        prop_assert!(out.member(&p));
    }

    #[test]
    fn contraction_is_included(interp in interpretation(), base in prop::collection::vec(formula(), 0..3), p in formula()) {
        let bs = belief_set(interp, base, &p);
        let out = contract(&bs, &ExternalInfo::plain(p), &SelectionFunction::All).unwrap();
        prop_assert!(out.is_subset(&bs));
    }

    #[test]
    fn revision_believes_the_essence(interp in interpretation(), base in prop::collection::vec(formula(), 0..3), p in formula()) {
        let bs = belief_set(interp, base, &p);
        let out = revise(&bs, &ExternalInfo::plain(p.clone()), &SelectionFunction::All).unwrap();
        prop_assert!(out.member(&p));
    }
}
