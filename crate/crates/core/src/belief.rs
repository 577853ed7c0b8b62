//! Belief bases, closed belief sets and the visible part of incoming
//! information.
//!
//! A [`BeliefSet`] stores its propositional part extensionally as a
//! [`ModelSet`]: a formula is a member iff every model satisfies it. The
//! attributive part is the set of belief triplets whose subject is a member,
//! drawn from two sources:
//!
//! * the association function evaluated over a finite *relevant set* of
//!   formulas fixed by the [`Context`] (every formula built from interpretation
//!   material, declared formulas and their pairwise conjunctions and
//!   disjunctions), with the belief set itself as association context;
//! * *learned links*: triplets that arrived with external information or an
//!   explicit base. They persist with the set and are active exactly while
//!   their subject is a member.
//!
//! Closing iterates: collect the active triplets, add the revealed formula of
//! every triplet whose trigger is a member, and repeat until nothing changes.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::association::{
    AssociationTuple, BeliefTriplet, InterpretationMap, Literal, PairSpace, PairValue, Plan,
};
use crate::logic::{canonical, models_of, models_of_all, negate, Formula, ModelSet, Universe};

/// Default bound on remainder candidates examined by a single contraction.
pub const DEFAULT_WORK_LIMIT: usize = 1 << 20;

// ---------------------------------------------------------------------------
// Context
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct Relevant {
    formula: Formula,
    models: ModelSet,
    plan: Plan,
}

/// Everything a family of belief sets shares: the atom universe, the
/// interpretation map, the relevant formulas over which the association
/// function is enumerated, and the remainder work limit.
#[derive(Debug, Clone)]
pub struct Context {
    universe: Universe,
    interp: InterpretationMap,
    space: PairSpace,
    relevant: Vec<Relevant>,
    work_limit: usize,
}

impl Context {
    /// A context whose relevant set is built from the interpretation map only.
    pub fn new(universe: Universe, interp: InterpretationMap) -> Arc<Context> {
        Self::with_formulas(universe, interp, std::iter::empty())
    }

    /// A context whose relevant set also covers `declared` formulas (base
    /// formulas, essences, attribute components) and their negations.
    pub fn with_formulas(
        universe: Universe,
        interp: InterpretationMap,
        declared: impl IntoIterator<Item = Formula>,
    ) -> Arc<Context> {
        Arc::new(Self::build(universe, interp, declared, DEFAULT_WORK_LIMIT))
    }

    pub fn with_work_limit(
        universe: Universe,
        interp: InterpretationMap,
        declared: impl IntoIterator<Item = Formula>,
        work_limit: usize,
    ) -> Arc<Context> {
        Arc::new(Self::build(universe, interp, declared, work_limit))
    }

    fn build(
        universe: Universe,
        interp: InterpretationMap,
        declared: impl IntoIterator<Item = Formula>,
        work_limit: usize,
    ) -> Context {
        let space = PairSpace::new(&interp, &universe);
        let keys: BTreeSet<Literal> = interp.literals().collect();

        let mut seeds: BTreeSet<Formula> = BTreeSet::new();
        for (lit, t, r) in interp.iter() {
            seeds.insert(lit.formula());
            seeds.insert(canonical(t));
            seeds.insert(canonical(r));
        }
        for f in declared {
            seeds.insert(canonical(&f));
            seeds.insert(canonical(&negate(&f)));
        }
        // Every literal, so that a key disjoined with any literal is covered.
        for atom in 0..universe.len() {
            seeds.insert(Formula::atom(atom));
            seeds.insert(canonical(&Formula::not(Formula::atom(atom))));
        }
        let seeds: Vec<Formula> = seeds.into_iter().collect();

        let mut candidates: BTreeSet<Formula> = seeds.iter().cloned().collect();
        for (i, a) in seeds.iter().enumerate() {
            for b in &seeds[i + 1..] {
                candidates.insert(canonical(&Formula::and(a.clone(), b.clone())));
                candidates.insert(canonical(&Formula::or(a.clone(), b.clone())));
            }
        }

        let mut relevant = Vec::new();
        if !keys.is_empty() {
            for formula in candidates {
                if !mentions_key(&formula, &keys) {
                    continue;
                }
                let models = models_of(&formula, &universe);
                if models.is_empty() || models.is_full() {
                    continue;
                }
                let plan = space.compile(&formula, &universe);
                if matches!(&plan, Plan::Fixed(PairValue::Set(s)) if s.is_empty()) {
                    continue;
                }
                relevant.push(Relevant {
                    formula,
                    models,
                    plan,
                });
            }
        }

        Context {
            universe,
            interp,
            space,
            relevant,
            work_limit,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn interp(&self) -> &InterpretationMap {
        &self.interp
    }

    pub fn work_limit(&self) -> usize {
        self.work_limit
    }

    /// Relevant formulas that can carry attributive beliefs.
    pub fn relevant(&self) -> impl Iterator<Item = &Formula> {
        self.relevant.iter().map(|r| &r.formula)
    }

    pub fn models_of(&self, f: &Formula) -> ModelSet {
        models_of(f, &self.universe)
    }

    /// Attributive beliefs of every relevant member of the theory `models`,
    /// with `models` as association context.
    fn derived_triplets(&self, models: &ModelSet, out: &mut TripletSet) {
        for r in &self.relevant {
            if !models.is_subset(&r.models) {
                continue;
            }
            if let PairValue::Set(pairs) = r.plan.eval(&self.space, models) {
                for (t, v) in pairs {
                    out.insert_keyed(
                        TripletKey {
                            subject: r.models.clone(),
                            trigger: self.space.models(t).clone(),
                            revealed: self.space.models(v).clone(),
                        },
                        BeliefTriplet::new(
                            r.formula.clone(),
                            self.space.formula(t).clone(),
                            self.space.formula(v).clone(),
                        ),
                    );
                }
            }
        }
    }
}

fn mentions_key(f: &Formula, keys: &BTreeSet<Literal>) -> bool {
    match f {
        Formula::Top | Formula::Bot => false,
        Formula::Atom(_) | Formula::Not(_) => {
            Literal::from_formula(f).is_some_and(|l| keys.contains(&l))
        }
        Formula::And(a, b) | Formula::Or(a, b) => mentions_key(a, keys) || mentions_key(b, keys),
    }
}

// ---------------------------------------------------------------------------
// Triplet sets
// ---------------------------------------------------------------------------

/// Semantic identity of a triplet: the models of its three components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripletKey {
    pub subject: ModelSet,
    pub trigger: ModelSet,
    pub revealed: ModelSet,
}

impl TripletKey {
    pub fn of(t: &BeliefTriplet, universe: &Universe) -> TripletKey {
        TripletKey {
            subject: models_of(&t.subject, universe),
            trigger: models_of(&t.trigger, universe),
            revealed: models_of(&t.revealed, universe),
        }
    }
}

/// Triplets identified up to logical equivalence of their components; each
/// class keeps its smallest syntactic representative.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TripletSet {
    entries: BTreeMap<TripletKey, BeliefTriplet>,
}

fn weight(t: &BeliefTriplet) -> (usize, usize, usize) {
    (t.subject.size(), t.trigger.size(), t.revealed.size())
}

impl TripletSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, t: BeliefTriplet, universe: &Universe) {
        let key = TripletKey::of(&t, universe);
        self.insert_keyed(key, t);
    }

    pub(crate) fn insert_keyed(&mut self, key: TripletKey, t: BeliefTriplet) {
        match self.entries.get_mut(&key) {
            Some(existing) => {
                if (weight(&t), &t) < (weight(existing), &*existing) {
                    *existing = t;
                }
            }
            None => {
                self.entries.insert(key, t);
            }
        }
    }

    pub fn contains_key(&self, key: &TripletKey) -> bool {
        self.entries.contains_key(key)
    }

    /// Whether an equivalent triplet is present.
    pub fn contains(&self, t: &BeliefTriplet, universe: &Universe) -> bool {
        self.contains_key(&TripletKey::of(t, universe))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BeliefTriplet> {
        self.entries.values()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TripletKey, &BeliefTriplet)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &TripletKey> {
        self.entries.keys()
    }

    pub fn is_subset(&self, other: &TripletSet) -> bool {
        self.entries.keys().all(|k| other.entries.contains_key(k))
    }

    pub fn intersection(&self, other: &TripletSet) -> TripletSet {
        TripletSet {
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| other.entries.contains_key(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn extend(&mut self, other: &TripletSet) {
        for (k, v) in other.entries() {
            self.insert_keyed(k.clone(), v.clone());
        }
    }
}

// ---------------------------------------------------------------------------
// Bases, incoming information
// ---------------------------------------------------------------------------

/// A finite presentation: explicit formulas and explicit triplets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BeliefBase {
    pub explicit: Vec<Formula>,
    pub triplets: Vec<BeliefTriplet>,
}

impl BeliefBase {
    pub fn new(explicit: Vec<Formula>, triplets: Vec<BeliefTriplet>) -> Self {
        BeliefBase { explicit, triplets }
    }
}

/// External information: an essence proposition together with the
/// attributive beliefs it carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalInfo {
    pub essence: Formula,
    pub attributes: Vec<BeliefTriplet>,
}

impl ExternalInfo {
    /// Builds an info whose attributes are `(trigger, revealed)` pairs about
    /// `essence`.
    pub fn new(essence: Formula, attributes: impl IntoIterator<Item = (Formula, Formula)>) -> Self {
        let attributes = attributes
            .into_iter()
            .map(|(t, r)| BeliefTriplet::new(essence.clone(), t, r))
            .collect();
        ExternalInfo {
            essence,
            attributes,
        }
    }

    pub fn plain(essence: Formula) -> Self {
        ExternalInfo {
            essence,
            attributes: Vec::new(),
        }
    }

    /// The info `({P}, Cond(P))` generated by the interpretation map with the
    /// belief set as association context.
    pub fn generated(bs: &BeliefSet, essence: Formula) -> Self {
        let tuple = bs.tuple();
        let attributes = crate::association::cond(&tuple, &essence)
            .into_iter()
            .collect();
        ExternalInfo {
            essence,
            attributes,
        }
    }

    /// All formulas mentioned by the info.
    pub fn formulas(&self) -> Vec<Formula> {
        let mut out = vec![self.essence.clone()];
        for t in &self.attributes {
            out.push(t.trigger.clone());
            out.push(t.revealed.clone());
        }
        out
    }
}

/// Anything a belief set can be changed by: a visible part relative to the
/// set, the formulas accepted on expansion, and carried triplets.
pub trait Incoming {
    /// Formulas consciously perceived given `bs`.
    fn visible(&self, bs: &BeliefSet) -> Vec<Formula>;
    /// Formulas accepted by expansion regardless of `bs`.
    fn explicit(&self) -> Vec<Formula>;
    /// Triplets carried along.
    fn attributes(&self) -> &[BeliefTriplet];
}

impl Incoming for ExternalInfo {
    fn visible(&self, bs: &BeliefSet) -> Vec<Formula> {
        let mut out = vec![self.essence.clone()];
        for t in &self.attributes {
            if bs.member(&t.trigger) && !out.contains(&t.revealed) {
                out.push(t.revealed.clone());
            }
        }
        out
    }

    fn explicit(&self) -> Vec<Formula> {
        vec![self.essence.clone()]
    }

    fn attributes(&self) -> &[BeliefTriplet] {
        &self.attributes
    }
}

/// `{essence} ∪ {revealed | attribute triggered by a member}`.
pub fn visible(bs: &BeliefSet, info: &impl Incoming) -> Vec<Formula> {
    info.visible(bs)
}

/// Element-wise NNF negation of [`visible`].
pub fn visible_neg(bs: &BeliefSet, info: &impl Incoming) -> Vec<Formula> {
    let mut out: Vec<Formula> = Vec::new();
    for f in info.visible(bs) {
        let n = negate(&f);
        if !out.contains(&n) {
            out.push(n);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Learned links
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Link {
    key: TripletKey,
    triplet: BeliefTriplet,
}

/// Triplets carried into a belief set by bases and incoming information.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LinkStore {
    links: Vec<Link>,
}

impl LinkStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_triplets<'a>(
        triplets: impl IntoIterator<Item = &'a BeliefTriplet>,
        universe: &Universe,
    ) -> Self {
        let mut store = LinkStore::new();
        store.add_all(triplets, universe);
        store
    }

    /// Adds triplets, returning whether anything new was stored.
    pub fn add_all<'a>(
        &mut self,
        triplets: impl IntoIterator<Item = &'a BeliefTriplet>,
        universe: &Universe,
    ) -> bool {
        let mut changed = false;
        for t in triplets {
            let key = TripletKey::of(t, universe);
            if models_of(&t.subject, universe).is_empty() {
                continue;
            }
            if self.links.iter().any(|l| l.key == key) {
                continue;
            }
            self.links.push(Link {
                key,
                triplet: t.clone(),
            });
            changed = true;
        }
        if changed {
            self.links.sort_by(|a, b| a.key.cmp(&b.key));
        }
        changed
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BeliefTriplet> {
        self.links.iter().map(|l| &l.triplet)
    }

    fn active(&self, models: &ModelSet, out: &mut TripletSet) {
        for l in &self.links {
            if models.is_subset(&l.key.subject) {
                out.insert_keyed(l.key.clone(), l.triplet.clone());
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Belief sets
// ---------------------------------------------------------------------------

/// A closed belief set.
#[derive(Clone)]
pub struct BeliefSet {
    ctx: Arc<Context>,
    models: ModelSet,
    triplets: TripletSet,
    links: Arc<LinkStore>,
}

/// The triplets that fired in each round of a closure, in order.
pub type Rounds = Vec<Vec<BeliefTriplet>>;

impl BeliefSet {
    /// The closure of the empty base: tautologies only.
    pub fn empty(ctx: &Arc<Context>) -> BeliefSet {
        Self::from_models(ctx, ModelSet::full(ctx.universe.len()), Arc::new(LinkStore::new()))
    }

    /// `Cn(B)`.
    pub fn close(ctx: &Arc<Context>, base: &BeliefBase) -> BeliefSet {
        let models = models_of_all(&base.explicit, &ctx.universe);
        let links = LinkStore::from_triplets(&base.triplets, &ctx.universe);
        Self::from_models(ctx, models, Arc::new(links))
    }

    /// Closes the theory of `models` under `links` and the association
    /// function.
    pub fn from_models(ctx: &Arc<Context>, models: ModelSet, links: Arc<LinkStore>) -> BeliefSet {
        Self::close_traced(ctx, models, links).0
    }

    /// Like [`BeliefSet::from_models`], also reporting which triplets fired in
    /// each round.
    pub fn close_traced(
        ctx: &Arc<Context>,
        mut models: ModelSet,
        links: Arc<LinkStore>,
    ) -> (BeliefSet, Rounds) {
        let mut rounds: Rounds = Vec::new();
        let mut fired: HashSet<TripletKey> = HashSet::new();
        loop {
            let triplets = active_triplets(ctx, &models, &links);
            let mut next = models.clone();
            let mut round = Vec::new();
            for (key, t) in triplets.entries() {
                if models.is_subset(&key.trigger) {
                    next.and_assign(&key.revealed);
                    if fired.insert(key.clone()) {
                        round.push(t.clone());
                    }
                }
            }
            if !round.is_empty() {
                rounds.push(round);
            }
            if next == models {
                let bs = BeliefSet {
                    ctx: ctx.clone(),
                    models,
                    triplets,
                    links,
                };
                return (bs, rounds);
            }
            models = next;
        }
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn universe(&self) -> &Universe {
        &self.ctx.universe
    }

    pub fn models(&self) -> &ModelSet {
        &self.models
    }

    pub fn triplets(&self) -> &TripletSet {
        &self.triplets
    }

    pub fn links(&self) -> &Arc<LinkStore> {
        &self.links
    }

    /// The association tuple bound to this set: its context is the set
    /// itself.
    pub fn tuple(&self) -> AssociationTuple<'_> {
        AssociationTuple::new(&self.ctx.universe, &self.ctx.interp, self.models.clone())
    }

    pub fn member(&self, f: &Formula) -> bool {
        self.models.is_subset(&models_of(f, &self.ctx.universe))
    }

    pub fn is_consistent(&self) -> bool {
        !self.models.is_empty()
    }

    /// Every triplet is attributive to a member.
    pub fn adequacy_check(&self) -> bool {
        self.triplets
            .keys()
            .all(|k| self.models.is_subset(&k.subject))
    }

    /// Triplets whose trigger is a member.
    pub fn triggered(&self) -> impl Iterator<Item = &BeliefTriplet> {
        self.triplets
            .entries()
            .filter(|(k, _)| self.models.is_subset(&k.trigger))
            .map(|(_, t)| t)
    }

    /// Triplets whose trigger is not (yet) a member.
    pub fn latent(&self) -> impl Iterator<Item = &BeliefTriplet> {
        self.triplets
            .entries()
            .filter(|(k, _)| !self.models.is_subset(&k.trigger))
            .map(|(_, t)| t)
    }

    /// Re-running the closure changes nothing.
    pub fn is_closed(&self) -> bool {
        let again = BeliefSet::from_models(&self.ctx, self.models.clone(), self.links.clone());
        again == *self
    }

    /// `self ⊆ other`: every member and every triplet of `self` belongs to
    /// `other`. An inconsistent set believes everything, attributes included,
    /// so it contains every set.
    pub fn is_subset(&self, other: &BeliefSet) -> bool {
        !other.is_consistent()
            || other.models.is_subset(&self.models) && self.triplets.is_subset(&other.triplets)
    }

    /// Members of `self` are members of `other` (propositional part only).
    pub fn members_subset(&self, other: &BeliefSet) -> bool {
        other.models.is_subset(&self.models)
    }

    /// A belief set with the same context and links but a different theory,
    /// without closing. Used to represent raw intersections.
    pub(crate) fn raw(&self, models: ModelSet, triplets: TripletSet) -> BeliefSet {
        BeliefSet {
            ctx: self.ctx.clone(),
            models,
            triplets,
            links: self.links.clone(),
        }
    }

    /// Canonical formula whose models are exactly this set's models, in
    /// disjunctive normal form over the universe.
    pub fn theory(&self) -> Formula {
        let u = &self.ctx.universe;
        Formula::disjunction(self.models.models().map(|m| {
            Formula::conjunction((0..u.len()).map(|i| {
                if m.value(i) {
                    Formula::atom(i)
                } else {
                    Formula::not(Formula::atom(i))
                }
            }))
        }))
    }

    pub fn display(&self) -> BeliefSetDisplay<'_> {
        BeliefSetDisplay(self)
    }
}

fn active_triplets(ctx: &Context, models: &ModelSet, links: &LinkStore) -> TripletSet {
    let mut out = TripletSet::new();
    ctx.derived_triplets(models, &mut out);
    links.active(models, &mut out);
    out
}

/// Extensional equality: same members, same triplets up to equivalence.
/// All inconsistent sets are equal (each believes everything); the triplets
/// they list are only those derived on the way.
impl PartialEq for BeliefSet {
    fn eq(&self, other: &Self) -> bool {
        self.models == other.models
            && (!self.is_consistent() || self.triplets.keys().eq(other.triplets.keys()))
    }
}

impl Eq for BeliefSet {}

impl std::hash::Hash for BeliefSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.models.hash(state);
        if !self.is_consistent() {
            return;
        }
        for k in self.triplets.keys() {
            k.hash(state);
        }
    }
}

impl fmt::Debug for BeliefSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

pub struct BeliefSetDisplay<'a>(&'a BeliefSet);

impl fmt::Display for BeliefSetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bs = self.0;
        let u = bs.universe();
        let models: Vec<String> = bs.models.models().map(|m| m.to_string()).collect();
        write!(f, "{{models: [{}], triplets: [", models.join(" "))?;
        for (i, t) in bs.triplets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", t.display(u))?;
        }
        write!(f, "]}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse;

    fn setup(interp: &[(&str, &str, &str)]) -> Arc<Context> {
        let u = Universe::numbered(3).unwrap();
        let mut i = InterpretationMap::new();
        for (k, t, r) in interp {
            i.insert_formula(&parse(k, &u).unwrap(), parse(t, &u).unwrap(), parse(r, &u).unwrap(), &u)
                .unwrap();
        }
        Context::new(u, i)
    }

    fn f(ctx: &Context, s: &str) -> Formula {
        parse(s, ctx.universe()).unwrap()
    }

    fn base(ctx: &Context, fs: &[&str]) -> BeliefBase {
        BeliefBase::new(fs.iter().map(|s| f(ctx, s)).collect(), vec![])
    }

    #[test]
    fn closure_without_links_is_classical() {
        let ctx = setup(&[]);
        let bs = BeliefSet::close(&ctx, &base(&ctx, &["p0"]));
        assert_eq!(bs.models(), &ctx.models_of(&f(&ctx, "p0")));
        assert!(bs.triplets().is_empty());
        assert!(bs.member(&f(&ctx, "p0 | p1")));
        assert!(!bs.member(&f(&ctx, "p1")));
        assert!(bs.member(&f(&ctx, "p2 | ~p2")));
    }

    #[test]
    fn untriggered_triplet_stays_latent() {
        let ctx = setup(&[("p0", "p1", "p2")]);
        let bs = BeliefSet::close(&ctx, &base(&ctx, &["p0", "~p2"]));
        assert!(!bs.member(&f(&ctx, "p2")));
        assert!(bs.is_consistent());
        let t = BeliefTriplet::new(f(&ctx, "p0"), f(&ctx, "p1"), f(&ctx, "p2"));
        assert!(bs.triplets().contains(&t, ctx.universe()));
        // `p0 | p2` is a member too and, with `~p2` held, inherits p0's links.
        let subject_p0 = bs.latent().filter(|t| t.subject == f(&ctx, "p0")).count();
        assert_eq!(subject_p0, 1);
        assert_eq!(bs.triggered().count(), 0);
    }

    #[test]
    fn trigger_reveals() {
        let ctx = setup(&[("p0", "p1", "p2")]);
        let bs = BeliefSet::close(&ctx, &base(&ctx, &["p0", "p1"]));
        assert!(bs.member(&f(&ctx, "p2")));
        assert!(bs.adequacy_check());
        assert!(bs.is_closed());
    }

    #[test]
    fn triggered_conflict_is_inconsistent() {
        let ctx = setup(&[("p0", "p1", "p2")]);
        let bs = BeliefSet::close(&ctx, &base(&ctx, &["p0", "~p2", "p1"]));
        assert!(!bs.is_consistent());
        assert!(bs.member(&f(&ctx, "p2")) && bs.member(&f(&ctx, "~p2")));
    }

    #[test]
    fn empty_set() {
        let ctx = setup(&[("p0", "p1", "p2")]);
        let bs = BeliefSet::empty(&ctx);
        assert!(bs.is_consistent());
        assert!(bs.triplets().is_empty());
        assert!(bs.adequacy_check());
    }

    #[test]
    fn base_triplets_need_their_subject() {
        let ctx = setup(&[]);
        let t = BeliefTriplet::new(f(&ctx, "p0"), f(&ctx, "p1"), f(&ctx, "p2"));
        let inactive = BeliefSet::close(&ctx, &BeliefBase::new(vec![f(&ctx, "p1")], vec![t.clone()]));
        assert!(inactive.triplets().is_empty());
        assert!(!inactive.member(&f(&ctx, "p2")));
        let active = BeliefSet::close(
            &ctx,
            &BeliefBase::new(vec![f(&ctx, "p0"), f(&ctx, "p1")], vec![t]),
        );
        assert!(active.member(&f(&ctx, "p2")));
    }

    #[test]
    fn visible_examples() {
        let ctx = setup(&[]);
        let bs = BeliefSet::close(&ctx, &base(&ctx, &["p0"]));
        let info = ExternalInfo::plain(f(&ctx, "p1"));
        assert_eq!(visible(&bs, &info), vec![f(&ctx, "p1")]);
        let info = ExternalInfo::new(f(&ctx, "p1"), [(f(&ctx, "p0"), f(&ctx, "p2"))]);
        assert_eq!(visible(&bs, &info), vec![f(&ctx, "p1"), f(&ctx, "p2")]);
        assert_eq!(visible_neg(&bs, &info), vec![f(&ctx, "~p1"), f(&ctx, "~p2")]);
        let info = ExternalInfo::plain(f(&ctx, "~p1"));
        assert_eq!(visible_neg(&bs, &info), vec![f(&ctx, "p1")]);
    }

    #[test]
    fn closing_is_idempotent() {
        let ctx = setup(&[("p0", "p1", "p2"), ("p2", "~p0 | p1", "p1")]);
        let bs = BeliefSet::close(&ctx, &base(&ctx, &["p0 | p2", "p1"]));
        assert!(bs.is_closed());
        assert!(bs.adequacy_check());
    }

    #[test]
    fn rounds_follow_firing_order() {
        let ctx = setup(&[("p0", "p1", "p2")]);
        let t = BeliefTriplet::new(f(&ctx, "p0"), f(&ctx, "T"), f(&ctx, "p1"));
        let links = Arc::new(LinkStore::from_triplets([&t], ctx.universe()));
        let (bs, rounds) = BeliefSet::close_traced(&ctx, ctx.models_of(&f(&ctx, "p0")), links);
        assert!(bs.member(&f(&ctx, "p2")));
        assert_eq!(rounds.len(), 2);
        assert_eq!(rounds[0][0].revealed, f(&ctx, "p1"));
        assert_eq!(rounds[1][0].revealed, f(&ctx, "p2"));
    }
}
