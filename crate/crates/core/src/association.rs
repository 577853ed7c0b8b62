//! Association links between propositions.
//!
//! An [`InterpretationMap`] attaches `(trigger, revealed)` pairs to literals.
//! The association function lifts it to arbitrary formulas relative to a
//! context set `X` (a closed theory, represented by its models): conjunctions
//! merge the links of their conjuncts, disjunctions pick a case depending on
//! which disjuncts the context holds, and negated compounds go through NNF.
//! Links whose components are logically tied to the subject (the exclusion set
//! `Exc`) are always dropped.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::Error;
use crate::logic::{self, models_of, nnf, Formula, ModelSet, Universe};

/// A propositional literal: an atom or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub atom: usize,
    pub positive: bool,
}

impl Literal {
    pub fn positive(atom: usize) -> Self {
        Literal {
            atom,
            positive: true,
        }
    }

    pub fn negative(atom: usize) -> Self {
        Literal {
            atom,
            positive: false,
        }
    }

    /// The literal a formula denotes after NNF, if it is one.
    pub fn from_formula(f: &Formula) -> Option<Literal> {
        match nnf(f) {
            Formula::Atom(i) => Some(Literal::positive(i)),
            Formula::Not(inner) => match *inner {
                Formula::Atom(i) => Some(Literal::negative(i)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn formula(&self) -> Formula {
        if self.positive {
            Formula::Atom(self.atom)
        } else {
            Formula::not(Formula::Atom(self.atom))
        }
    }
}

/// A belief triplet `subject(trigger, revealed)`: `revealed` surfaces as part
/// of `subject` once `trigger` is believed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BeliefTriplet {
    pub subject: Formula,
    pub trigger: Formula,
    pub revealed: Formula,
}

impl BeliefTriplet {
    pub fn new(subject: Formula, trigger: Formula, revealed: Formula) -> Self {
        BeliefTriplet {
            subject,
            trigger,
            revealed,
        }
    }

    pub fn display<'a>(&'a self, universe: &'a Universe) -> TripletDisplay<'a> {
        TripletDisplay {
            triplet: self,
            universe,
        }
    }
}

pub struct TripletDisplay<'a> {
    triplet: &'a BeliefTriplet,
    universe: &'a Universe,
}

impl fmt::Display for TripletDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.triplet;
        let subject = t.subject.display(self.universe).to_string();
        if t.subject.is_literal() || matches!(t.subject, Formula::Top | Formula::Bot) {
            write!(f, "{subject}")?;
        } else {
            write!(f, "[{subject}]")?;
        }
        write!(
            f,
            "({}, {})",
            t.trigger.display(self.universe),
            t.revealed.display(self.universe)
        )
    }
}

/// `q ∈ Exc(p)`: `q` follows from `p` or `p` follows from `q`.
pub fn in_exc(p: &Formula, q: &Formula, universe: &Universe) -> bool {
    let mp = models_of(p, universe);
    let mq = models_of(q, universe);
    exc_models(&mp, &mq)
}

fn exc_models(subject: &ModelSet, other: &ModelSet) -> bool {
    subject.is_subset(other) || other.is_subset(subject)
}

/// Literal-level association links.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InterpretationMap {
    entries: BTreeMap<Literal, BTreeSet<(Formula, Formula)>>,
}

/// An interpretation entry whose trigger or revealed formula lies in the
/// exclusion set of its literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub literal: Literal,
    pub trigger: Formula,
    pub revealed: Formula,
    pub trigger_excluded: bool,
    pub revealed_excluded: bool,
}

impl InterpretationMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, literal: Literal, trigger: Formula, revealed: Formula) {
        self.entries
            .entry(literal)
            .or_default()
            .insert((trigger, revealed));
    }

    /// Inserts a link keyed by a formula that must be a literal.
    pub fn insert_formula(
        &mut self,
        key: &Formula,
        trigger: Formula,
        revealed: Formula,
        universe: &Universe,
    ) -> Result<(), Error> {
        let lit = Literal::from_formula(key)
            .ok_or_else(|| Error::NotALiteral(key.display(universe).to_string()))?;
        self.insert(lit, trigger, revealed);
        Ok(())
    }

    pub fn get(&self, literal: &Literal) -> impl Iterator<Item = &(Formula, Formula)> {
        self.entries.get(literal).into_iter().flatten()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Literal, &Formula, &Formula)> {
        self.entries
            .iter()
            .flat_map(|(lit, pairs)| pairs.iter().map(move |(t, r)| (*lit, t, r)))
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.entries.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.values().all(|s| s.is_empty())
    }

    /// Total number of links.
    pub fn len(&self) -> usize {
        self.entries.values().map(|s| s.len()).sum()
    }

    /// Every link violating the exclusion constraint; empty means valid.
    pub fn validate(&self, universe: &Universe) -> Vec<Violation> {
        let mut out = Vec::new();
        for (lit, trigger, revealed) in self.iter() {
            let key = lit.formula();
            let trigger_excluded = in_exc(&key, trigger, universe);
            let revealed_excluded = in_exc(&key, revealed, universe);
            if trigger_excluded || revealed_excluded {
                out.push(Violation {
                    literal: lit,
                    trigger: trigger.clone(),
                    revealed: revealed.clone(),
                    trigger_excluded,
                    revealed_excluded,
                });
            }
        }
        out
    }

    /// Drops violating links, returning how many were removed.
    pub fn retain_valid(&mut self, universe: &Universe) -> usize {
        let before = self.len();
        for (lit, pairs) in self.entries.iter_mut() {
            let key = lit.formula();
            pairs.retain(|(t, r)| !in_exc(&key, t, universe) && !in_exc(&key, r, universe));
        }
        self.entries.retain(|_, pairs| !pairs.is_empty());
        before - self.len()
    }
}

/// See [`InterpretationMap::validate`].
pub fn validate_interpretation(interp: &InterpretationMap, universe: &Universe) -> Vec<Violation> {
    interp.validate(universe)
}

/// `(𝓘, X, Assoc)` with `X` given by its models. The association function is
/// derived on demand and never stored.
#[derive(Debug, Clone)]
pub struct AssociationTuple<'a> {
    pub universe: &'a Universe,
    pub interp: &'a InterpretationMap,
    pub context: ModelSet,
}

impl<'a> AssociationTuple<'a> {
    pub fn new(universe: &'a Universe, interp: &'a InterpretationMap, context: ModelSet) -> Self {
        AssociationTuple {
            universe,
            interp,
            context,
        }
    }

    /// Context given by the consequences of `formulas`.
    pub fn from_formulas(
        universe: &'a Universe,
        interp: &'a InterpretationMap,
        formulas: &[Formula],
    ) -> Self {
        Self::new(universe, interp, logic::models_of_all(formulas, universe))
    }

    /// Whether the context holds `f`.
    pub fn holds(&self, f: &Formula) -> bool {
        self.context.is_subset(&models_of(f, self.universe))
    }
}

/// Value of the association function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assoc {
    /// The value for an inconsistent formula: every pair. Never enumerated.
    AllPairs,
    Pairs(BTreeSet<(Formula, Formula)>),
}

impl Assoc {
    pub fn empty() -> Self {
        Assoc::Pairs(BTreeSet::new())
    }

    pub fn pairs(&self) -> Option<&BTreeSet<(Formula, Formula)>> {
        match self {
            Assoc::AllPairs => None,
            Assoc::Pairs(p) => Some(p),
        }
    }
}

/// Evaluates the association function on `p` in the tuple's context.
pub fn assoc(tuple: &AssociationTuple<'_>, p: &Formula) -> Assoc {
    let space = PairSpace::new(tuple.interp, tuple.universe);
    let plan = space.compile(p, tuple.universe);
    match plan.eval(&space, &tuple.context) {
        PairValue::All => Assoc::AllPairs,
        PairValue::Set(set) => Assoc::Pairs(
            set.into_iter()
                .map(|(t, r)| (space.formula(t).clone(), space.formula(r).clone()))
                .collect(),
        ),
    }
}

/// The beliefs attributive to `p`: empty for tautologies and contradictions.
pub fn cond(tuple: &AssociationTuple<'_>, p: &Formula) -> BTreeSet<BeliefTriplet> {
    match assoc(tuple, p) {
        Assoc::AllPairs => BTreeSet::new(),
        Assoc::Pairs(pairs) => {
            let m = models_of(p, tuple.universe);
            if m.is_full() || m.is_empty() {
                return BTreeSet::new();
            }
            pairs
                .into_iter()
                .map(|(t, r)| BeliefTriplet::new(p.clone(), t, r))
                .collect()
        }
    }
}

// ---------------------------------------------------------------------------
// Compiled evaluation
// ---------------------------------------------------------------------------

pub(crate) type PairIdx = (u16, u16);

/// Interned formulas appearing as triggers or revealed beliefs in an
/// interpretation map, together with their models.
#[derive(Debug, Clone)]
pub(crate) struct PairSpace {
    formulas: Vec<(Formula, ModelSet)>,
    links: BTreeMap<Literal, Vec<PairIdx>>,
}

impl PairSpace {
    pub(crate) fn new(interp: &InterpretationMap, universe: &Universe) -> Self {
        let mut formulas: Vec<(Formula, ModelSet)> = Vec::new();
        let mut index: HashMap<Formula, u16> = HashMap::new();
        let mut intern = |f: &Formula| -> u16 {
            if let Some(&i) = index.get(f) {
                return i;
            }
            let i = formulas.len() as u16;
            formulas.push((f.clone(), models_of(f, universe)));
            index.insert(f.clone(), i);
            i
        };
        let mut links: BTreeMap<Literal, Vec<PairIdx>> = BTreeMap::new();
        for (lit, t, r) in interp.iter() {
            let pair = (intern(t), intern(r));
            links.entry(lit).or_default().push(pair);
        }
        PairSpace { formulas, links }
    }

    pub(crate) fn formula(&self, i: u16) -> &Formula {
        &self.formulas[i as usize].0
    }

    pub(crate) fn models(&self, i: u16) -> &ModelSet {
        &self.formulas[i as usize].1
    }

    fn excluded(&self, subject: &ModelSet, i: u16) -> bool {
        exc_models(subject, self.models(i))
    }

    fn filter(&self, set: BTreeSet<PairIdx>, subject: &ModelSet) -> BTreeSet<PairIdx> {
        set.into_iter()
            .filter(|&(t, r)| !self.excluded(subject, t) && !self.excluded(subject, r))
            .collect()
    }

    /// Compiles the association function for `p`; the result depends on the
    /// context only through disjunction nodes.
    pub(crate) fn compile(&self, p: &Formula, universe: &Universe) -> Plan {
        self.build(&nnf(p), universe)
    }

    fn build(&self, f: &Formula, universe: &Universe) -> Plan {
        let m = models_of(f, universe);
        if m.is_full() {
            return Plan::Fixed(PairValue::Set(BTreeSet::new()));
        }
        if m.is_empty() {
            return Plan::Fixed(PairValue::All);
        }
        match f {
            Formula::Atom(_) | Formula::Not(_) => {
                let lit = Literal::from_formula(f).expect("nnf negates atoms only");
                let set = self
                    .links
                    .get(&lit)
                    .map(|v| v.iter().copied().collect())
                    .unwrap_or_default();
                Plan::Fixed(PairValue::Set(set))
            }
            Formula::And(a, b) => {
                let left = self.build(a, universe);
                let right = self.build(b, universe);
                match (left, right) {
                    (Plan::Fixed(l), Plan::Fixed(r)) => Plan::Fixed(self.merge(l, r, &m)),
                    (left, right) => Plan::And {
                        left: Box::new(left),
                        right: Box::new(right),
                        models: m,
                    },
                }
            }
            Formula::Or(a, b) => {
                let left = self.build(a, universe);
                let right = self.build(b, universe);
                if left.is_fixed_empty() && right.is_fixed_empty() {
                    return Plan::Fixed(PairValue::Set(BTreeSet::new()));
                }
                let m1 = models_of(a, universe);
                let m2 = models_of(b, universe);
                let both = m1.and(&m2);
                Plan::Or {
                    n1: m1.complement(),
                    n2: m2.complement(),
                    m1,
                    m2,
                    both,
                    left: Box::new(left),
                    right: Box::new(right),
                }
            }
            Formula::Top | Formula::Bot => unreachable!("constants are tautological or inconsistent"),
        }
    }

    /// `(A ∪ B) ↓ Exc(subject)`.
    fn merge(&self, a: PairValue, b: PairValue, subject: &ModelSet) -> PairValue {
        match (a, b) {
            (PairValue::Set(mut a), PairValue::Set(b)) => {
                a.extend(b);
                PairValue::Set(self.filter(a, subject))
            }
            _ => excluded_all(subject),
        }
    }

    /// The conjunction node `P1 ∧ P2` evaluated as a formula in its own right.
    fn conjunction(
        &self,
        left: &Plan,
        right: &Plan,
        both: &ModelSet,
        ctx: &ModelSet,
    ) -> PairValue {
        if both.is_empty() {
            return PairValue::All;
        }
        if both.is_full() {
            return PairValue::Set(BTreeSet::new());
        }
        self.merge(left.eval(self, ctx), right.eval(self, ctx), both)
    }

    /// Pairs on which both disjuncts agree.
    fn agreed(&self, a: &BTreeSet<PairIdx>, b: &BTreeSet<PairIdx>, both: &ModelSet) -> PairValue {
        let mut out = BTreeSet::new();
        for &(pa, ra) in a {
            for &(pb, rb) in b {
                if self.models(pa) != self.models(pb) {
                    continue;
                }
                let (ma, mb) = (self.models(ra), self.models(rb));
                let revealed = if ma.is_subset(mb) {
                    rb
                } else if mb.is_subset(ma) {
                    ra
                } else {
                    continue;
                };
                if !self.excluded(both, pa) && !self.excluded(both, revealed) {
                    out.insert((pa, revealed));
                }
            }
        }
        PairValue::Set(out)
    }
}

// `(Props, Props) ↓ Exc(s)` only arises for an inconsistent `s`, whose
// exclusion set is everything.
fn excluded_all(subject: &ModelSet) -> PairValue {
    if subject.is_empty() {
        PairValue::Set(BTreeSet::new())
    } else {
        PairValue::All
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum PairValue {
    All,
    Set(BTreeSet<PairIdx>),
}

#[derive(Debug, Clone)]
pub(crate) enum Plan {
    Fixed(PairValue),
    And {
        left: Box<Plan>,
        right: Box<Plan>,
        models: ModelSet,
    },
    Or {
        left: Box<Plan>,
        right: Box<Plan>,
        m1: ModelSet,
        m2: ModelSet,
        n1: ModelSet,
        n2: ModelSet,
        both: ModelSet,
    },
}

impl Plan {
    fn is_fixed_empty(&self) -> bool {
        matches!(self, Plan::Fixed(PairValue::Set(s)) if s.is_empty())
    }

    pub(crate) fn eval(&self, space: &PairSpace, ctx: &ModelSet) -> PairValue {
        match self {
            Plan::Fixed(v) => v.clone(),
            Plan::And {
                left,
                right,
                models,
            } => space.merge(left.eval(space, ctx), right.eval(space, ctx), models),
            Plan::Or {
                left,
                right,
                m1,
                m2,
                n1,
                n2,
                both,
            } => {
                let has1 = ctx.is_subset(m1);
                let has2 = ctx.is_subset(m2);
                let denies1 = ctx.is_subset(n1);
                let denies2 = ctx.is_subset(n2);
                if has1 && has2 {
                    space.conjunction(left, right, both, ctx)
                } else if denies2 {
                    left.eval(space, ctx)
                } else if denies1 {
                    right.eval(space, ctx)
                } else if has1 {
                    match left.eval(space, ctx) {
                        PairValue::Set(s) => PairValue::Set(space.filter(s, both)),
                        PairValue::All => excluded_all(both),
                    }
                } else if has2 {
                    match right.eval(space, ctx) {
                        PairValue::Set(s) => PairValue::Set(space.filter(s, both)),
                        PairValue::All => excluded_all(both),
                    }
                } else {
                    match (left.eval(space, ctx), right.eval(space, ctx)) {
                        (PairValue::Set(a), PairValue::Set(b)) => space.agreed(&a, &b, both),
                        _ => PairValue::All,
                    }
                }
            }
        }
    }
}
