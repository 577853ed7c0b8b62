//! Randomized and exhaustive conformance harness.
//!
//! [`generate`] builds seeded instances, [`check_all`] verdicts every
//! postulate on one instance, [`run`] fans out over seeds, and
//! [`find_observation_witnesses`] searches for the counterexamples the theory
//! predicts. [`classical_equivalence`] compares the operators with an
//! independent classical partial meet implementation when no associations
//! are present.

mod check;
mod generate;
pub mod oracle;
mod report;

use std::fmt::Write as _;
use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use check::{
    brute_force_remainders, check_all, CONDITIONAL, LATENT_CONFLICT, POSTULATES, RAW_INTERSECTION,
    RECOVERY_CONSISTENT, SINGLE_VISIBLE, SUPPLEMENTARY,
};
pub use generate::{generate, random_preorder, Bounds, ScenarioInstance};
pub use report::{ConformanceReport, Counter, Witness, MAX_WITNESSES};

use crate::association::{InterpretationMap, Literal};
use crate::belief::{visible, BeliefBase, BeliefSet, ExternalInfo};
use crate::logic::{models_of, negate, Formula, ModelSet, Universe};
use crate::operators::{contract, expand, revise, SelectionFunction};

/// Checks seeds `seeds` in parallel and merges the reports.
pub fn run(seeds: Range<u64>, bounds: Bounds) -> ConformanceReport {
    seeds
        .into_par_iter()
        .map(|s| check_all(&generate(s, bounds)))
        .reduce(ConformanceReport::new, ConformanceReport::merge)
}

// ---------------------------------------------------------------------------
// Scenario rendering
// ---------------------------------------------------------------------------

/// The instance as a scenario file: the base is built by expanding the empty
/// set item by item, then `events` (e.g. `"contract info select all"`) are
/// appended.
pub fn render_instance(inst: &ScenarioInstance, title: &str, events: &[&str]) -> String {
    let u = inst.universe();
    let mut out = String::new();
    let _ = writeln!(out, "# {title}: seed {} ({} atoms)", inst.seed, u.len());
    let _ = writeln!(out, "atoms {}", u.names().join(" "));
    for (lit, t, r) in inst.interp().iter() {
        let _ = writeln!(
            out,
            "assoc {}: ({}, {})",
            lit.formula().display(u),
            t.display(u),
            r.display(u)
        );
    }
    for (i, f) in inst.base.explicit.iter().enumerate() {
        let _ = writeln!(out, "item base{i} essence {}", f.display(u));
        for t in inst.base.triplets.iter().filter(|t| &t.subject == f) {
            let _ = writeln!(out, "attr base{i}: ({}, {})", t.trigger.display(u), t.revealed.display(u));
        }
    }
    let _ = writeln!(out, "item info essence {}", inst.info.essence.display(u));
    for t in &inst.info.attributes {
        let _ = writeln!(out, "attr info: ({}, {})", t.trigger.display(u), t.revealed.display(u));
    }
    for i in 0..inst.base.explicit.len() {
        let _ = writeln!(out, "event expand base{i}");
    }
    for e in events {
        let _ = writeln!(out, "event {e}");
    }
    out
}

// ---------------------------------------------------------------------------
// Classical oracle comparison
// ---------------------------------------------------------------------------

/// Result of the exhaustive comparison against the classical oracle.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub cases: u64,
    pub mismatches: Vec<String>,
}

fn table_of(models: &ModelSet) -> u64 {
    models.iter().fold(0u64, |acc, m| acc | 1 << m)
}

type Rank = fn(u64) -> i64;

/// With an empty interpretation, compares contraction and revision with the
/// oracle for every base of at most `max_base` formulas (one per truth
/// table) and every essence, under full meet and two rank-based selections.
pub fn classical_equivalence(atoms: usize, max_base: usize) -> OracleComparison {
    let universe = Universe::numbered(atoms).expect("small universe");
    let tables: Vec<u64> = (0..=oracle::full_table(atoms)).collect();
    let reps: Vec<Formula> = tables.iter().map(|&t| oracle::formula_for(t, atoms)).collect();

    let mut bases: Vec<Vec<usize>> = vec![vec![]];
    if max_base >= 1 {
        bases.extend((0..reps.len()).map(|i| vec![i]));
    }
    if max_base >= 2 {
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                bases.push(vec![i, j]);
            }
        }
    }

    let ranks: Vec<(&str, Rank)> = vec![
        ("popcount", |t| t.count_ones() as i64),
        ("mod5", |t| ((t.wrapping_mul(7)) % 5) as i64),
    ];

    let ctx = crate::belief::Context::new(universe, InterpretationMap::new());
    let results: Vec<(u64, Vec<String>)> = bases
        .par_iter()
        .map(|base_idx| {
            let mut cases = 0;
            let mut bad = Vec::new();
            let explicit: Vec<Formula> = base_idx.iter().map(|&i| reps[i].clone()).collect();
            let k = base_idx
                .iter()
                .fold(oracle::full_table(atoms), |acc, &i| acc & tables[i]);
            let bs = BeliefSet::close(&ctx, &BeliefBase::new(explicit, vec![]));
            for (pi, p) in reps.iter().enumerate() {
                let info = ExternalInfo::plain(p.clone());
                let mut sels: Vec<(String, SelectionFunction, oracle::OracleSelection<'_>)> =
                    vec![("all".into(), SelectionFunction::All, oracle::OracleSelection::All)];
                for (name, rank) in &ranks {
                    let owned = *rank;
                    sels.push((
                        name.to_string(),
                        SelectionFunction::ranked(move |b: &BeliefSet| owned(table_of(b.models()))),
                        oracle::OracleSelection::Best(rank),
                    ));
                }
                for (name, sel, osel) in &sels {
                    cases += 1;
                    let c = contract(&bs, &info, sel).expect("tiny instance");
                    let oc = oracle::contract(k, tables[pi], atoms, osel);
                    if table_of(c.models()) != oc || !c.triplets().is_empty() {
                        bad.push(format!("contract base {base_idx:?} by table {pi} ({name})"));
                    }
                    let r = revise(&bs, &info, sel).expect("tiny instance");
                    let or = oracle::revise(k, tables[pi], atoms, osel);
                    if table_of(r.models()) != or || !r.triplets().is_empty() {
                        bad.push(format!("revise base {base_idx:?} by table {pi} ({name})"));
                    }
                }
            }
            (cases, bad)
        })
        .collect();
    let mut out = OracleComparison::default();
    for (cases, bad) in results {
        out.cases += cases;
        out.mismatches.extend(bad);
    }
    out
}

// ---------------------------------------------------------------------------
// Observation witnesses
// ---------------------------------------------------------------------------

/// A concrete instance exhibiting an observation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservationWitness {
    pub seed: Option<u64>,
    pub scenario: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservationReport {
    pub searched: u64,
    /// No gratuitous recovery: `bs ⊄ (bs ÷ info) + info`.
    pub no_gratuitous_recovery: Option<ObservationWitness>,
    /// No Levi identity: `bs * info ≠ (bs ÷ neg-info) + info`.
    pub no_levi_identity: Option<ObservationWitness>,
    /// No consistency upon revision.
    pub no_consistency: Option<ObservationWitness>,
}

/// The instance `Cn({p0, ¬p2}, {p0(p1, p2)})` revised by `({p1}, ∅)`.
pub fn consistency_instance() -> ScenarioInstance {
    let universe = Universe::numbered(3).expect("three atoms");
    let mut interp = InterpretationMap::new();
    interp.insert(Literal::positive(0), Formula::atom(1), Formula::atom(2));
    let base = BeliefBase::new(
        vec![Formula::atom(0), Formula::not(Formula::atom(2))],
        vec![],
    );
    let info = ExternalInfo::plain(Formula::atom(1));
    ScenarioInstance::from_parts(0, universe, interp, base, info)
}

fn no_recovery(inst: &ScenarioInstance) -> Option<String> {
    let bs = inst.belief_set();
    let c = contract(&bs, &inst.info, &SelectionFunction::All).ok()?;
    let back = expand(&c, &inst.info);
    (!bs.is_subset(&back)).then(|| format!("original = {bs:?}, contract then expand = {back:?}"))
}

fn no_levi(inst: &ScenarioInstance) -> Option<String> {
    let bs = inst.belief_set();
    let sel = SelectionFunction::All;
    let r = revise(&bs, &inst.info, &sel).ok()?;
    let neg = ExternalInfo::generated(&bs, negate(&inst.info.essence));
    let levi = expand(&contract(&bs, &neg, &sel).ok()?, &inst.info);
    (r != levi).then(|| format!("revise = {r:?}, levi = {levi:?}"))
}

fn no_consistency(inst: &ScenarioInstance) -> Option<String> {
    let bs = inst.belief_set();
    if !bs.is_consistent() {
        return None;
    }
    let u = inst.universe();
    let v = visible(&bs, &inst.info);
    let each = v.iter().all(|f| !models_of(f, u).is_empty());
    let joint = !crate::logic::models_of_all(&v, u).is_empty();
    if !each || !joint {
        return None;
    }
    let r = revise(&bs, &inst.info, &SelectionFunction::All).ok()?;
    (!r.is_consistent()).then(|| format!("original = {bs:?}, revise = {r:?}"))
}

/// Detail of a witness, if the seed is one.
type Found = Option<String>;

const REVISE: &[&str] = &["revise info select all"];

/// Searches seeds `0..budget` for witnesses of the three observations; the
/// consistency observation is tried on its known instance first.
pub fn find_observation_witnesses(bounds: Bounds, budget: u64) -> ObservationReport {
    let mut report = ObservationReport::default();
    let known = consistency_instance();
    if let Some(detail) = no_consistency(&known) {
        report.no_consistency = Some(ObservationWitness {
            seed: None,
            scenario: render_instance(&known, "no consistency upon revision", REVISE),
            detail,
        });
    }
    const CHUNK: u64 = 256;
    let mut start = 0;
    while start < budget
        && (report.no_gratuitous_recovery.is_none()
            || report.no_levi_identity.is_none()
            || report.no_consistency.is_none())
    {
        let end = (start + CHUNK).min(budget);
        let found: Vec<(u64, Found, Found, Found)> = (start..end)
            .into_par_iter()
            .map(|s| {
                let inst = generate(s, bounds);
                (s, no_recovery(&inst), no_levi(&inst), no_consistency(&inst))
            })
            .collect();
        for (s, rec, levi, cons) in found {
            let inst = || generate(s, bounds);
            if report.no_gratuitous_recovery.is_none() {
                if let Some(detail) = rec {
                    report.no_gratuitous_recovery = Some(ObservationWitness {
                        seed: Some(s),
                        scenario: render_instance(
                            &inst(),
                            "no gratuitous recovery (contract, then expand back)",
                            &["contract info select all", "expand info"],
                        ),
                        detail,
                    });
                }
            }
            if report.no_levi_identity.is_none() {
                if let Some(detail) = levi {
                    report.no_levi_identity = Some(ObservationWitness {
                        seed: Some(s),
                        scenario: render_instance(
                            &inst(),
                            "no levi identity (revise differs from contracting the negation, then expanding)",
                            REVISE,
                        ),
                        detail,
                    });
                }
            }
            if report.no_consistency.is_none() {
                if let Some(detail) = cons {
                    report.no_consistency = Some(ObservationWitness {
                        seed: Some(s),
                        scenario: render_instance(&inst(), "no consistency upon revision", REVISE),
                        detail,
                    });
                }
            }
        }
        report.searched = end;
        start = end;
    }
    report
}
