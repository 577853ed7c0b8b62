//! Postulate checks on a single instance.

use std::collections::HashMap;
use std::sync::Arc;

use crate::association::cond;
use crate::belief::{visible, visible_neg, BeliefSet, ExternalInfo, Incoming, LinkStore};
use crate::error::Error;
use crate::logic::{is_tautology, models_of, negate, Formula, ModelSet};
use crate::operators::{
    self, expand, meet, raw_intersection, revise_stages, select, substituted_package, Package,
    SelectionFunction, Side,
};

use super::generate::ScenarioInstance;
use super::report::{ConformanceReport, Witness};
use super::render_instance;

/// Postulates verdicted by [`check_all`].
pub const POSTULATES: &[&str] = &[
    "expansion.augmentation",
    "expansion.association_update",
    "contraction.closure",
    "contraction.success",
    "contraction.inclusion",
    "contraction.vacuity",
    "contraction.extensionality",
    "contraction.recovery",
    "contraction.association_update",
    "revision.closure",
    "revision.success1",
    "revision.success2",
    "revision.inclusion",
    "revision.vacuity",
    "revision.extensionality",
    "revision.association_update",
    "representation.partial_meet",
    "identity.contract_then_expand",
    "association.adequacy",
];

/// Supplementary postulates, checked under pre-order selections only.
pub const SUPPLEMENTARY: &[&str] = &[
    "supplementary.conjunctive_inclusion",
    "supplementary.conjunctive_overlap",
    "supplementary.super_expansion",
    "supplementary.sub_expansion",
];

/// Diagnostic: the contraction also equals the unclosed intersection of the
/// selected remainders (shared members and shared triplets).
pub const RAW_INTERSECTION: &str = "diagnostic.raw_intersection";

/// Diagnostic: Recovery restricted to consistent original sets.
pub const RECOVERY_CONSISTENT: &str = "diagnostic.recovery_consistent_original";

/// Suffix of the supplementary counters restricted to one-formula visible
/// sets.
pub const SINGLE_VISIBLE: &str = ".single_visible";

/// Postulates whose antecedent may fail to hold.
pub const CONDITIONAL: &[&str] = &[
    "contraction.vacuity",
    "contraction.extensionality",
    "revision.vacuity",
    "revision.extensionality",
    "supplementary.conjunctive_inclusion",
    "supplementary.sub_expansion",
];

/// Counter recording revisions whose result became inconsistent through a
/// triggered latent belief; their second success condition is judged on the
/// contraction stage.
pub const LATENT_CONFLICT: &str = "note.revision_latent_conflict";

/// Remainder sets memoized per (set, links, visible formulas).
struct Memo {
    delta: HashMap<MemoKey, Vec<BeliefSet>>,
}

type MemoKey = (BeliefSet, Arc<LinkStore>, Vec<ModelSet>);

impl Memo {
    fn key(of: &BeliefSet, visible: &[Formula]) -> MemoKey {
        let mut targets: Vec<ModelSet> = visible
            .iter()
            .map(|f| models_of(f, of.universe()))
            .filter(|m| !m.is_full())
            .collect();
        targets.sort();
        targets.dedup();
        (of.clone(), of.links().clone(), targets)
    }

    fn delta(&mut self, of: &BeliefSet, visible: &[Formula]) -> Result<Vec<BeliefSet>, Error> {
        let key = Self::key(of, visible);
        if let Some(d) = self.delta.get(&key) {
            return Ok(d.clone());
        }
        let d = operators::search(of, visible)?.remainders;
        self.delta.insert(key, d.clone());
        Ok(d)
    }

    fn contract(
        &mut self,
        of: &BeliefSet,
        visible: &[Formula],
        sel: &SelectionFunction,
    ) -> Result<BeliefSet, Error> {
        let d = self.delta(of, visible)?;
        if d.is_empty() {
            return Ok(of.clone());
        }
        Ok(meet(&select(sel, &d, of)?))
    }

    /// Revision composed from memoized pieces: (contracted, result).
    fn revise(
        &mut self,
        of: &BeliefSet,
        info: &impl Incoming,
        sel: &SelectionFunction,
    ) -> Result<(BeliefSet, BeliefSet), Error> {
        let v = visible(of, info);
        let c = self.contract(of, &visible_neg(of, info), sel)?;
        let r = expand(&c, &Package::new(v, info.attributes().to_vec()));
        Ok((c, r))
    }
}

/// Visible sets equal up to element-wise equivalence.
fn same_content(a: &[Formula], b: &[Formula], of: &BeliefSet) -> bool {
    let u = of.universe();
    let ma: Vec<ModelSet> = a.iter().map(|f| models_of(f, u)).collect();
    let mb: Vec<ModelSet> = b.iter().map(|f| models_of(f, u)).collect();
    ma.iter().all(|m| mb.contains(m)) && mb.iter().all(|m| ma.contains(m))
}

/// `Cn({P}^⋄)`: the closure of the information alone.
fn closure_of(of: &BeliefSet, info: &ExternalInfo) -> BeliefSet {
    expand(&BeliefSet::empty(of.context()), info)
}

/// `(P, Cond(P))` relative to `of`.
fn with_cond(of: &BeliefSet, p: &Formula) -> Package {
    let attrs = cond(&of.tuple(), p).into_iter().collect();
    Package::new(vec![p.clone()], attrs)
}

/// `a ∩ b ⊆ c`.
fn meet_within(a: &BeliefSet, b: &BeliefSet, c: &BeliefSet) -> bool {
    let both = raw_intersection(&[a.clone(), b.clone()]);
    both.is_subset(c)
}

struct Run<'a> {
    inst: &'a ScenarioInstance,
    report: ConformanceReport,
    memo: Memo,
}

impl Run<'_> {
    fn verdict(&mut self, postulate: &str, selection: &str, verdict: Option<bool>, detail: impl FnOnce() -> String) {
        if !self.report.record_conditional(postulate, verdict) {
            let inst = self.inst;
            self.report.add_witness(Witness {
                postulate: postulate.to_string(),
                seed: inst.seed,
                atoms: inst.universe().len(),
                selection: selection.to_string(),
                detail: detail(),
                scenario: render_instance(inst, postulate, &["contract info select all"]),
            });
        }
    }

    /// Supplementary verdicts are also tallied separately for one-formula
    /// visible sets, where the classical single-sentence argument applies.
    fn supplementary_verdict(
        &mut self,
        postulate: &str,
        selection: &str,
        single: bool,
        verdict: Option<bool>,
        detail: impl FnOnce() -> String,
    ) {
        if single {
            self.report
                .record_conditional(&format!("{postulate}{SINGLE_VISIBLE}"), verdict);
        }
        self.verdict(postulate, selection, verdict, detail);
    }

    fn adequate(&mut self, sets: &[&BeliefSet]) {
        let ok = sets.iter().all(|b| b.adequacy_check());
        self.verdict("association.adequacy", "-", Some(ok), || "inadequate set".into());
    }

    fn expansion(&mut self, bs: &BeliefSet) {
        let info = &self.inst.info;
        let e = expand(bs, info);
        // Cn(Cn(B) ∪ {P}^⋄) from an explicit base: the theory of bs, the
        // essence, and every triplet at hand.
        let mut triplets: Vec<_> = bs.links().iter().cloned().collect();
        triplets.extend(info.attributes.iter().cloned());
        let base = crate::belief::BeliefBase::new(vec![bs.theory(), info.essence.clone()], triplets);
        let direct = BeliefSet::close(bs.context(), &base);
        self.verdict("expansion.augmentation", "-", Some(e == direct), || {
            format!("expand = {e:?}, closure of union = {direct:?}")
        });
        let recomputed = BeliefSet::from_models(e.context(), e.models().clone(), e.links().clone());
        self.verdict(
            "expansion.association_update",
            "-",
            Some(recomputed.triplets() == e.triplets()),
            || format!("expand = {e:?}"),
        );
        self.adequate(&[&e]);
    }

    fn per_selection(
        &mut self,
        bs: &BeliefSet,
        name: &str,
        sel: &SelectionFunction,
    ) -> Result<(), Error> {
        let inst = self.inst;
        let info = &inst.info;
        let u = bs.universe().clone();
        let v = visible(bs, info);
        let v_neg = visible_neg(bs, info);

        // ---- contraction ----
        let c = operators::contract(bs, info, sel)?;
        let delta = self.memo.delta(bs, &v)?;
        let chosen = select(sel, &delta, bs)?;
        let closed = meet(&chosen);
        self.verdict("representation.partial_meet", name, Some(c == closed), || {
            format!("contract = {c:?}, meet of selected remainders = {closed:?}")
        });
        let raw = raw_intersection(&chosen);
        self.verdict(RAW_INTERSECTION, name, Some(c == raw), || {
            format!("contract = {c:?}, raw intersection = {raw:?}")
        });

        self.verdict("contraction.closure", name, Some(c.is_closed()), || format!("{c:?}"));
        let success = v
            .iter()
            .all(|p| is_tautology(p, &u) || !c.member(p));
        self.verdict("contraction.success", name, Some(success), || format!("{c:?}"));
        self.verdict("contraction.inclusion", name, Some(c.is_subset(bs)), || {
            format!("contract = {c:?}, original = {bs:?}")
        });
        let vacuous = v.iter().all(|p| !bs.member(p) || is_tautology(p, &u));
        self.verdict(
            "contraction.vacuity",
            name,
            vacuous.then(|| c == *bs),
            || format!("contract = {c:?}"),
        );
        for partner in [&inst.rewrite, &inst.other] {
            let pv = visible(bs, partner);
            let verdict = if same_content(&v, &pv, bs) {
                let pc = self.memo.contract(bs, &pv, sel)?;
                Some(pc == c)
            } else {
                None
            };
            self.verdict("contraction.extensionality", name, verdict, || {
                format!("partner essence {}", partner.essence.display(&u))
            });
        }
        let recovered = expand(&c, &Package::formulas(v.clone()));
        let recovery = bs.is_subset(&recovered);
        self.verdict("contraction.recovery", name, Some(recovery), || {
            format!("original = {bs:?}, recovered = {recovered:?}")
        });
        self.report.record_conditional(
            RECOVERY_CONSISTENT,
            bs.is_consistent().then_some(recovery),
        );
        let recomputed = BeliefSet::from_models(c.context(), c.models().clone(), c.links().clone());
        self.verdict(
            "contraction.association_update",
            name,
            Some(recomputed.triplets() == c.triplets()),
            || format!("{c:?}"),
        );

        // ---- revision ----
        let rev = revise_stages(bs, info, sel)?;
        let r = &rev.result;
        let (mc, mr) = self.memo.revise(bs, info, sel)?;
        self.verdict(
            "identity.contract_then_expand",
            name,
            Some(*r == mr && rev.contracted == mc),
            || format!("revise = {r:?}, composed = {mr:?}"),
        );
        self.verdict("revision.closure", name, Some(r.is_closed()), || format!("{r:?}"));
        let s1 = v.iter().all(|p| r.member(p));
        self.verdict("revision.success1", name, Some(s1), || format!("{r:?}"));
        let judged = if r.is_consistent() { r } else { &rev.contracted };
        self.report
            .record_conditional(LATENT_CONFLICT, (!r.is_consistent()).then_some(true));
        let s2 = v_neg
            .iter()
            .all(|p| is_tautology(p, &u) || !judged.member(p));
        self.verdict("revision.success2", name, Some(s2), || format!("{r:?}"));
        let e = expand(bs, info);
        self.verdict("revision.inclusion", name, Some(r.is_subset(&e)), || {
            format!("revise = {r:?}, expand = {e:?}")
        });
        let vac = v_neg.iter().all(|p| !bs.member(p));
        self.verdict("revision.vacuity", name, vac.then(|| *r == e), || {
            format!("revise = {r:?}, expand = {e:?}")
        });
        let own = closure_of(bs, info);
        for partner in [&inst.rewrite, &inst.other] {
            let verdict = if closure_of(bs, partner) == own {
                let (_, pr) = self.memo.revise(bs, partner, sel)?;
                Some(pr == *r)
            } else {
                None
            };
            self.verdict("revision.extensionality", name, verdict, || {
                format!("partner essence {}", partner.essence.display(&u))
            });
        }
        let recomputed = BeliefSet::from_models(r.context(), r.models().clone(), r.links().clone());
        self.verdict(
            "revision.association_update",
            name,
            Some(recomputed.triplets() == r.triplets()),
            || format!("{r:?}"),
        );
        self.adequate(&[&c, r, &rev.contracted, &e, &recovered]);

        // ---- supplementary ----
        if sel.is_preorder() {
            self.supplementary(bs, name, sel, &v, &c, r)?;
        }
        Ok(())
    }

    fn supplementary(
        &mut self,
        bs: &BeliefSet,
        name: &str,
        sel: &SelectionFunction,
        v: &[Formula],
        c: &BeliefSet,
        r: &BeliefSet,
    ) -> Result<(), Error> {
        let info = &self.inst.info;
        let conjunctions: Vec<Formula> = v
            .iter()
            .filter(|f| matches!(f, Formula::And(..)))
            .cloned()
            .collect();
        if conjunctions.is_empty() {
            for p in SUPPLEMENTARY {
                self.report.record_conditional(p, None);
                if v.len() == 1 {
                    self.report
                        .record_conditional(&format!("{p}{SINGLE_VISIBLE}"), None);
                }
            }
            return Ok(());
        }
        let single = v.len() == 1;
        for conj in conjunctions {
            let Formula::And(p1, p2) = &conj else { unreachable!() };
            let left = substituted_package(bs, info, &conj, Side::Left)?;
            let right = substituted_package(bs, info, &conj, Side::Right)?;
            let k1 = self.memo.contract(bs, &left.formulas, sel)?;
            let k2 = self.memo.contract(bs, &right.formulas, sel)?;

            let inclusion = (!c.member(p1)).then(|| c.is_subset(&k1));
            self.supplementary_verdict("supplementary.conjunctive_inclusion", name, single, inclusion, || {
                format!("contract = {c:?}, by left conjunct = {k1:?}")
            });
            self.supplementary_verdict(
                "supplementary.conjunctive_overlap",
                name,
                single,
                Some(meet_within(&k1, &k2, c)),
                || format!("left = {k1:?}, right = {k2:?}, contract = {c:?}"),
            );

            let (_, r1) = self.memo.revise(bs, &left, sel)?;
            let super_rhs = expand(&r1, &with_cond(&r1, p2));
            self.supplementary_verdict("supplementary.super_expansion", name, single, Some(r.is_subset(&super_rhs)), || {
                format!("revise = {r:?}, rhs = {super_rhs:?}")
            });

            let (_, r2) = self.memo.revise(bs, &right, sel)?;
            let sub = (!r2.member(&negate(p1))).then(|| {
                let lhs = expand(&r2, &with_cond(&r2, p1));
                lhs.is_subset(r)
            });
            self.supplementary_verdict("supplementary.sub_expansion", name, single, sub, || {
                format!("revise = {r:?}, by right conjunct = {r2:?}")
            });
        }
        Ok(())
    }
}

/// Evaluates every postulate on `inst` under each of its selections.
pub fn check_all(inst: &ScenarioInstance) -> ConformanceReport {
    let mut run = Run {
        inst,
        report: ConformanceReport::new(),
        memo: Memo {
            delta: HashMap::new(),
        },
    };
    let bs = inst.belief_set();
    let outcome = (|| -> Result<(), Error> {
        run.adequate(&[&bs]);
        run.expansion(&bs);
        for (name, sel) in &inst.selections {
            run.per_selection(&bs, name, sel)?;
        }
        Ok(())
    })();
    match outcome {
        Ok(()) => {
            run.report.instances = 1;
            run.report
        }
        Err(_) => ConformanceReport {
            instances: 1,
            work_limit_skips: 1,
            ..ConformanceReport::new()
        },
    }
}

// ---------------------------------------------------------------------------
// Brute-force remainder oracle
// ---------------------------------------------------------------------------

/// Remainders by exhaustive enumeration of every model-set superset; only
/// feasible for a handful of free models.
pub fn brute_force_remainders(bs: &BeliefSet, visible: &[Formula]) -> Vec<BeliefSet> {
    let u = bs.universe();
    let targets: Vec<ModelSet> = visible
        .iter()
        .map(|f| models_of(f, u))
        .filter(|m| !m.is_full())
        .collect();
    if targets.is_empty() {
        return Vec::new();
    }
    let free: Vec<usize> = bs.models().complement().iter().collect();
    assert!(free.len() <= 20, "brute force needs few free models");
    let mut valid: Vec<BeliefSet> = Vec::new();
    for mask in 0u64..(1u64 << free.len()) {
        let mut theory = bs.models().clone();
        for (i, &m) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                theory.insert(m);
            }
        }
        if targets.iter().any(|t| theory.is_subset(t)) {
            continue;
        }
        let closed = BeliefSet::from_models(bs.context(), theory.clone(), bs.links().clone());
        if closed.models() == &theory {
            valid.push(closed);
        }
    }
    // Maximal theories: no other valid theory strictly between.
    let maximal: Vec<BeliefSet> = valid
        .iter()
        .filter(|b| {
            !valid
                .iter()
                .any(|o| o.models() != b.models() && o.models().is_subset(b.models()))
        })
        .cloned()
        .collect();
    let held = targets
        .iter()
        .filter(|t| bs.models().is_subset(t))
        .fold(ModelSet::full(u.len()), |acc, t| acc.and(t));
    maximal
        .into_iter()
        .filter(|b| {
            BeliefSet::from_models(bs.context(), b.models().and(&held), bs.links().clone()) == *bs
        })
        .collect()
}
