//! Seeded random scenario instances.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::association::{in_exc, BeliefTriplet, InterpretationMap, Literal};
use crate::belief::{BeliefBase, BeliefSet, Context, ExternalInfo};
use crate::logic::{is_consistent_semantic, models_of, negate, Formula, Universe};
use crate::operators::SelectionFunction;

/// Size bounds for generated instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub atoms: usize,
    pub base_formulas: usize,
    pub interp_entries: usize,
    pub depth: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            atoms: 4,
            base_formulas: 4,
            interp_entries: 4,
            depth: 3,
        }
    }
}

impl Bounds {
    pub fn with_atoms(atoms: usize) -> Self {
        Bounds {
            atoms,
            ..Self::default()
        }
    }
}

/// A generated scenario: a base, incoming information, two partners for the
/// extensionality postulates, and the selection functions to check with.
#[derive(Debug, Clone)]
pub struct ScenarioInstance {
    pub seed: u64,
    pub bounds: Bounds,
    pub ctx: Arc<Context>,
    pub base: BeliefBase,
    pub info: ExternalInfo,
    /// Logically equivalent rewrite of `info`.
    pub rewrite: ExternalInfo,
    /// Independently generated information.
    pub other: ExternalInfo,
    pub selections: Vec<(String, SelectionFunction)>,
}

impl ScenarioInstance {
    pub fn universe(&self) -> &Universe {
        self.ctx.universe()
    }

    pub fn interp(&self) -> &InterpretationMap {
        self.ctx.interp()
    }

    pub fn belief_set(&self) -> BeliefSet {
        BeliefSet::close(&self.ctx, &self.base)
    }

    /// Builds an instance from explicit parts, with the default selections.
    pub fn from_parts(
        seed: u64,
        universe: Universe,
        interp: InterpretationMap,
        base: BeliefBase,
        info: ExternalInfo,
    ) -> ScenarioInstance {
        let bounds = Bounds {
            atoms: universe.len(),
            ..Bounds::default()
        };
        let rewrite = info.clone();
        let other = info.clone();
        let ctx = Context::with_formulas(
            universe,
            interp,
            declared(&base, &[&info, &rewrite, &other]),
        );
        ScenarioInstance {
            seed,
            bounds,
            ctx,
            base,
            info,
            rewrite,
            other,
            selections: selections(seed),
        }
    }
}

/// A total pre-order over belief sets: a seeded hash of the models, bucketed
/// into `buckets` ranks.
pub fn random_preorder(seed: u64, buckets: u64) -> SelectionFunction {
    SelectionFunction::ranked(move |bs: &BeliefSet| {
        let mut h = DefaultHasher::new();
        seed.hash(&mut h);
        bs.models().hash(&mut h);
        (h.finish() % buckets) as i64
    })
}

fn selections(seed: u64) -> Vec<(String, SelectionFunction)> {
    let mut out = vec![("all".to_string(), SelectionFunction::All)];
    for j in 0..3u64 {
        let s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(j + 1);
        let buckets = 2 + (j % 2);
        out.push((
            format!("preorder{j}(seed={s},buckets={buckets})"),
            random_preorder(s, buckets),
        ));
    }
    out
}

fn declared(base: &BeliefBase, infos: &[&ExternalInfo]) -> Vec<Formula> {
    let mut out: Vec<Formula> = base.explicit.clone();
    for t in &base.triplets {
        out.extend([t.subject.clone(), t.trigger.clone(), t.revealed.clone()]);
    }
    for info in infos {
        for f in info.formulas() {
            if let Formula::And(a, b) = &f {
                out.push((**a).clone());
                out.push((**b).clone());
            }
            out.push(f);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Random formulas
// ---------------------------------------------------------------------------

struct Gen {
    rng: ChaCha8Rng,
    atoms: usize,
}

impl Gen {
    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn literal(&mut self) -> Formula {
        let a = Formula::atom(self.rng.gen_range(0..self.atoms));
        if self.chance(0.35) {
            Formula::not(a)
        } else {
            a
        }
    }

    fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.chance(0.4) {
            return self.literal();
        }
        match self.rng.gen_range(0..10) {
            0 => Formula::not(self.formula(depth - 1)),
            1..=5 => Formula::and(self.formula(depth - 1), self.formula(depth - 1)),
            _ => Formula::or(self.formula(depth - 1), self.formula(depth - 1)),
        }
    }

    fn conjunction(&mut self, depth: usize) -> Formula {
        let d = depth.saturating_sub(1);
        Formula::and(self.formula(d), self.formula(d))
    }

    fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.rng.gen_range(0..items.len())]
    }
}

/// Structurally different, logically equivalent formula.
fn rewrite(f: &Formula, rng: &mut ChaCha8Rng) -> Formula {
    match f {
        Formula::And(a, b) => {
            let (a, b) = (rewrite(a, rng), rewrite(b, rng));
            match rng.gen_range(0..3) {
                0 => Formula::and(b, a),
                1 => Formula::not(Formula::or(negate(&a), negate(&b))),
                _ => Formula::and(a, b),
            }
        }
        Formula::Or(a, b) => {
            let (a, b) = (rewrite(a, rng), rewrite(b, rng));
            match rng.gen_range(0..3) {
                0 => Formula::or(b, a),
                1 => Formula::not(Formula::and(negate(&a), negate(&b))),
                _ => Formula::or(a, b),
            }
        }
        Formula::Not(a) if rng.gen_bool(0.3) => Formula::not(rewrite(a, rng)),
        other => {
            if rng.gen_bool(0.3) {
                Formula::not(Formula::not(other.clone()))
            } else {
                other.clone()
            }
        }
    }
}

fn rewrite_info(info: &ExternalInfo, rng: &mut ChaCha8Rng) -> ExternalInfo {
    let essence = rewrite(&info.essence, rng);
    let attributes = info
        .attributes
        .iter()
        .map(|t| {
            BeliefTriplet::new(
                essence.clone(),
                rewrite(&t.trigger, rng),
                rewrite(&t.revealed, rng),
            )
        })
        .collect();
    ExternalInfo {
        essence,
        attributes,
    }
}

fn gen_info(g: &mut Gen, base: &[Formula], universe: &Universe, depth: usize) -> ExternalInfo {
    // Essences are often conjunctions (for the conjunct-substitution
    // postulates) and often related to the base (so contraction bites).
    let essence = match g.rng.gen_range(0..10) {
        0..=2 if !base.is_empty() => g.pick(base).clone(),
        3..=4 if !base.is_empty() => {
            let b = g.pick(base).clone();
            let l = g.literal();
            if g.chance(0.5) {
                Formula::and(b, l)
            } else {
                Formula::and(l, b)
            }
        }
        5..=7 => g.conjunction(depth),
        _ => g.formula(depth),
    };
    let mut attributes = Vec::new();
    let count = g.rng.gen_range(0..=2);
    for _ in 0..count {
        let trigger = if !base.is_empty() && g.chance(0.6) {
            g.pick(base).clone()
        } else {
            g.formula(1)
        };
        let revealed = if g.chance(0.3) {
            g.conjunction(2)
        } else {
            g.formula(1)
        };
        if in_exc(&essence, &trigger, universe) || in_exc(&essence, &revealed, universe) {
            continue;
        }
        attributes.push(BeliefTriplet::new(essence.clone(), trigger, revealed));
    }
    ExternalInfo {
        essence,
        attributes,
    }
}

/// Deterministic instance for `seed` within `bounds`.
pub fn generate(seed: u64, bounds: Bounds) -> ScenarioInstance {
    let atoms = bounds.atoms.clamp(1, 4);
    let depth = bounds.depth.clamp(1, 3);
    let universe = Universe::numbered(atoms).expect("at most four atoms");
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        atoms,
    };

    let mut interp = InterpretationMap::new();
    if bounds.interp_entries > 0 && !g.chance(0.15) {
        let n = g.rng.gen_range(1..=bounds.interp_entries);
        for _ in 0..n {
            let key = g.literal();
            let lit = Literal::from_formula(&key).expect("literal");
            let trigger = g.formula(1);
            let revealed = g.formula(1);
            interp.insert(lit, trigger, revealed);
        }
        interp.retain_valid(&universe);
    }

    let mut explicit = Vec::new();
    if bounds.base_formulas > 0 {
        let n = g.rng.gen_range(1..=bounds.base_formulas);
        for _ in 0..n {
            // Keep the base consistent when a few attempts allow it.
            let mut f = g.formula(depth);
            for _ in 0..4 {
                let mut with = explicit.clone();
                with.push(f.clone());
                if is_consistent_semantic(&with, &universe) {
                    break;
                }
                f = g.formula(depth);
            }
            explicit.push(f);
        }
    }
    let mut base_triplets = Vec::new();
    if !explicit.is_empty() && g.chance(0.25) {
        let subject = g.pick(&explicit).clone();
        let trigger = g.formula(1);
        let revealed = g.formula(1);
        if !in_exc(&subject, &trigger, &universe)
            && !in_exc(&subject, &revealed, &universe)
            && !models_of(&subject, &universe).is_empty()
        {
            base_triplets.push(BeliefTriplet::new(subject, trigger, revealed));
        }
    }
    let base = BeliefBase::new(explicit, base_triplets);

    let info = gen_info(&mut g, &base.explicit, &universe, depth);
    let rewrite = rewrite_info(&info, &mut g.rng);
    let other = gen_info(&mut g, &base.explicit, &universe, depth);

    let ctx = Context::with_formulas(
        universe,
        interp,
        declared(&base, &[&info, &rewrite, &other]),
    );
    ScenarioInstance {
        seed,
        bounds,
        ctx,
        base,
        info,
        rewrite,
        other,
        selections: selections(seed),
    }
}
