//! Conformance report: per-postulate counters and failure witnesses.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Witnesses kept per postulate.
pub const MAX_WITNESSES: usize = 5;

/// Verdict tallies of one postulate.
///
/// `checked` counts evaluations; `fired` those whose antecedent held (always
/// equal to `checked` for unconditional postulates). Every fired evaluation
/// either passes or fails; the rest are not applicable.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counter {
    pub checked: u64,
    pub fired: u64,
    pub passed: u64,
    pub failed: u64,
    pub not_applicable: u64,
}

impl Counter {
    pub fn hit_rate(&self) -> f64 {
        if self.checked == 0 {
            0.0
        } else {
            self.fired as f64 / self.checked as f64
        }
    }

    fn merge(&mut self, other: &Counter) {
        self.checked += other.checked;
        self.fired += other.fired;
        self.passed += other.passed;
        self.failed += other.failed;
        self.not_applicable += other.not_applicable;
    }
}

/// A replayable failure: the seed regenerates the instance, the scenario
/// text runs it through the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub postulate: String,
    pub seed: u64,
    pub atoms: usize,
    pub selection: String,
    pub detail: String,
    pub scenario: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformanceReport {
    pub schema: u32,
    pub instances: u64,
    /// Instances abandoned because remainder enumeration hit the work limit.
    pub work_limit_skips: u64,
    pub postulates: BTreeMap<String, Counter>,
    pub witnesses: Vec<Witness>,
}

impl Default for ConformanceReport {
    fn default() -> Self {
        ConformanceReport {
            schema: 1,
            instances: 0,
            work_limit_skips: 0,
            postulates: BTreeMap::new(),
            witnesses: Vec::new(),
        }
    }
}

impl ConformanceReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn counter(&self, postulate: &str) -> Counter {
        self.postulates.get(postulate).copied().unwrap_or_default()
    }

    /// Records an unconditional verdict.
    pub fn record(&mut self, postulate: &str, ok: bool) -> bool {
        self.record_conditional(postulate, Some(ok))
    }

    /// Records a verdict; `None` means the antecedent did not hold.
    pub fn record_conditional(&mut self, postulate: &str, verdict: Option<bool>) -> bool {
        let c = self.postulates.entry(postulate.to_string()).or_default();
        c.checked += 1;
        match verdict {
            None => c.not_applicable += 1,
            Some(true) => {
                c.fired += 1;
                c.passed += 1;
            }
            Some(false) => {
                c.fired += 1;
                c.failed += 1;
            }
        }
        verdict != Some(false)
    }

    pub fn add_witness(&mut self, witness: Witness) {
        let kept = self
            .witnesses
            .iter()
            .filter(|w| w.postulate == witness.postulate)
            .count();
        if kept < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    /// Failures over postulate counters; `diagnostic.` counters are excluded.
    pub fn total_failures(&self) -> u64 {
        self.postulates
            .iter()
            .filter(|(k, _)| !k.starts_with("diagnostic."))
            .map(|(_, c)| c.failed)
            .sum()
    }

    /// Associative merge; witnesses are ordered by (postulate, seed) so the
    /// result does not depend on merge order.
    pub fn merge(mut self, other: ConformanceReport) -> ConformanceReport {
        self.instances += other.instances;
        self.work_limit_skips += other.work_limit_skips;
        for (k, c) in &other.postulates {
            self.postulates.entry(k.clone()).or_default().merge(c);
        }
        let mut all = self.witnesses;
        all.extend(other.witnesses);
        all.sort_by(|a, b| {
            (&a.postulate, a.seed, &a.selection).cmp(&(&b.postulate, b.seed, &b.selection))
        });
        let mut kept: Vec<Witness> = Vec::new();
        for w in all {
            if kept.iter().filter(|k| k.postulate == w.postulate).count() < MAX_WITNESSES {
                kept.push(w);
            }
        }
        self.witnesses = kept;
        self
    }

    /// One line per postulate: counters and hit rate.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "instances: {}  work-limit skips: {}\n",
            self.instances, self.work_limit_skips
        );
        for (name, c) in &self.postulates {
            out.push_str(&format!(
                "{name:<42} checked {:>6}  fired {:>6} ({:>5.1}%)  pass {:>6}  fail {:>4}\n",
                c.checked,
                c.fired,
                100.0 * c.hit_rate(),
                c.passed,
                c.failed
            ));
        }
        out
    }
}
