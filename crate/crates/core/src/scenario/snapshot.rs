//! Reporting view of a belief set over a print basis.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::belief::BeliefSet;
use crate::logic::Formula;

use super::TraceEvent;

/// Triplets split by whether their trigger is believed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripletPartition {
    pub triggered: Vec<String>,
    pub latent: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub schema: u32,
    pub inconsistent: bool,
    /// Print-basis formulas that are members, in basis order. An inconsistent
    /// set lists the whole basis.
    pub members: Vec<String>,
    pub triplets: TripletPartition,
}

/// A run rendered for `--json`: the final snapshot plus the trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    #[serde(flatten)]
    pub snapshot: Snapshot,
    pub trace: Vec<TraceEvent>,
}

pub fn snapshot(bs: &BeliefSet, basis: &[Formula]) -> Snapshot {
    let u = bs.universe();
    let members = basis
        .iter()
        .filter(|f| bs.member(f))
        .map(|f| f.display(u).to_string())
        .collect();
    let render = |t: &crate::association::BeliefTriplet| t.display(u).to_string();
    Snapshot {
        schema: 1,
        inconsistent: !bs.is_consistent(),
        members,
        triplets: TripletPartition {
            triggered: bs.triggered().map(render).collect(),
            latent: bs.latent().map(render).collect(),
        },
    }
}

impl Snapshot {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("snapshot serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}",
            if self.inconsistent { "inconsistent" } else { "consistent" }
        );
        let _ = writeln!(out, "members: {}", self.members.join(" "));
        let _ = writeln!(out, "triggered:");
        for t in &self.triplets.triggered {
            let _ = writeln!(out, "  {t}");
        }
        let _ = writeln!(out, "latent:");
        for t in &self.triplets.latent {
            let _ = writeln!(out, "  {t}");
        }
        out
    }
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// One line per trace event.
pub fn render_trace(trace: &[TraceEvent]) -> String {
    let mut out = String::new();
    for ev in trace {
        let _ = write!(out, "[{}] {} {}", ev.step, ev.operator, ev.item);
        if ev.operator != super::Operator::Expand {
            let _ = write!(out, " ({})", ev.selection);
        }
        if !ev.consistent {
            let _ = write!(out, "  INCONSISTENT");
        }
        out.push('\n');
        if !ev.newly_visible.is_empty() {
            let _ = writeln!(out, "    now believed: {}", ev.newly_visible.join(" "));
        }
        for t in &ev.newly_triggered {
            let _ = writeln!(out, "    triggered: {t}");
        }
    }
    out
}
