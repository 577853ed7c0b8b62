//! Scenario files: a universe, an interpretation map, named items of
//! external information, and a sequence of belief-change events applied to
//! the empty belief set.

mod parse;
mod snapshot;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use parse::{parse_scenario, parse_selection};
pub use snapshot::{render_trace, snapshot, RunReport, Snapshot, TripletPartition};

use crate::belief::{BeliefSet, Context, ExternalInfo, Rounds, TripletKey};
use crate::error::Error;
use crate::logic::{Formula, Universe};
use crate::operators::{contract, expand_traced, revise_stages, SelectionFunction};

/// A named piece of external information.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub name: String,
    pub line: usize,
    pub info: ExternalInfo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    Expand,
    Contract,
    Revise,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::Expand => "expand",
            Operator::Contract => "contract",
            Operator::Revise => "revise",
        })
    }
}

/// Selection clause of an event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelectSpec {
    All,
    Prefer(Vec<Formula>),
}

impl SelectSpec {
    pub fn function(&self) -> SelectionFunction {
        match self {
            SelectSpec::All => SelectionFunction::All,
            SelectSpec::Prefer(list) => SelectionFunction::Prefer(list.clone()),
        }
    }

    /// The clause as written in a scenario file.
    pub fn render(&self, universe: &Universe) -> String {
        match self {
            SelectSpec::All => "select all".to_string(),
            SelectSpec::Prefer(list) => {
                let parts: Vec<String> = list.iter().map(|f| f.display(universe).to_string()).collect();
                format!("prefer {}", parts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub line: usize,
    pub operator: Operator,
    pub item: String,
    pub select: SelectSpec,
}

/// A parsed, validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub ctx: Arc<Context>,
    pub items: Vec<Item>,
    pub events: Vec<Event>,
    /// Formulas whose membership is reported.
    pub print_basis: Vec<Formula>,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, Error> {
        parse_scenario(text)
    }

    pub fn universe(&self) -> &Universe {
        self.ctx.universe()
    }

    pub fn item(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.name == name)
    }
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

/// What one event changed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub step: usize,
    pub line: usize,
    pub operator: Operator,
    pub item: String,
    pub selection: String,
    /// Print-basis formulas believed after the event but not before.
    pub newly_visible: Vec<String>,
    /// Triplets whose trigger became believed, in firing order.
    pub newly_triggered: Vec<String>,
    pub consistent: bool,
}

/// Final belief set and trace of a completed run.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub result: BeliefSet,
    pub trace: Vec<TraceEvent>,
}

/// A run stopped by an operator error; `trace` covers the completed events.
#[derive(Debug, Clone)]
pub struct Aborted {
    pub trace: Vec<TraceEvent>,
    pub error: Error,
}

impl fmt::Display for Aborted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "aborted after {} event(s): {}", self.trace.len(), self.error)
    }
}

fn apply(
    bs: &BeliefSet,
    op: Operator,
    info: &ExternalInfo,
    sel: &SelectionFunction,
) -> Result<(BeliefSet, Rounds), Error> {
    match op {
        Operator::Expand => Ok(expand_traced(bs, info)),
        Operator::Contract => Ok((contract(bs, info, sel)?, Rounds::new())),
        Operator::Revise => revise_stages(bs, info, sel).map(|r| (r.result, r.rounds)),
    }
}

fn trace_event(
    sc: &Scenario,
    step: usize,
    event: &Event,
    before: &BeliefSet,
    after: &BeliefSet,
    rounds: &Rounds,
) -> TraceEvent {
    let u = sc.universe();
    let newly_visible = sc
        .print_basis
        .iter()
        .filter(|f| after.member(f) && !before.member(f))
        .map(|f| f.display(u).to_string())
        .collect();

    let was: HashSet<TripletKey> = before.triggered().map(|t| TripletKey::of(t, u)).collect();
    let mut seen: HashSet<TripletKey> = HashSet::new();
    let mut newly_triggered = Vec::new();
    let fired = rounds.iter().flatten().chain(after.triggered());
    for t in fired {
        let key = TripletKey::of(t, u);
        if after.triplets().contains_key(&key) && !was.contains(&key) && seen.insert(key) {
            newly_triggered.push(t.display(u).to_string());
        }
    }

    TraceEvent {
        step,
        line: event.line,
        operator: event.operator,
        item: event.item.clone(),
        selection: event.select.render(u),
        newly_visible,
        newly_triggered,
        consistent: after.is_consistent(),
    }
}

/// Applies the events in order, starting from the empty belief set.
pub fn run(sc: &Scenario) -> Result<Outcome, Aborted> {
    let mut bs = BeliefSet::empty(&sc.ctx);
    let mut trace = Vec::new();
    for (step, event) in sc.events.iter().enumerate() {
        let item = sc.item(&event.item).expect("validated item reference");
        match apply(&bs, event.operator, &item.info, &event.select.function()) {
            Ok((next, rounds)) => {
                trace.push(trace_event(sc, step + 1, event, &bs, &next, &rounds));
                bs = next;
            }
            Err(error) => return Err(Aborted { trace, error }),
        }
    }
    Ok(Outcome { result: bs, trace })
}

/// Rebuilds the final belief set from a trace alone: each entry names the
/// operator, the item and the selection clause.
pub fn replay(sc: &Scenario, trace: &[TraceEvent]) -> Result<BeliefSet, Error> {
    let mut bs = BeliefSet::empty(&sc.ctx);
    for ev in trace {
        let item = sc.item(&ev.item).ok_or_else(|| Error::Scenario {
            line: ev.line,
            message: format!("unknown item '{}'", ev.item),
        })?;
        let select = parse_selection(&ev.selection, sc.universe(), ev.line)?;
        bs = apply(&bs, ev.operator, &item.info, &select.function())?.0;
    }
    Ok(bs)
}
