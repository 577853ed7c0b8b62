//! Line-oriented scenario reader.
//!
//! ```text
//! atoms p1 p2 p3
//! assoc p1: (p2, p3)
//! item key essence p1
//! attr key: (p2, p3)
//! event expand key
//! event revise key prefer p2, p3
//! print p1 p2 p3
//! ```
//!
//! `#` starts a comment. Every error carries the 1-based line number.

use std::collections::HashMap;

use crate::association::{in_exc, BeliefTriplet, InterpretationMap, Literal};
use crate::belief::{Context, ExternalInfo};
use crate::error::Error;
use crate::logic::{is_identifier, parse, Formula, Universe};

use super::{Event, Item, Operator, Scenario, SelectSpec};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Scenario {
        line,
        message: message.into(),
    }
}

fn at_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Scenario { .. } => e,
        other => err(line, other.to_string()),
    }
}

/// Splits `s` at commas outside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// `(<formula>, <formula>)`.
fn pair(text: &str, universe: &Universe, line: usize) -> Result<(Formula, Formula), Error> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| err(line, "expected '(<trigger>, <revealed>)'"))?;
    let parts = split_top_level(inner);
    if parts.len() != 2 {
        return Err(err(line, "expected exactly two formulas in the pair"));
    }
    let trigger = parse(parts[0], universe).map_err(at_line(line))?;
    let revealed = parse(parts[1], universe).map_err(at_line(line))?;
    Ok((trigger, revealed))
}

/// `<head>: <rest>`.
fn colon(rest: &str, line: usize) -> Result<(&str, &str), Error> {
    rest.split_once(':')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| err(line, "expected ':'"))
}

/// Parses a selection clause: empty, `select all`, or `prefer f, g, ...`.
pub fn parse_selection(text: &str, universe: &Universe, line: usize) -> Result<SelectSpec, Error> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(SelectSpec::All);
    }
    let (word, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    match word {
        "select" if rest.trim() == "all" => Ok(SelectSpec::All),
        "select" => Err(err(line, format!("unknown selection 'select {}'", rest.trim()))),
        "prefer" => {
            let formulas = split_top_level(rest)
                .into_iter()
                .map(|f| {
                    if f.is_empty() {
                        Err(err(line, "empty formula in 'prefer' list"))
                    } else {
                        parse(f, universe).map_err(at_line(line))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SelectSpec::Prefer(formulas))
        }
        other => Err(err(line, format!("expected 'select all' or 'prefer', found '{other}'"))),
    }
}

#[derive(Default)]
struct Draft {
    universe: Option<Universe>,
    interp: InterpretationMap,
    items: Vec<Item>,
    index: HashMap<String, usize>,
    events: Vec<Event>,
    print: Option<Vec<Formula>>,
}

impl Draft {
    fn universe(&self, line: usize) -> Result<&Universe, Error> {
        self.universe
            .as_ref()
            .ok_or_else(|| err(line, "'atoms' must be declared first"))
    }
}

/// Parses and validates a scenario.
pub fn parse_scenario(text: &str) -> Result<Scenario, Error> {
    let mut d = Draft::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((content, ""));
        match keyword {
            "atoms" => {
                if d.universe.is_some() {
                    return Err(err(line, "'atoms' declared twice"));
                }
                let names: Vec<&str> = rest.split_whitespace().collect();
                if names.is_empty() {
                    return Err(err(line, "'atoms' needs at least one name"));
                }
                d.universe = Some(Universe::new(&names).map_err(at_line(line))?);
            }
            "assoc" => {
                let u = d.universe(line)?;
                let (key, value) = colon(rest, line)?;
                let key = parse(key, u).map_err(at_line(line))?;
                let lit = Literal::from_formula(&key)
                    .ok_or_else(|| err(line, format!("'{}' is not a literal", key.display(u))))?;
                let (trigger, revealed) = pair(value, u, line)?;
                let mut single = InterpretationMap::new();
                single.insert(lit, trigger.clone(), revealed.clone());
                if let Some(v) = single.validate(u).first() {
                    let which = if v.trigger_excluded { "trigger" } else { "revealed formula" };
                    return Err(err(
                        line,
                        format!("{which} is logically excluded by the key {}", key.display(u)),
                    ));
                }
                d.interp.insert(lit, trigger, revealed);
            }
            "item" => {
                let u = d.universe(line)?;
                let (name, rest) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err(line, "expected 'item <name> essence <formula>'"))?;
                let essence = rest
                    .trim()
                    .strip_prefix("essence")
                    .filter(|e| e.starts_with(char::is_whitespace))
                    .ok_or_else(|| err(line, "expected 'essence <formula>'"))?;
                let essence = parse(essence, u).map_err(at_line(line))?;
                if !is_identifier(name) {
                    return Err(err(line, format!("'{name}' is not a valid item name")));
                }
                if d.index.contains_key(name) {
                    return Err(err(line, format!("item '{name}' declared twice")));
                }
                d.index.insert(name.to_string(), d.items.len());
                d.items.push(Item {
                    name: name.to_string(),
                    line,
                    info: ExternalInfo::plain(essence),
                });
            }
            "attr" => {
                let u = d.universe(line)?;
                let (name, value) = colon(rest, line)?;
                let (trigger, revealed) = pair(value, u, line)?;
                let idx = *d
                    .index
                    .get(name)
                    .ok_or_else(|| err(line, format!("unknown item '{name}'")))?;
                for (what, f) in [("trigger", &trigger), ("revealed formula", &revealed)] {
                    if in_exc(&d.items[idx].info.essence, f, u) {
                        return Err(err(
                            line,
                            format!("{what} is logically excluded by the essence of '{name}'"),
                        ));
                    }
                }
                let info = &mut d.items[idx].info;
                let t = BeliefTriplet::new(info.essence.clone(), trigger, revealed);
                info.attributes.push(t);
            }
            "event" => {
                let u = d.universe(line)?;
                let mut words = rest.splitn(3, char::is_whitespace);
                let op = match words.next().unwrap_or("") {
                    "expand" => Operator::Expand,
                    "contract" => Operator::Contract,
                    "revise" => Operator::Revise,
                    other => {
                        return Err(err(
                            line,
                            format!("unknown operator '{other}' (expected expand, contract or revise)"),
                        ))
                    }
                };
                let item = words
                    .next()
                    .filter(|w| !w.is_empty())
                    .ok_or_else(|| err(line, "event needs an item name"))?;
                if !d.index.contains_key(item) {
                    return Err(err(line, format!("unknown item '{item}'")));
                }
                let select = parse_selection(words.next().unwrap_or(""), u, line)?;
                if op == Operator::Expand && select != SelectSpec::All {
                    return Err(err(line, "expansion takes no selection"));
                }
                d.events.push(Event {
                    line,
                    operator: op,
                    item: item.to_string(),
                    select,
                });
            }
            "print" => {
                let u = d.universe(line)?;
                let parts: Vec<&str> = if rest.contains(',') {
                    split_top_level(rest)
                } else {
                    rest.split_whitespace().collect()
                };
                let basis = parts
                    .into_iter()
                    .map(|f| parse(f, u).map_err(at_line(line)))
                    .collect::<Result<Vec<_>, _>>()?;
                d.print.get_or_insert_with(Vec::new).extend(basis);
            }
            other => return Err(err(line, format!("unknown directive '{other}'"))),
        }
    }

    let universe = d
        .universe
        .ok_or_else(|| err(text.lines().count().max(1), "missing 'atoms' declaration"))?;
    let print_basis = d
        .print
        .unwrap_or_else(|| (0..universe.len()).map(Formula::atom).collect());

    let mut declared: Vec<Formula> = Vec::new();
    for item in &d.items {
        declared.extend(item.info.formulas());
    }
    for event in &d.events {
        if let SelectSpec::Prefer(list) = &event.select {
            declared.extend(list.iter().cloned());
        }
    }
    declared.extend(print_basis.iter().cloned());
    let ctx = Context::with_formulas(universe, d.interp, declared);

    Ok(Scenario {
        ctx,
        items: d.items,
        events: d.events,
        print_basis,
    })
}
