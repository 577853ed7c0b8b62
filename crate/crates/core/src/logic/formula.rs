use std::collections::HashMap;
use std::fmt;

use super::models::ModelSet;
use crate::error::Error;

/// Default bound on the number of atoms a universe may declare.
pub const DEFAULT_ATOM_LIMIT: usize = 16;

/// A finite, ordered set of atom names.
#[derive(Clone, PartialEq, Eq)]
pub struct Universe {
    names: Vec<String>,
    index: HashMap<String, usize>,
    atom_sets: Vec<ModelSet>,
}

impl Universe {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, Error> {
        Self::with_limit(names, DEFAULT_ATOM_LIMIT)
    }

    pub fn with_limit<S: AsRef<str>>(names: &[S], limit: usize) -> Result<Self, Error> {
        if names.len() > limit {
            return Err(Error::UniverseTooLarge {
                size: names.len(),
                limit,
            });
        }
        let mut index = HashMap::new();
        let mut owned = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let name = name.as_ref();
            if !is_identifier(name) || name == "T" || name == "F" {
                return Err(Error::InvalidAtomName(name.to_string()));
            }
            if index.insert(name.to_string(), i).is_some() {
                return Err(Error::DuplicateAtom(name.to_string()));
            }
            owned.push(name.to_string());
        }
        let atom_sets = (0..owned.len())
            .map(|i| ModelSet::atom(owned.len(), i))
            .collect();
        Ok(Universe {
            names: owned,
            index,
            atom_sets,
        })
    }

    /// Universe `p0 .. p{n-1}`.
    pub fn numbered(n: usize) -> Result<Self, Error> {
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        Self::new(&names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, atom: usize) -> &str {
        &self.names[atom]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn atom(&self, name: &str) -> Option<Formula> {
        self.lookup(name).map(Formula::Atom)
    }

    pub(crate) fn atom_models(&self, atom: usize) -> &ModelSet {
        &self.atom_sets[atom]
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Universe").field(&self.names).finish()
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Propositional formula over the atoms of a [`Universe`].
///
/// Implication is not a constructor; `a -> b` parses to `~a | b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bot,
    Atom(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(index: usize) -> Self {
        Formula::Atom(index)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::or(Formula::not(a), b)
    }

    /// Right-nested conjunction; `Top` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Self {
        let mut parts: Vec<Formula> = parts.into_iter().collect();
        match parts.pop() {
            None => Formula::Top,
            Some(last) => parts
                .into_iter()
                .rev()
                .fold(last, |acc, f| Formula::and(f, acc)),
        }
    }

    /// Right-nested disjunction; `Bot` when empty.
    pub fn disjunction(parts: impl IntoIterator<Item = Formula>) -> Self {
        let mut parts: Vec<Formula> = parts.into_iter().collect();
        match parts.pop() {
            None => Formula::Bot,
            Some(last) => parts
                .into_iter()
                .rev()
                .fold(last, |acc, f| Formula::or(f, acc)),
        }
    }

    pub fn is_literal(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(inner) => matches!(**inner, Formula::Atom(_)),
            _ => false,
        }
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => 1,
            Formula::Not(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => 0,
            Formula::Not(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Largest atom ordinal referenced, if any.
    pub fn max_atom(&self) -> Option<usize> {
        match self {
            Formula::Top | Formula::Bot => None,
            Formula::Atom(i) => Some(*i),
            Formula::Not(a) => a.max_atom(),
            Formula::And(a, b) | Formula::Or(a, b) => a.max_atom().max(b.max_atom()),
        }
    }

    pub fn collect_atoms(&self, out: &mut Vec<usize>) {
        match self {
            Formula::Top | Formula::Bot => {}
            Formula::Atom(i) => {
                if !out.contains(i) {
                    out.push(*i)
                }
            }
            Formula::Not(a) => a.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Renders the formula with the universe's atom names.
    pub fn display<'a>(&'a self, universe: &'a Universe) -> Display<'a> {
        Display {
            formula: self,
            universe,
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Top => write!(f, "T"),
            Formula::Bot => write!(f, "F"),
            Formula::Atom(i) => write!(f, "#{i}"),
            Formula::Not(a) => write!(f, "Not({a:?})"),
            Formula::And(a, b) => write!(f, "And({a:?}, {b:?})"),
            Formula::Or(a, b) => write!(f, "Or({a:?}, {b:?})"),
        }
    }
}

/// Formatting adapter returned by [`Formula::display`].
pub struct Display<'a> {
    formula: &'a Formula,
    universe: &'a Universe,
}

// Binding strength: Or = 1, And = 2, Not/atoms = 3. Binary operators are
// left-associative, so a right operand of equal strength needs parentheses.
fn strength(f: &Formula) -> u8 {
    match f {
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        _ => 3,
    }
}

impl Display<'_> {
    fn write(&self, f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f {
            Formula::Top => out.write_str("T"),
            Formula::Bot => out.write_str("F"),
            Formula::Atom(i) => out.write_str(self.universe.name(*i)),
            Formula::Not(a) => {
                out.write_str("~")?;
                self.operand(a, 3, out)
            }
            Formula::And(a, b) => {
                self.operand(a, 2, out)?;
                out.write_str(" & ")?;
                self.operand(b, 3, out)
            }
            Formula::Or(a, b) => {
                self.operand(a, 1, out)?;
                out.write_str(" | ")?;
                self.operand(b, 2, out)
            }
        }
    }

    fn operand(&self, f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if strength(f) < min {
            out.write_str("(")?;
            self.write(f, out)?;
            out.write_str(")")
        } else {
            self.write(f, out)
        }
    }
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.formula, f)
    }
}

/// Negation normal form: negation only on atoms, De Morgan pushed through,
/// double negations removed, negated constants flipped.
pub fn nnf(f: &Formula) -> Formula {
    match f {
        Formula::Top | Formula::Bot | Formula::Atom(_) => f.clone(),
        Formula::And(a, b) => Formula::and(nnf(a), nnf(b)),
        Formula::Or(a, b) => Formula::or(nnf(a), nnf(b)),
        Formula::Not(inner) => negated_nnf(inner),
    }
}

fn negated_nnf(f: &Formula) -> Formula {
    match f {
        Formula::Top => Formula::Bot,
        Formula::Bot => Formula::Top,
        Formula::Atom(_) => Formula::not(f.clone()),
        Formula::Not(inner) => nnf(inner),
        Formula::And(a, b) => Formula::or(negated_nnf(a), negated_nnf(b)),
        Formula::Or(a, b) => Formula::and(negated_nnf(a), negated_nnf(b)),
    }
}

/// NNF of the negation of `f`.
pub fn negate(f: &Formula) -> Formula {
    negated_nnf(f)
}

/// Canonical form: NNF with And/Or chains flattened, sorted, deduplicated and
/// rebuilt right-nested. Structural equality of canonical forms decides
/// syntactic set membership.
pub fn canonical(f: &Formula) -> Formula {
    canon(&nnf(f))
}

fn canon(f: &Formula) -> Formula {
    match f {
        Formula::And(..) => {
            let mut parts = Vec::new();
            flatten_and(f, &mut parts);
            let mut parts: Vec<Formula> = parts.into_iter().map(canon).collect();
            parts.sort();
            parts.dedup();
            Formula::conjunction(parts)
        }
        Formula::Or(..) => {
            let mut parts = Vec::new();
            flatten_or(f, &mut parts);
            let mut parts: Vec<Formula> = parts.into_iter().map(canon).collect();
            parts.sort();
            parts.dedup();
            Formula::disjunction(parts)
        }
        _ => f.clone(),
    }
}

fn flatten_and<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::And(a, b) => {
            flatten_and(a, out);
            flatten_and(b, out);
        }
        _ => out.push(f),
    }
}

fn flatten_or<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::Or(a, b) => {
            flatten_or(a, out);
            flatten_or(b, out);
        }
        _ => out.push(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: usize) -> Formula {
        Formula::atom(i)
    }

    #[test]
    fn nnf_de_morgan() {
        let f = Formula::not(Formula::and(p(1), p(2)));
        assert_eq!(
            nnf(&f),
            Formula::or(Formula::not(p(1)), Formula::not(p(2)))
        );
    }

    #[test]
    fn nnf_double_negation() {
        assert_eq!(nnf(&Formula::not(Formula::not(p(1)))), p(1));
    }

    #[test]
    fn nnf_de_morgan_with_involution() {
        let f = Formula::not(Formula::or(p(1), Formula::not(p(2))));
        assert_eq!(nnf(&f), Formula::and(Formula::not(p(1)), p(2)));
    }

    #[test]
    fn nnf_constants() {
        assert_eq!(nnf(&Formula::not(Formula::Top)), Formula::Bot);
        assert_eq!(nnf(&Formula::not(Formula::Bot)), Formula::Top);
    }

    #[test]
    fn canonical_sorts_and_dedups() {
        let a = Formula::and(p(1), Formula::and(p(0), p(1)));
        let b = Formula::and(p(0), p(1));
        assert_eq!(canonical(&a), canonical(&b));
        let c = Formula::or(p(2), Formula::or(p(0), p(2)));
        assert_eq!(canonical(&c), Formula::or(p(0), p(2)));
    }

    #[test]
    fn universe_rejects_duplicates_and_constants() {
        assert!(matches!(
            Universe::new(&["a", "a"]),
            Err(Error::DuplicateAtom(_))
        ));
        assert!(matches!(
            Universe::new(&["T"]),
            Err(Error::InvalidAtomName(_))
        ));
        assert!(matches!(
            Universe::with_limit(&["a", "b", "c"], 2),
            Err(Error::UniverseTooLarge { size: 3, limit: 2 })
        ));
    }

    #[test]
    fn display_minimal_parens() {
        let u = Universe::numbered(3).unwrap();
        let f = Formula::and(p(0), Formula::or(p(1), Formula::not(p(2))));
        assert_eq!(f.display(&u).to_string(), "p0 & (p1 | ~p2)");
        let g = Formula::not(Formula::and(p(0), p(1)));
        assert_eq!(g.display(&u).to_string(), "~(p0 & p1)");
        let h = Formula::and(Formula::and(p(0), p(1)), p(2));
        assert_eq!(h.display(&u).to_string(), "p0 & p1 & p2");
        let k = Formula::and(p(0), Formula::and(p(1), p(2)));
        assert_eq!(k.display(&u).to_string(), "p0 & (p1 & p2)");
    }
}
