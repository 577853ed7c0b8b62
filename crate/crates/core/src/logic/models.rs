//! Extensional semantics: sets of models over a finite atom universe.
//!
//! A model is an assignment of truth values to the atoms of a universe. With
//! `n` atoms there are `2^n` models; model `m` makes atom `i` true iff bit `i`
//! of `m` is set. A [`ModelSet`] is a bitset over those `2^n` indices.

use std::fmt;

use smallvec::SmallVec;

/// A single truth assignment, encoded as a bit-vector over the universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Model {
    bits: u32,
    atoms: u8,
}

impl Model {
    pub fn new(bits: u32, atoms: usize) -> Self {
        debug_assert!(atoms <= 32);
        Model {
            bits,
            atoms: atoms as u8,
        }
    }

    pub fn index(self) -> usize {
        self.bits as usize
    }

    pub fn len(self) -> usize {
        self.atoms as usize
    }

    pub fn is_empty(self) -> bool {
        self.atoms == 0
    }

    /// Truth value of the atom with the given ordinal.
    pub fn value(self, atom: usize) -> bool {
        (self.bits >> atom) & 1 == 1
    }
}

impl fmt::Display for Model {
    /// Renders atom 0 first, e.g. `10` for `p0 = true, p1 = false`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.value(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A set of models over a universe of `atoms` atoms.
///
/// Ordering and hashing are structural, so model sets can key maps; two sets
/// compare equal iff they contain the same models over the same universe size.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelSet {
    atoms: u8,
    words: SmallVec<[u64; 1]>,
}

fn word_count(atoms: usize) -> usize {
    let models = 1usize << atoms;
    models.div_ceil(64)
}

fn last_mask(atoms: usize) -> u64 {
    let models = 1usize << atoms;
    if models.is_multiple_of(64) {
        u64::MAX
    } else {
        (1u64 << models) - 1
    }
}

impl ModelSet {
    pub fn empty(atoms: usize) -> Self {
        ModelSet {
            atoms: atoms as u8,
            words: SmallVec::from_elem(0, word_count(atoms)),
        }
    }

    pub fn full(atoms: usize) -> Self {
        let mut words: SmallVec<[u64; 1]> = SmallVec::from_elem(u64::MAX, word_count(atoms));
        if let Some(last) = words.last_mut() {
            *last = last_mask(atoms);
        }
        ModelSet {
            atoms: atoms as u8,
            words,
        }
    }

    /// Models in which the given atom is true.
    pub fn atom(atoms: usize, atom: usize) -> Self {
        let mut set = ModelSet::empty(atoms);
        for m in 0..(1usize << atoms) {
            if (m >> atom) & 1 == 1 {
                set.insert(m);
            }
        }
        set
    }

    pub fn from_indices(atoms: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = ModelSet::empty(atoms);
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn atom_count(&self) -> usize {
        self.atoms as usize
    }

    /// Number of models in the universe this set ranges over.
    pub fn capacity(&self) -> usize {
        1usize << self.atoms
    }

    pub fn insert(&mut self, model: usize) {
        debug_assert!(model < self.capacity());
        self.words[model / 64] |= 1u64 << (model % 64);
    }

    pub fn remove(&mut self, model: usize) {
        self.words[model / 64] &= !(1u64 << (model % 64));
    }

    pub fn contains(&self, model: usize) -> bool {
        model < self.capacity() && (self.words[model / 64] >> (model % 64)) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == ModelSet::full(self.atom_count())
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        debug_assert_eq!(self.atoms, other.atoms);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &ModelSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn and(&self, other: &ModelSet) -> ModelSet {
        let mut out = self.clone();
        out.and_assign(other);
        out
    }

    pub fn or(&self, other: &ModelSet) -> ModelSet {
        let mut out = self.clone();
        out.or_assign(other);
        out
    }

    pub fn minus(&self, other: &ModelSet) -> ModelSet {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
        out
    }

    pub fn complement(&self) -> ModelSet {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        if let Some(last) = out.words.last_mut() {
            *last &= last_mask(self.atom_count());
        }
        out
    }

    pub fn and_assign(&mut self, other: &ModelSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &ModelSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    /// Model indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let bit = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(wi * 64 + bit)
                }
            })
        })
    }

    pub fn models(&self) -> impl Iterator<Item = Model> + '_ {
        let atoms = self.atom_count();
        self.iter().map(move |i| Model::new(i as u32, atoms))
    }
}

impl fmt::Debug for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.models().map(|m| m.to_string())).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_empty() {
        for n in 0..9 {
            assert_eq!(ModelSet::full(n).len(), 1 << n);
            assert!(ModelSet::empty(n).is_empty());
            assert!(ModelSet::full(n).complement().is_empty());
        }
    }

    #[test]
    fn atom_patterns() {
        let p0 = ModelSet::atom(2, 0);
        let p1 = ModelSet::atom(2, 1);
        let both = p0.and(&p1);
        assert_eq!(both.iter().collect::<Vec<_>>(), vec![3]);
        let only_p0 = p0.minus(&p1);
        let rendered: Vec<String> = only_p0.models().map(|m| m.to_string()).collect();
        assert_eq!(rendered, vec!["10"]);
    }

    #[test]
    fn multiword_sets() {
        let p7 = ModelSet::atom(8, 7);
        assert_eq!(p7.len(), 128);
        assert!(p7.complement().and(&p7).is_empty());
        assert_eq!(p7.iter().next(), Some(128));
    }
}
