//! Classical partial meet contraction and revision, written from scratch
//! over truth tables packed in a `u64` (at most six atoms). It shares no
//! code with the operators so that agreement is meaningful.

use crate::logic::Formula;

/// Truth table of `f` over `atoms` atoms: bit `m` is set iff assignment `m`
/// (atom `i` true iff bit `i` of `m`) satisfies `f`.
pub fn truth_table(f: &Formula, atoms: usize) -> u64 {
    assert!(atoms <= 6, "oracle handles at most six atoms");
    (0..1usize << atoms)
        .filter(|&m| eval(f, m))
        .fold(0u64, |acc, m| acc | 1 << m)
}

fn eval(f: &Formula, m: usize) -> bool {
    match f {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Atom(i) => m >> i & 1 == 1,
        Formula::Not(a) => !eval(a, m),
        Formula::And(a, b) => eval(a, m) && eval(b, m),
        Formula::Or(a, b) => eval(a, m) || eval(b, m),
    }
}

pub fn full_table(atoms: usize) -> u64 {
    if atoms == 6 {
        u64::MAX
    } else {
        (1u64 << (1 << atoms)) - 1
    }
}

/// A formula with truth table `table`, in disjunctive normal form.
pub fn formula_for(table: u64, atoms: usize) -> Formula {
    let mut disjuncts = Vec::new();
    for m in 0..1usize << atoms {
        if table >> m & 1 == 1 {
            let lits = (0..atoms).map(|i| {
                if m >> i & 1 == 1 {
                    Formula::Atom(i)
                } else {
                    Formula::Not(Box::new(Formula::Atom(i)))
                }
            });
            disjuncts.push(Formula::conjunction(lits));
        }
    }
    Formula::disjunction(disjuncts)
}

/// Oracle selection: all remainders, or the best ones under a rank on
/// theories (given by their truth tables).
pub enum OracleSelection<'a> {
    All,
    Best(&'a dyn Fn(u64) -> i64),
}

/// `K ÷ p` for a theory with models `k`.
pub fn contract(k: u64, p: u64, atoms: usize, sel: &OracleSelection<'_>) -> u64 {
    let full = full_table(atoms);
    // Vacuous: p is a tautology or not believed.
    if p == full || k & !p != 0 {
        return k;
    }
    // Remainders: add a single countermodel of p.
    let remainders: Vec<u64> = (0..1usize << atoms)
        .filter(|&m| (!p & full) >> m & 1 == 1)
        .map(|m| k | 1 << m)
        .collect();
    let chosen: Vec<u64> = match sel {
        OracleSelection::All => remainders,
        OracleSelection::Best(rank) => {
            let best = remainders.iter().map(|&r| rank(r)).max().expect("non-empty");
            remainders.into_iter().filter(|&r| rank(r) == best).collect()
        }
    };
    chosen.into_iter().fold(0, |acc, r| acc | r)
}

/// `K ÷ ps` for a package: remainders are the minimal sets of countermodels
/// that, added to `k`, omit every believed non-tautological member of `ps`.
pub fn contract_package(k: u64, ps: &[u64], atoms: usize, sel: &OracleSelection<'_>) -> u64 {
    let full = full_table(atoms);
    let targets: Vec<u64> = ps
        .iter()
        .copied()
        .filter(|&p| p != full && k & !p == 0)
        .collect();
    if targets.is_empty() {
        return k;
    }
    let free: Vec<usize> = (0..1usize << atoms)
        .filter(|&m| (!k & full) >> m & 1 == 1)
        .collect();
    assert!(free.len() <= 16, "package oracle needs few free models");
    let hits = |w: u64| targets.iter().all(|&p| w & !p != 0);
    let added: Vec<u64> = (0u64..1 << free.len())
        .map(|mask| {
            free.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0u64, |acc, (_, &m)| acc | 1 << m)
        })
        .filter(|&w| hits(w))
        .collect();
    let minimal: Vec<u64> = added
        .iter()
        .copied()
        .filter(|&w| !added.iter().any(|&o| o != w && o & w == o))
        .collect();
    let remainders: Vec<u64> = minimal.into_iter().map(|w| k | w).collect();
    let chosen: Vec<u64> = match sel {
        OracleSelection::All => remainders,
        OracleSelection::Best(rank) => {
            let best = remainders.iter().map(|&r| rank(r)).max().expect("non-empty");
            remainders.into_iter().filter(|&r| rank(r) == best).collect()
        }
    };
    chosen.into_iter().fold(0, |acc, r| acc | r)
}

/// `K * p` by the Levi identity.
pub fn revise(k: u64, p: u64, atoms: usize, sel: &OracleSelection<'_>) -> u64 {
    let full = full_table(atoms);
    contract(k, !p & full, atoms, sel) & p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables() {
        let p0 = Formula::Atom(0);
        assert_eq!(truth_table(&p0, 2), 0b1010);
        assert_eq!(truth_table(&formula_for(0b0110, 2), 2), 0b0110);
        assert_eq!(truth_table(&formula_for(0, 2), 2), 0);
    }

    #[test]
    fn classical_contraction() {
        // K = Cn(p0 & p1), contract p0: full meet keeps p0 -> p1 only.
        let k = 0b1000;
        let p0 = 0b1010;
        assert_eq!(contract(k, p0, 2, &OracleSelection::All), 0b1101);
        assert_eq!(revise(k, !p0 & 0xF, 2, &OracleSelection::All), 0b0101);
    }

    #[test]
    fn package_of_one_matches_single() {
        for k in 0..16 {
            for p in 0..16 {
                assert_eq!(
                    contract_package(k, &[p], 2, &OracleSelection::All),
                    contract(k, p, 2, &OracleSelection::All)
                );
            }
        }
    }

    /// Conjunctive inclusion for relational selection: a single-sentence
    /// theorem that does not survive the move to packages.
    #[test]
    fn conjunctive_inclusion_single_vs_package() {
        let rank = |t: u64| (t.wrapping_mul(7) % 5) as i64;
        let sel = OracleSelection::Best(&rank);
        let mut package_violations = 0;
        for k in 0..16u64 {
            for a in 0..16u64 {
                for b in 0..16u64 {
                    let whole = contract(k, a & b, 2, &sel);
                    if whole & !a != 0 {
                        // a is not kept: K ÷ (a ∧ b) ⊆ K ÷ a.
                        assert_eq!(contract(k, a, 2, &sel) & !whole, 0);
                    }
                    for c in 0..16u64 {
                        let whole = contract_package(k, &[a & b, c], 2, &sel);
                        let left = contract_package(k, &[a, c], 2, &sel);
                        if whole & !a != 0 && left & !whole != 0 {
                            package_violations += 1;
                        }
                    }
                }
            }
        }
        assert!(package_violations > 0);
    }
}
