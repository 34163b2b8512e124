//! The uniform-generator Markov chain on link patterns, its exact stationary
//! distribution, and per-pattern FPL counts.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{
    all_dyck_words, all_ht_words, apply_e, apply_e_sym, dyck_to_pattern, extract_link_pattern, ht_decode,
    ht_encode, pattern_to_dyck, qqt_reduce, qt_reduce, DyckWord, HtWord, LinkError, LinkPattern,
};
use crate::enumerate::{fold_class, EnumError, SymmetryClass};
use crate::exact;
use crate::fpl::asm_to_fpl;

/// Transition counts of the chain: entry `(i, j)` is the number of generators
/// sending state `i` to state `j`; probabilities divide by `generators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub class: SymmetryClass,
    pub size: usize,
    pub states: Vec<String>,
    pub generators: usize,
    rows: Vec<BTreeMap<usize, usize>>,
}

impl TransitionMatrix {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn count(&self, i: usize, j: usize) -> usize {
        self.rows[i].get(&j).copied().unwrap_or(0)
    }

    pub fn probability(&self, i: usize, j: usize) -> BigRational {
        BigRational::new(self.count(i, j).into(), self.generators.into())
    }

    /// Nonzero entries of row `i` as `(column, count)`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows[i].iter().map(|(&j, &c)| (j, c))
    }

    fn reachable(&self, forward: bool) -> Vec<bool> {
        let n = self.len();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for &j in self.rows[i].keys() {
                if forward {
                    adj[i].push(j);
                } else {
                    adj[j].push(i);
                }
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen
    }

    pub fn is_irreducible(&self) -> bool {
        self.is_empty() || (self.reachable(true).iter().all(|&x| x) && self.reachable(false).iter().all(|&x| x))
    }

    /// For an irreducible chain a single self-loop forces period 1.
    pub fn is_aperiodic(&self) -> bool {
        self.is_irreducible() && (0..self.len()).any(|i| self.count(i, i) > 0)
    }
}

/// Builds the chain on all `C_N` patterns (`Plain`, generators `e_1..e_2N`)
/// or on all half-turn words (`HalfTurn`, generators `e'_1..e'_N`).
pub fn transition_matrix(n: usize, class: SymmetryClass) -> Result<TransitionMatrix, LinkError> {
    let (states, patterns, generators): (Vec<String>, Vec<LinkPattern>, usize) = match class {
        SymmetryClass::Plain if n >= 1 => {
            let words = all_dyck_words(n);
            let patterns = words.iter().map(dyck_to_pattern).collect();
            (words.into_iter().map(|w| w.to_string()).collect(), patterns, 2 * n)
        }
        SymmetryClass::HalfTurn if n >= 2 => {
            let words = all_ht_words(n);
            let patterns = words.iter().map(ht_decode).collect();
            (words.into_iter().map(|w| w.to_string()).collect(), patterns, n)
        }
        _ => return Err(LinkError::UnsupportedChain { n, class }),
    };
    let index: HashMap<&LinkPattern, usize> = patterns.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let rows = patterns
        .iter()
        .map(|p| {
            let mut row = BTreeMap::new();
            for g in 1..=generators {
                let q = match class {
                    SymmetryClass::Plain => apply_e(g, p),
                    _ => apply_e_sym(g, p).expect("states are half-turn symmetric"),
                };
                *row.entry(index[&q]).or_insert(0) += 1;
            }
            row
        })
        .collect();
    Ok(TransitionMatrix { class, size: n, states, generators, rows })
}

/// The unique `mu` with `mu P = mu` and entries summing to 1, by exact
/// fraction-free elimination. The residual is checked to vanish.
pub fn stationary_distribution(m: &TransitionMatrix) -> Result<Vec<BigRational>, LinkError> {
    if !m.is_irreducible() {
        return Err(LinkError::NotIrreducible);
    }
    if !m.is_aperiodic() {
        return Err(LinkError::NotAperiodic);
    }
    let n = m.len();
    let g = m.generators as i64;
    // Rows of (G^T - g I), the last one replaced by the normalization.
    let mut a = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for (j, c) in m.row(i) {
            a[j][i] += BigRational::from_integer((c as i64).into());
        }
        a[i][i] -= BigRational::from_integer(g.into());
    }
    a[n - 1] = vec![BigRational::one(); n];
    let mut b = vec![BigRational::zero(); n];
    b[n - 1] = BigRational::one();
    let mu = exact::solve(&a, &b).ok_or(LinkError::NotIrreducible)?;
    for j in 0..n {
        let flow: BigRational = (0..n)
            .filter_map(|i| (m.count(i, j) > 0).then(|| &mu[i] * m.probability(i, j)))
            .sum();
        assert_eq!(flow, mu[j], "stationary residual must vanish");
    }
    Ok(mu)
}

/// Exact per-pattern counts over one symmetry class, keyed by the canonical
/// word of the class. Every possible word is present, possibly with count 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternDistribution {
    pub size: usize,
    pub class: SymmetryClass,
    pub counts: BTreeMap<String, BigUint>,
    pub total: BigUint,
}

impl PatternDistribution {
    pub fn probabilities(&self) -> BTreeMap<String, BigRational> {
        let total = BigRational::from_integer(self.total.clone().into());
        self.counts
            .iter()
            .map(|(w, c)| (w.clone(), BigRational::from_integer(c.clone().into()) / &total))
            .collect()
    }

    pub fn get(&self, word: &str) -> BigUint {
        self.counts.get(word).cloned().unwrap_or_default()
    }

    /// Words with count 0.
    pub fn unrealized(&self) -> impl Iterator<Item = &str> {
        self.counts.iter().filter(|(_, c)| c.is_zero()).map(|(w, _)| w.as_str())
    }
}

/// Every word a pattern of the class may be encoded by.
fn possible_words(size: usize, class: SymmetryClass) -> Vec<String> {
    match class {
        SymmetryClass::Plain => all_dyck_words(size).into_iter().map(|w| w.to_string()).collect(),
        SymmetryClass::HalfTurn => all_ht_words(size).into_iter().map(|w| w.to_string()).collect(),
        SymmetryClass::QuarterTurn | SymmetryClass::QuasiQuarterTurn => {
            all_ht_words(size / 2).into_iter().map(|w| w.to_string()).collect()
        }
    }
}

/// The canonical word of a pattern within a class.
pub fn class_word(p: &LinkPattern, class: SymmetryClass) -> Result<String, LinkError> {
    Ok(match class {
        SymmetryClass::Plain => pattern_to_dyck(p).to_string(),
        SymmetryClass::HalfTurn => ht_encode(p)?.to_string(),
        SymmetryClass::QuarterTurn => qt_reduce(&ht_encode(p)?)?.to_string(),
        SymmetryClass::QuasiQuarterTurn => qqt_reduce(&ht_encode(p)?)?.to_string(),
    })
}

/// Tallies the link patterns of every FPL of the class.
pub fn pattern_counts(size: usize, class: SymmetryClass) -> Result<PatternDistribution, EnumError> {
    let tallies = fold_class(
        size,
        class,
        HashMap::<String, u64>::new,
        |acc, a| {
            let p = extract_link_pattern(&asm_to_fpl(a));
            let w = class_word(&p, class).expect("class members carry class-shaped patterns");
            *acc.entry(w).or_insert(0) += 1;
        },
        |mut x, y| {
            for (w, c) in y {
                *x.entry(w).or_insert(0) += c;
            }
            x
        },
    )?;
    let mut counts: BTreeMap<String, BigUint> =
        possible_words(size, class).into_iter().map(|w| (w, BigUint::zero())).collect();
    for (w, c) in tallies {
        *counts.entry(w).or_default() += c;
    }
    let total = counts.values().sum();
    Ok(PatternDistribution { size, class, counts, total })
}

/// Parses a class word back into a validated word type, for callers that
/// need to re-derive patterns from distribution keys.
pub fn parse_class_word(word: &str, class: SymmetryClass) -> Result<LinkPattern, LinkError> {
    match class {
        SymmetryClass::Plain => Ok(dyck_to_pattern(&DyckWord::new(word)?)),
        _ => Ok(ht_decode(&HtWord::new(word)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn smallest_chains() {
        let m = transition_matrix(1, SymmetryClass::Plain).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.probability(0, 0), q(1, 1));
        assert_eq!(stationary_distribution(&m).unwrap(), vec![q(1, 1)]);

        let m = transition_matrix(2, SymmetryClass::Plain).unwrap();
        assert_eq!(m.states, vec!["aabb", "abab"]);
        assert_eq!(m.generators, 4);
        for i in 0..2 {
            let sum: BigRational = (0..2).map(|j| m.probability(i, j)).sum();
            assert_eq!(sum, q(1, 1));
        }
        assert_eq!(stationary_distribution(&m).unwrap(), vec![q(1, 2), q(1, 2)]);
        assert!(transition_matrix(1, SymmetryClass::HalfTurn).is_err());
        assert!(transition_matrix(4, SymmetryClass::QuarterTurn).is_err());
    }

    #[test]
    fn chains_are_irreducible_and_aperiodic() {
        for n in 1..=5 {
            let m = transition_matrix(n, SymmetryClass::Plain).unwrap();
            assert!(m.is_irreducible() && m.is_aperiodic(), "plain {n}");
        }
        assert_eq!(transition_matrix(4, SymmetryClass::Plain).unwrap().len(), 14);
        for n in 2..=7 {
            let m = transition_matrix(n, SymmetryClass::HalfTurn).unwrap();
            assert!(m.is_irreducible() && m.is_aperiodic(), "ht {n}");
        }
    }

    #[test]
    fn reducible_chain_is_rejected() {
        let mut m = transition_matrix(2, SymmetryClass::Plain).unwrap();
        m.rows = vec![BTreeMap::from([(0, 4)]), BTreeMap::from([(1, 4)])];
        assert_eq!(stationary_distribution(&m), Err(LinkError::NotIrreducible));
    }

    #[test]
    fn size_three_distribution_matches_fpl_counts() {
        let d = pattern_counts(3, SymmetryClass::Plain).unwrap();
        assert_eq!(d.counts.len(), 5);
        assert_eq!(d.total, BigUint::from(7u32));
        let m = transition_matrix(3, SymmetryClass::Plain).unwrap();
        let mu = stationary_distribution(&m).unwrap();
        let probs = d.probabilities();
        for (state, x) in m.states.iter().zip(&mu) {
            assert_eq!(&probs[state], x, "{state}");
        }
    }

    #[test]
    fn class_distributions_have_expected_totals() {
        let d = pattern_counts(8, SymmetryClass::QuarterTurn).unwrap();
        assert_eq!(d.counts.len(), 6);
        assert_eq!(d.total, BigUint::from(40u32));
        let d = pattern_counts(6, SymmetryClass::QuasiQuarterTurn).unwrap();
        assert_eq!(d.counts.len(), 3);
        assert_eq!(d.total, BigUint::from(6u32));
        assert!(d.counts.keys().all(|w| w.matches('c').count() == 1));
    }
}
