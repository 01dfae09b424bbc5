//! Sparse joint distributions over finitely many discrete variables.
//!
//! A [`JointDistribution`] keeps only the positive-probability outcomes of a
//! product space in a sorted table, so heavily constrained supports (for
//! example word distributions of a process with forbidden words) stay small
//! even at long block lengths. Variables are addressed by position through
//! an [`IndexSet`], which preserves caller order so a single call can both
//! select and reorder margins.

use std::collections::BTreeMap;

use crate::{Error, Result};

/// Largest tolerated deviation of total probability mass from one.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// Largest supported alphabet per variable; symbols are stored as `u8`.
pub const MAX_ALPHABET: usize = 256;

/// Ordered list of distinct variable positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    /// Builds an index set from the given positions, keeping their order.
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let indices: Vec<usize> = indices.into_iter().collect();
        if indices.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        let mut seen = indices.clone();
        seen.sort_unstable();
        for pair in seen.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateIndex(pair[0]));
            }
        }
        Ok(Self { indices })
    }

    /// Index set holding a single variable.
    pub fn single(index: usize) -> Self {
        Self {
            indices: vec![index],
        }
    }

    /// Index set covering `range` in ascending order. Panics on an empty range.
    pub fn range(range: std::ops::Range<usize>) -> Self {
        assert!(range.start < range.end, "index range must be nonempty");
        Self {
            indices: range.collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.contains(&index)
    }

    /// Largest index mentioned.
    pub fn max_index(&self) -> usize {
        *self.indices.iter().max().expect("index set is nonempty")
    }

    /// Concatenation of `self` and `other`; fails if they overlap.
    pub fn union(&self, other: &IndexSet) -> Result<IndexSet> {
        self.ensure_disjoint(other)?;
        IndexSet::new(self.indices.iter().chain(other.indices.iter()).copied())
    }

    /// All variables of an `n`-variable space not mentioned here, ascending.
    pub fn complement(&self, variable_count: usize) -> Option<IndexSet> {
        let rest: Vec<usize> = (0..variable_count)
            .filter(|i| !self.contains(*i))
            .collect();
        if rest.is_empty() {
            None
        } else {
            Some(IndexSet { indices: rest })
        }
    }

    /// Errors with the first shared variable if the two sets overlap.
    pub fn ensure_disjoint(&self, other: &IndexSet) -> Result<()> {
        for &i in &self.indices {
            if other.contains(i) {
                return Err(Error::OverlappingIndexSets(i));
            }
        }
        Ok(())
    }
}

/// Probability table over a finite product space, storing positive-mass
/// outcomes only.
///
/// Outcomes are vectors of symbols, one per variable, with variable `i`
/// ranging over `0..alphabet()[i]`. The table is a sorted map, so iteration
/// order (and therefore floating-point summation order everywhere in the
/// crate) is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    alphabet: Vec<usize>,
    table: BTreeMap<Vec<u8>, f64>,
}

impl JointDistribution {
    /// Validates and builds a distribution.
    ///
    /// Entries with probability exactly zero are dropped; repeated outcomes
    /// accumulate. Fails if any probability is negative, any outcome has the
    /// wrong length or an out-of-range symbol, or the total mass deviates
    /// from one by more than [`MASS_TOLERANCE`].
    pub fn new(
        alphabet: Vec<usize>,
        entries: impl IntoIterator<Item = (Vec<u8>, f64)>,
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::InvalidDistribution(
                "a distribution needs at least one variable".into(),
            ));
        }
        for (i, &k) in alphabet.iter().enumerate() {
            if k == 0 || k > MAX_ALPHABET {
                return Err(Error::InvalidDistribution(format!(
                    "variable {i} has alphabet size {k}; expected 1..={MAX_ALPHABET}"
                )));
            }
        }
        let mut table: BTreeMap<Vec<u8>, f64> = BTreeMap::new();
        for (outcome, p) in entries {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidDistribution(format!(
                    "outcome {outcome:?} has probability {p}"
                )));
            }
            if outcome.len() != alphabet.len() {
                return Err(Error::InvalidDistribution(format!(
                    "outcome {outcome:?} has {} symbols; expected {}",
                    outcome.len(),
                    alphabet.len()
                )));
            }
            for (i, (&s, &k)) in outcome.iter().zip(&alphabet).enumerate() {
                if s as usize >= k {
                    return Err(Error::InvalidDistribution(format!(
                        "symbol {s} at position {i} exceeds alphabet size {k}"
                    )));
                }
            }
            if p > 0.0 {
                *table.entry(outcome).or_insert(0.0) += p;
            }
        }
        let mass: f64 = table.values().sum();
        if (mass - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "total mass {mass:.15} deviates from 1 by more than {MASS_TOLERANCE:e}"
            )));
        }
        Ok(Self { alphabet, table })
    }

    /// Number of variables.
    pub fn variable_count(&self) -> usize {
        self.alphabet.len()
    }

    /// Per-variable alphabet sizes.
    pub fn alphabet(&self) -> &[usize] {
        &self.alphabet
    }

    /// Number of positive-probability outcomes.
    pub fn support_len(&self) -> usize {
        self.table.len()
    }

    /// Probability of one outcome (zero if absent from the support).
    pub fn probability(&self, outcome: &[u8]) -> f64 {
        debug_assert_eq!(outcome.len(), self.alphabet.len());
        self.table.get(outcome).copied().unwrap_or(0.0)
    }

    /// Iterates over the support in lexicographic outcome order.
    pub fn iter(&self) -> impl Iterator<Item = (&[u8], f64)> + '_ {
        self.table.iter().map(|(o, &p)| (o.as_slice(), p))
    }

    fn check_bounds(&self, set: &IndexSet) -> Result<()> {
        let n = self.variable_count();
        if set.max_index() >= n {
            return Err(Error::IndexOutOfRange {
                index: set.max_index(),
                count: n,
            });
        }
        Ok(())
    }

    /// Marginal distribution over `keep`, with variables reordered to match
    /// `keep`'s order.
    pub fn marginalize(&self, keep: &IndexSet) -> Result<JointDistribution> {
        self.check_bounds(keep)?;
        let alphabet: Vec<usize> = keep.indices().iter().map(|&i| self.alphabet[i]).collect();
        let mut table: BTreeMap<Vec<u8>, f64> = BTreeMap::new();
        for (outcome, p) in self.iter() {
            let projected: Vec<u8> = keep.indices().iter().map(|&i| outcome[i]).collect();
            *table.entry(projected).or_insert(0.0) += p;
        }
        Ok(JointDistribution { alphabet, table })
    }

    /// Conditional distribution over the remaining variables (in ascending
    /// original order) given that the variables in `given` took `outcome`.
    ///
    /// Fails if `given` covers every variable, `outcome` has the wrong
    /// length, or the conditioning event has zero probability.
    pub fn condition_on(&self, given: &IndexSet, outcome: &[u8]) -> Result<JointDistribution> {
        self.check_bounds(given)?;
        if outcome.len() != given.len() {
            return Err(Error::InvalidArgument(format!(
                "conditioning outcome has {} symbols for {} variables",
                outcome.len(),
                given.len()
            )));
        }
        let keep = given.complement(self.variable_count()).ok_or_else(|| {
            Error::InvalidArgument("conditioning on every variable leaves nothing".into())
        })?;
        let mut table: BTreeMap<Vec<u8>, f64> = BTreeMap::new();
        let mut mass = 0.0;
        for (full, p) in self.iter() {
            let matches = given
                .indices()
                .iter()
                .zip(outcome)
                .all(|(&i, &s)| full[i] == s);
            if matches {
                mass += p;
                let projected: Vec<u8> = keep.indices().iter().map(|&i| full[i]).collect();
                *table.entry(projected).or_insert(0.0) += p;
            }
        }
        if mass <= 0.0 {
            return Err(Error::ZeroProbabilityOutcome);
        }
        for p in table.values_mut() {
            *p /= mass;
        }
        let alphabet: Vec<usize> = keep.indices().iter().map(|&i| self.alphabet[i]).collect();
        Ok(JointDistribution { alphabet, table })
    }
}


#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    /// Random sparse distribution over up to five binary/ternary variables.
    fn arb_distribution() -> impl Strategy<Value = JointDistribution> {
        (2usize..=5, 2usize..=3)
            .prop_flat_map(|(n, k)| {
                let size = k.pow(n as u32);
                (
                    Just(n),
                    Just(k),
                    prop::collection::vec(0.0f64..1.0, size),
                )
            })
            .prop_map(|(n, k, weights)| {
                // Guarantee at least one positive entry, then normalise.
                let mut weights = weights;
                if weights.iter().all(|&w| w <= 0.0) {
                    weights[0] = 1.0;
                }
                let total: f64 = weights.iter().sum();
                let entries = weights.into_iter().enumerate().map(|(mut idx, w)| {
                    let mut outcome = vec![0u8; n];
                    for slot in outcome.iter_mut() {
                        *slot = (idx % k) as u8;
                        idx /= k;
                    }
                    (outcome, w / total)
                });
                JointDistribution::new(vec![k; n], entries).unwrap()
            })
    }

    proptest! {
        #[test]
        fn marginalization_composes(d in arb_distribution()) {
            let n = d.variable_count();
            let outer = IndexSet::new(0..n - 1).unwrap();
            let inner = IndexSet::single(0);
            let two_step = d.marginalize(&outer).unwrap().marginalize(&inner).unwrap();
            let one_step = d.marginalize(&inner).unwrap();
            prop_assert_eq!(two_step.support_len(), one_step.support_len());
            for (o, p) in one_step.iter() {
                prop_assert!((two_step.probability(o) - p).abs() < 1e-12);
            }
        }

        #[test]
        fn marginal_mass_is_preserved(d in arb_distribution()) {
            let m = d.marginalize(&IndexSet::single(d.variable_count() - 1)).unwrap();
            let mass: f64 = m.iter().map(|(_, p)| p).sum();
            prop_assert!((mass - 1.0).abs() < 1e-12);
        }

        #[test]
        fn conditional_mixture_reconstructs_joint(d in arb_distribution()) {
            let given = IndexSet::single(0);
            let keep = given.complement(d.variable_count()).unwrap();
            let margin = d.marginalize(&given).unwrap();
            for (o, w) in margin.iter() {
                let slice = d.condition_on(&given, o).unwrap();
                for (rest, p) in slice.iter() {
                    let mut full = vec![0u8; d.variable_count()];
                    full[0] = o[0];
                    for (&i, &s) in keep.indices().iter().zip(rest) {
                        full[i] = s;
                    }
                    prop_assert!((w * p - d.probability(&full)).abs() < 1e-12);
                }
            }
        }
    }
}
