//! Signed-measure atoms of the N-variable information diagram.
//!
//! Every subset entropy `H[X_A]` is an inclusion-exclusion sum over the
//! `2^N - 1` atoms of the diagram, each atom indexed by the nonempty set of
//! variables it lies inside. [`atom_measure`] recovers the atom values from
//! a distribution by Moebius inversion over the subset lattice, and
//! [`atom_weights`] gives the integer weight each whole-distribution measure
//! places on each atom, so `<weights, atoms>` reproduces the measure.
//!
//! Atoms are addressed by bitmask: bit `i` set means variable `i` contains
//! the atom. Masks run over `1..2^N`.

use crate::dist::JointDistribution;
use crate::measures;
use crate::{Error, Result};

/// Largest variable count for which atom decompositions are computed.
pub const MAX_ATOM_VARS: usize = 6;

/// Tolerance of the internal reconstruction check in [`atom_measure`].
pub const ATOM_CHECK_TOLERANCE: f64 = 1e-9;

/// The whole-distribution measures that have an atom-weight expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureId {
    JointEntropy,
    TotalCorrelation,
    BindingInformation,
    ResidualEntropy,
    LocalExogenous,
    Enigmatic,
    CoInformation,
}

/// Integer weight per diagram atom for one measure over `n` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomWeights {
    n: usize,
    weights: Vec<i64>,
}

impl AtomWeights {
    pub fn variable_count(&self) -> usize {
        self.n
    }

    /// Weight of the atom addressed by `mask` (nonzero bits select the
    /// variables containing the atom).
    pub fn weight(&self, mask: usize) -> i64 {
        assert!(mask >= 1 && mask < (1 << self.n), "atom mask out of range");
        self.weights[mask - 1]
    }

    /// Iterates `(mask, weight)` over all atoms.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.weights.iter().enumerate().map(|(i, &w)| (i + 1, w))
    }

    /// Weighted sum of atom values: reproduces the measure the weights
    /// describe.
    pub fn evaluate(&self, atoms: &AtomMeasure) -> Result<f64> {
        if atoms.n != self.n {
            return Err(Error::InvalidArgument(format!(
                "weights over {} variables applied to atoms over {}",
                self.n, atoms.n
            )));
        }
        Ok(self
            .weights
            .iter()
            .zip(&atoms.values)
            .map(|(&w, &v)| w as f64 * v)
            .sum())
    }
}

/// Signed atom values of one distribution's information diagram.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomMeasure {
    n: usize,
    values: Vec<f64>,
}

impl AtomMeasure {
    pub fn variable_count(&self) -> usize {
        self.n
    }

    /// Value of the atom addressed by `mask`.
    pub fn value(&self, mask: usize) -> f64 {
        assert!(mask >= 1 && mask < (1 << self.n), "atom mask out of range");
        self.values[mask - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().enumerate().map(|(i, &v)| (i + 1, v))
    }
}

/// Integer atom weights of `measure` on the `n`-variable diagram.
///
/// Writing `m` for the number of variables sharing an atom:
/// joint entropy weighs every atom once; total correlation `m - 1`;
/// binding information weighs atoms with `m >= 2` once; residual entropy
/// keeps only single-variable atoms; local exogenous information weighs
/// shared atoms `m` times; enigmatic information `m - 2`; co-information
/// keeps only the atom shared by all variables.
pub fn atom_weights(measure: MeasureId, n: usize) -> Result<AtomWeights> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "atom weights need at least one variable".into(),
        ));
    }
    if n > 20 {
        return Err(Error::ResourceLimit(format!(
            "atom weights over {n} variables would enumerate 2^{n} atoms"
        )));
    }
    let full = (1usize << n) - 1;
    let weights = (1..=full)
        .map(|mask| {
            let m = mask.count_ones() as i64;
            match measure {
                MeasureId::JointEntropy => 1,
                MeasureId::TotalCorrelation => m - 1,
                MeasureId::BindingInformation => {
                    if m >= 2 {
                        1
                    } else {
                         0
                    }
                }
                MeasureId::ResidualEntropy => {
                    if m == 1 {
                        1
                    } else {
                        0
                    }
                }
                MeasureId::LocalExogenous => {
                    if m >= 2 {
                        m
                    } else {
                        0
                    }
                }
                MeasureId::Enigmatic => {
                    if m >= 2 {
                        m - 2
                    } else {
                        0
                    }
                }
                MeasureId::CoInformation => {
                    if mask == full {
                        1
                    } else {
                        0
                    }
                }
            }
        })
        .collect();
    Ok(AtomWeights { n, weights })
}

/// Atom values of the information diagram of `dist`, by Moebius inversion
/// of the subset entropies.
///
/// With `g(U) = H[X omitting U]`, the atom inside exactly the variables of
/// `T` is `-sum over U subset of T of (-1)^|T minus U| g(U)`. The result is
/// cross-checked by rebuilding every subset entropy from the atoms; a
/// mismatch beyond [`ATOM_CHECK_TOLERANCE`] is reported as an error.
pub fn atom_measure(dist: &JointDistribution) -> Result<AtomMeasure> {
    let n = dist.variable_count();
    if n > MAX_ATOM_VARS {
        return Err(Error::ResourceLimit(format!(
            "atom decomposition supports up to {MAX_ATOM_VARS} variables, got {n}"
        )));
    }
    let full = (1usize << n) - 1;
    // Subset entropies h[mask] = H of the variables in mask.
    let mut h = vec![0.0f64; 1 << n];
    for (mask, slot) in h.iter_mut().enumerate().skip(1) {
        let keep: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        *slot = measures::marginal_entropy(dist, &keep);
    }
    let mut values = vec![0.0f64; full];
    for t in 1..=full {
        let mut sum = 0.0;
        let mut u = t;
        loop {
            let sign = if (t ^ u).count_ones() % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            sum += sign * h[full ^ u];
            if u == 0 {
                break;
            }
            u = (u - 1) & t;
        }
        values[t - 1] = -sum;
    }
    // Reconstruction check: every subset entropy is the sum of the atoms
    // its variables touch.
    for (s, &subset_entropy) in h.iter().enumerate().skip(1) {
        let rebuilt: f64 = (1..=full)
            .filter(|t| t & s != 0)
            .map(|t| values[t - 1])
            .sum();
        if (rebuilt - subset_entropy).abs() > ATOM_CHECK_TOLERANCE {
            return Err(Error::InconsistentDecomposition(format!(
                "subset {s:#b} rebuilt as {rebuilt} but has entropy {subset_entropy}"
            )));
        }
    }
    Ok(AtomMeasure { n, values })
}
