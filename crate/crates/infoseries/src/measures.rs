//! Shannon information measures on joint distributions.
//!
//! Everything here is in bits. The single-set quantities (entropy,
//! conditional entropy, mutual information) take explicit [`IndexSet`]
//! arguments; the whole-distribution measures treat every variable of the
//! distribution as one coordinate of the lattice:
//!
//! * total correlation `T = sum_i H[X_i] - H[X]`
//! * binding information `B = H[X] - sum_i H[X_i | rest]`
//! * residual entropy `R = sum_i H[X_i | rest]`
//! * local exogenous information `W = sum_i I[X_i ; rest] = B + T`
//! * enigmatic information `Q = T - B`
//! * co-information `I = -sum over nonempty subsets A of (-1)^|A| H[X_A]`
//!
//! Quantities that are provably nonnegative are clamped to zero when
//! floating-point noise drags them slightly below; a result under
//! [`NEGATIVE_FLOOR`] indicates an inconsistent input and is reported as an
//! error instead of being hidden.

use crate::dist::{IndexSet, JointDistribution};
use crate::exec;
use crate::{Error, Result};

/// Most negative value a nonnegative measure may reach before the
/// computation is declared inconsistent. Anything in `(NEGATIVE_FLOOR, 0)`
/// is treated as zero.
pub const NEGATIVE_FLOOR: f64 = -1e-9;

/// Dense marginal tables are used up to this many cells per subset.
const DENSE_CELL_LIMIT: usize = 1 << 22;

/// Cost ceiling (support entries times subsets) for the co-information
/// subset sweep.
const COINFORMATION_BUDGET: u128 = 1 << 36;

pub(crate) fn clamp_nonnegative(value: f64, quantity: &'static str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value > NEGATIVE_FLOOR {
        Ok(0.0)
    } else {
        Err(Error::NegativeMeasure { quantity, value })
    }
}

/// Entropy in bits of a probability iterator; zero entries contribute zero.
fn entropy_of_probs(probs: impl Iterator<Item = f64>) -> f64 {
    let mut h = 0.0;
    for p in probs {
        if p > 0.0 {
            h -= p * p.log2();
        }
    }
    h
}

/// Entropy of the marginal over `keep` (positions into `dist`), computed
/// without materialising a full `JointDistribution`.
///
/// Uses a dense accumulator when the marginal table fits in
/// [`DENSE_CELL_LIMIT`] cells and a sorted map otherwise.
pub(crate) fn marginal_entropy(dist: &JointDistribution, keep: &[usize]) -> f64 {
    if keep.is_empty() {
        return 0.0;
    }
    if keep.len() == dist.variable_count() {
        // Any permutation of all variables has the joint entropy.
        return entropy_of_probs(dist.iter().map(|(_, p)| p));
    }
    let alphabet = dist.alphabet();
    let mut cells: usize = 1;
    let mut dense = true;
    for &i in keep {
        match cells.checked_mul(alphabet[i]) {
            Some(c) if c <= DENSE_CELL_LIMIT => cells = c,
            _ => {
                dense = false;
                break;
            }
        }
    }
    if dense {
        let mut table = vec![0.0f64; cells];
        for (outcome, p) in dist.iter() {
            let mut idx = 0usize;
            for &i in keep {
                idx = idx * alphabet[i] + outcome[i] as usize;
            }
            table[idx] += p;
        }
        entropy_of_probs(table.into_iter())
    } else {
        let mut table = std::collections::BTreeMap::<Vec<u8>, f64>::new();
        for (outcome, p) in dist.iter() {
            let key: Vec<u8> = keep.iter().map(|&i| outcome[i]).collect();
            *table.entry(key).or_insert(0.0) += p;
        }
        entropy_of_probs(table.into_values())
    }
}

fn check_bounds(dist: &JointDistribution, set: &IndexSet) -> Result<()> {
    if set.max_index() >= dist.variable_count() {
        return Err(Error::IndexOutOfRange {
            index: set.max_index(),
            count: dist.variable_count(),
        });
    }
    Ok(())
}

/// Joint entropy `H[X_vars]` of the marginal over `vars`.
pub fn entropy(dist: &JointDistribution, vars: &IndexSet) -> Result<f64> {
    check_bounds(dist, vars)?;
    Ok(marginal_entropy(dist, vars.indices()))
}

/// Conditional entropy `H[target | given] = H[target, given] - H[given]`.
pub fn conditional_entropy(
    dist: &JointDistribution,
    target: &IndexSet,
    given: &IndexSet,
) -> Result<f64> {
    check_bounds(dist, target)?;
    check_bounds(dist, given)?;
    let joint = target.union(given)?;
    let value = marginal_entropy(dist, joint.indices()) - marginal_entropy(dist, given.indices());
    clamp_nonnegative(value, "conditional entropy")
}

/// Mutual information `I[a ; b] = H[a] + H[b] - H[a, b]`.
pub fn mutual_information(dist: &JointDistribution, a: &IndexSet, b: &IndexSet) -> Result<f64> {
    check_bounds(dist, a)?;
    check_bounds(dist, b)?;
    let joint = a.union(b)?;
    let value = marginal_entropy(dist, a.indices()) + marginal_entropy(dist, b.indices())
        - marginal_entropy(dist, joint.indices());
    clamp_nonnegative(value, "mutual information")
}

/// Conditional mutual information
/// `I[a ; b | given] = H[a, given] + H[b, given] - H[given] - H[a, b, given]`.
pub fn conditional_mutual_information(
    dist: &JointDistribution,
    a: &IndexSet,
    b: &IndexSet,
    given: &IndexSet,
) -> Result<f64> {
    check_bounds(dist, a)?;
    check_bounds(dist, b)?;
    check_bounds(dist, given)?;
    a.ensure_disjoint(b)?;
    let ag = a.union(given)?;
    let bg = b.union(given)?;
    let abg = a.union(b)?.union(given)?;
    let value = marginal_entropy(dist, ag.indices()) + marginal_entropy(dist, bg.indices())
        - marginal_entropy(dist, given.indices())
        - marginal_entropy(dist, abg.indices());
    clamp_nonnegative(value, "conditional mutual information")
}

/// Entropy of every leave-one-out marginal, index `i` holding
/// `H[everything but X_i]`.
fn leave_one_out_entropies(dist: &JointDistribution) -> Vec<f64> {
    let n = dist.variable_count();
    exec::map_range(0..n, |i| {
        let keep: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        marginal_entropy(dist, &keep)
    })
}

fn single_entropies(dist: &JointDistribution) -> Vec<f64> {
    let n = dist.variable_count();
    exec::map_range(0..n, |i| marginal_entropy(dist, &[i]))
}

fn joint_entropy(dist: &JointDistribution) -> f64 {
    entropy_of_probs(dist.iter().map(|(_, p)| p))
}

/// Total correlation `sum_i H[X_i] - H[X]`; zero iff the variables are
/// jointly independent.
pub fn total_correlation(dist: &JointDistribution) -> Result<f64> {
    let value = single_entropies(dist).iter().sum::<f64>() - joint_entropy(dist);
    clamp_nonnegative(value, "total correlation")
}

/// Residual entropy `sum_i H[X_i | rest]`: entropy localised in single
/// variables and shared with none of the others.
pub fn residual_entropy(dist: &JointDistribution) -> Result<f64> {
    let h = joint_entropy(dist);
    let value = leave_one_out_entropies(dist)
        .iter()
        .map(|rest| h - rest)
        .sum::<f64>();
    clamp_nonnegative(value, "residual entropy")
}

/// Binding information `H[X] - sum_i H[X_i | rest]`: the joint entropy that
/// is shared between at least two variables.
pub fn binding_information(dist: &JointDistribution) -> Result<f64> {
    let h = joint_entropy(dist);
    let residual: f64 = leave_one_out_entropies(dist)
        .iter()
        .map(|rest| h - rest)
        .sum();
    clamp_nonnegative(h - residual, "binding information")
}

/// Local exogenous information `sum_i I[X_i ; rest]`, the per-variable view
/// of everything impinging on each coordinate from the others.
pub fn local_exogenous_information(dist: &JointDistribution) -> Result<f64> {
    let h = joint_entropy(dist);
    let singles = single_entropies(dist);
    let rests = leave_one_out_entropies(dist);
    let value = singles
        .iter()
        .zip(&rests)
        .map(|(hi, rest)| hi + rest - h)
        .sum::<f64>();
    clamp_nonnegative(value, "local exogenous information")
}

/// Enigmatic information `Q = T - B`; may be negative.
pub fn enigmatic_information(dist: &JointDistribution) -> Result<f64> {
    Ok(total_correlation(dist)? - binding_information(dist)?)
}

/// Co-information: the alternating sum `-sum_{A nonempty} (-1)^|A| H[X_A]`
/// over all variable subsets. Equals the entropy for one variable and the
/// mutual information for two; may be negative from three variables up.
///
/// Cost grows as `2^N` subset marginals, each a pass over the support, so
/// the sweep is capped by an internal budget and parallelised over subsets.
pub fn co_information(dist: &JointDistribution) -> Result<f64> {
    let n = dist.variable_count();
    if n == 1 {
        return Ok(joint_entropy(dist));
    }
    let subsets: u128 = 1u128 << n;
    let cost = subsets * dist.support_len() as u128;
    if n >= 64 || cost > COINFORMATION_BUDGET {
        return Err(Error::ResourceLimit(format!(
            "co-information over {n} variables with support {} needs {cost} table visits",
            dist.support_len()
        )));
    }
    let terms = exec::map_range(1..(1usize << n), |mask| {
        let keep: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let h = marginal_entropy(dist, &keep);
        if keep.len() % 2 == 1 {
            h
        } else {
            -h
        }
    });
    Ok(terms.iter().sum())
}
