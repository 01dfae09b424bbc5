//! Two-source partial information decomposition.
//!
//! Splits what a pair of sources says about a target into redundancy (told
//! by both), two unique parts, and synergy (told only by the pair jointly),
//! using the minimal-specific-information redundancy. The anatomy variants
//! apply the split to a stationary process: what the past and future say
//! about the present symbol, and what the present and future say about the
//! past.

use std::collections::BTreeMap;

use crate::dist::{IndexSet, JointDistribution};
use crate::measures;
use crate::process::{self, EpsilonMachine};
use crate::{Error, Result};

/// Accounting identities between PID atoms hold to this tolerance.
pub const PID_ATOM_TOLERANCE: f64 = 1e-9;

/// Agreement demanded between PID atoms and anatomy rates.
pub const PID_CONSISTENCY_TOLERANCE: f64 = 2e-3;

/// Information a specific target outcome carries about a source.
///
/// The expected surprise reduction about `target = outcome` from learning
/// the source: `sum_a p(a | t) * (log2 p(t | a) - log2 p(t))`. Always
/// nonnegative, and its expectation over target outcomes is the mutual
/// information between target and source. Fails with
/// [`Error::ZeroProbabilityOutcome`] when the outcome never occurs.
pub fn specific_information(
    dist: &JointDistribution,
    target: &IndexSet,
    source: &IndexSet,
    outcome: &[u8],
) -> Result<f64> {
    if outcome.len() != target.len() {
        return Err(Error::InvalidArgument(format!(
            "target outcome has {} symbols for {} variables",
            outcome.len(),
            target.len()
        )));
    }
    let table = specific_information_table(dist, target, source)?;
    table
        .get(outcome)
        .copied()
        .ok_or(Error::ZeroProbabilityOutcome)
}

/// Specific information for every positive-probability target outcome.
fn specific_information_table(
    dist: &JointDistribution,
    target: &IndexSet,
    source: &IndexSet,
) -> Result<BTreeMap<Vec<u8>, f64>> {
    let joint = dist.marginalize(&target.union(source)?)?;
    let target_marginal = dist.marginalize(target)?;
    let source_marginal = dist.marginalize(source)?;
    let t_len = target.len();
    let mut table: BTreeMap<Vec<u8>, f64> = BTreeMap::new();
    for (key, p_ta) in joint.iter() {
        let (t, a) = key.split_at(t_len);
        let p_t = target_marginal.probability(t);
        let p_a = source_marginal.probability(a);
        let term = (p_ta / p_t) * ((p_ta / p_a).log2() - p_t.log2());
        *table.entry(t.to_vec()).or_insert(0.0) += term;
    }
    Ok(table)
}

/// The four atoms of a two-source decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PidDecomposition {
    /// Information about the target available from either source alone.
    pub redundancy: f64,
    /// Information only the first source carries.
    pub unique_first: f64,
    /// Information only the second source carries.
    pub unique_second: f64,
    /// Information visible only when both sources are combined.
    pub synergy: f64,
    /// Mutual information between the target and the joint sources; the
    /// four atoms sum to this.
    pub total: f64,
}

/// Decompose what two disjoint source variable sets say about a target.
///
/// Redundancy is the expected minimum of the two specific informations,
/// taken per target outcome; unique parts and synergy follow from the
/// mutual informations by subtraction. All four atoms are nonnegative for
/// this redundancy measure, so tiny negative rounding is clamped.
///
/// ```
/// use infoseries::{pid_two_sources, IndexSet, JointDistribution};
///
/// // Two fair bits and their parity: neither input alone says anything
/// // about the output, so the whole bit of information is synergistic.
/// let parity = JointDistribution::new(
///     vec![2, 2, 2],
///     [0u8, 1, 2, 3].map(|i| (vec![i >> 1 & 1, i & 1, (i >> 1 ^ i) & 1], 0.25)),
/// )
/// .unwrap();
/// let pid = pid_two_sources(
///     &parity,
///     &IndexSet::single(2),
///     &IndexSet::single(0),
///     &IndexSet::single(1),
/// )
/// .unwrap();
/// assert!(pid.redundancy.abs() < 1e-12);
/// assert!((pid.synergy - 1.0).abs() < 1e-12);
/// ```
pub fn pid_two_sources(
    dist: &JointDistribution,
    target: &IndexSet,
    first: &IndexSet,
    second: &IndexSet,
) -> Result<PidDecomposition> {
    target.ensure_disjoint(first)?;
    target.ensure_disjoint(second)?;
    first.ensure_disjoint(second)?;

    let from_first = specific_information_table(dist, target, first)?;
    let from_second = specific_information_table(dist, target, second)?;
    let target_marginal = dist.marginalize(target)?;

    let mut redundancy = 0.0;
    for (t, p_t) in target_marginal.iter() {
        let a = from_first.get(t).copied().unwrap_or(0.0);
        let b = from_second.get(t).copied().unwrap_or(0.0);
        redundancy += p_t * a.min(b);
    }
    let redundancy = measures::clamp_nonnegative(redundancy, "redundancy")?;

    let info_first = measures::mutual_information(dist, target, first)?;
    let info_second = measures::mutual_information(dist, target, second)?;
    let total = measures::mutual_information(dist, target, &first.union(second)?)?;

    let unique_first = measures::clamp_nonnegative(info_first - redundancy, "unique information")?;
    let unique_second =
        measures::clamp_nonnegative(info_second - redundancy, "unique information")?;
    let synergy = measures::clamp_nonnegative(
        total - redundancy - unique_first - unique_second,
        "synergy",
    )?;

    Ok(PidDecomposition {
        redundancy,
        unique_first,
        unique_second,
        synergy,
        total,
    })
}

/// PID of the present symbol with the past and future as sources.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PresentPid {
    /// Window width of the future source.
    pub window: usize,
    /// Atoms with the past as the first source and the future as the second.
    pub decomposition: PidDecomposition,
    /// Mean of the two unique atoms; they agree for a stationary process.
    pub iota: f64,
    /// `|unique_first - unique_second|`, which should vanish.
    pub unique_gap: f64,
    /// `|(redundancy - synergy) - q_mu|`.
    pub q_mu_gap: f64,
    /// `|redundancy - (rho_mu - iota)|`.
    pub redundancy_gap: f64,
    /// `|synergy - (b_mu - iota)|`.
    pub synergy_gap: f64,
    /// Whether every gap is within [`PID_CONSISTENCY_TOLERANCE`].
    pub consistent: bool,
}

/// PID of the past with the present symbol and the future as sources.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PastPid {
    /// Window width of the future source.
    pub window: usize,
    /// Atoms with the present symbol as the first source and the future as
    /// the second. The total is the excess entropy whenever observing the
    /// process eventually pins down the state.
    pub decomposition: PidDecomposition,
}

/// Build the state-framed window and the index sets the anatomy PIDs share.
///
/// Variables: the state entering the window, `window + 1` symbols, and the
/// state leaving it. Because the machine is unifilar the entering state is a
/// lossless summary of the infinite past; the window plus the leaving state
/// stand in for the infinite future.
fn framed_sources(
    machine: &EpsilonMachine,
    window: usize,
) -> Result<(JointDistribution, IndexSet, IndexSet, IndexSet)> {
    if window == 0 {
        return Err(Error::InvalidArgument(
            "decomposition window must be at least one".into(),
        ));
    }
    let framed = process::framed_word_distribution(machine, window + 1)?;
    let total = framed.variable_count();
    let past = IndexSet::single(0);
    let present = IndexSet::single(1);
    let future = IndexSet::range(2..total);
    Ok((framed, past, present, future))
}

/// Decompose the present symbol's entropy sources at one window width.
///
/// Targets the present symbol with the past (entering state) and the future
/// (window plus leaving state) as sources. For a stationary process the two
/// unique atoms coincide; their common value `iota` links the atoms to the
/// anatomy rates: redundancy is `rho_mu - iota`, synergy is `b_mu - iota`,
/// and their difference is `q_mu`. The reported gaps measure how well those
/// identities hold at this window.
pub fn anatomy_pid_present(machine: &EpsilonMachine, window: usize) -> Result<PresentPid> {
    let (framed, past, present, future) = framed_sources(machine, window)?;
    let decomposition = pid_two_sources(&framed, &present, &past, &future)?;

    let h_mu = process::entropy_rate_exact(machine)?;
    let singles = process::word_distribution(machine, 1)?;
    let h1 = measures::entropy(&singles, &IndexSet::single(0))?;
    let rho_mu = h1 - h_mu;
    let conditioning = past.union(&future)?;
    let r_mu = measures::conditional_entropy(&framed, &present, &conditioning)?;
    let b_mu = measures::clamp_nonnegative(h_mu - r_mu, "bound rate")?;
    let q_mu = rho_mu - b_mu;

    let iota = 0.5 * (decomposition.unique_first + decomposition.unique_second);
    let unique_gap = (decomposition.unique_first - decomposition.unique_second).abs();
    let q_mu_gap = ((decomposition.redundancy - decomposition.synergy) - q_mu).abs();
    let redundancy_gap = (decomposition.redundancy - (rho_mu - iota)).abs();
    let synergy_gap = (decomposition.synergy - (b_mu - iota)).abs();
    let consistent = [unique_gap, q_mu_gap, redundancy_gap, synergy_gap]
        .iter()
        .all(|gap| *gap <= PID_CONSISTENCY_TOLERANCE);

    Ok(PresentPid {
        window,
        decomposition,
        iota,
        unique_gap,
        q_mu_gap,
        redundancy_gap,
        synergy_gap,
        consistent,
    })
}

/// Decompose what the present and the future say about the past.
///
/// Targets the entering state with the present symbol and the future window
/// as sources. The atom total is the past/future mutual information, i.e.
/// the excess entropy, whenever the state is recoverable from observations.
pub fn anatomy_pid_past(machine: &EpsilonMachine, window: usize) -> Result<PastPid> {
    let (framed, past, present, future) = framed_sources(machine, window)?;
    let decomposition = pid_two_sources(&framed, &past, &present, &future)?;
    Ok(PastPid {
        window,
        decomposition,
    })
}
