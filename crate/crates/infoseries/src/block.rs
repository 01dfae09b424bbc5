//! Block-length scaling: measure curves over words, asymptotic fits, and the
//! per-symbol decomposition of the entropy rate.
//!
//! The central object is a [`BlockCurve`]: one information measure evaluated
//! on the length-`l` word distribution for every `l` up to a cap. Linear
//! growth dominates every such curve, so the interesting content is the rate
//! and the subextensive part, which [`asymptote_fit`] extracts. [`anatomy`]
//! splits the entropy rate itself into ephemeral and bound components using
//! state-augmented windows, and [`ee_decompositions`] cross-checks four
//! different curve fits against the excess entropy.

use crate::dist::IndexSet;
use crate::exec::map_range;
use crate::measures;
use crate::process::{self, EpsilonMachine};
use crate::{Error, Result};

/// Identity checks between measures hold to this arithmetic tolerance.
pub const IDENTITY_TOLERANCE: f64 = 1e-10;

/// Convergence threshold for rate estimates and termwise sum checks.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-9;

/// Default accuracy demanded of subextensive parts from finite curves.
pub const FIT_TOLERANCE: f64 = 2e-2;

/// Gaps smaller than this are treated as exactly converged by the tail model.
const GAP_FLOOR: f64 = 1e-12;

/// A geometric tail ratio above this is too close to divergence to trust.
const TAIL_RATIO_CAP: f64 = 0.97;

/// Block length used for excess-entropy sums when the word budget allows it.
const EXCESS_LENGTH_CAP: usize = 16;

/// One scalar information measure evaluated along growing word lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockMeasure {
    /// Joint entropy `H(l)` of the length-`l` word.
    Entropy,
    /// Total correlation `T(l) = l*H(1) - H(l)`.
    TotalCorrelation,
    /// Dual total correlation `B(l)`: entropy minus all single-symbol slack.
    Binding,
    /// Residual entropy `R(l)`: randomness no other symbol explains.
    Residual,
    /// Local exogenous information `W(l) = B(l) + T(l)`.
    LocalExogenous,
    /// Enigmatic information `Q(l) = T(l) - B(l)`.
    Enigmatic,
    /// Co-information `I(l)`: the alternating all-subsets sum.
    CoInformation,
}

impl BlockMeasure {
    /// All curve kinds, in the conventional reporting order.
    pub const ALL: [BlockMeasure; 7] = [
        BlockMeasure::Entropy,
        BlockMeasure::TotalCorrelation,
        BlockMeasure::Binding,
        BlockMeasure::Residual,
        BlockMeasure::LocalExogenous,
        BlockMeasure::Enigmatic,
        BlockMeasure::CoInformation,
    ];

    /// Single-letter code used in CSV headers and CLI flags.
    pub fn letter(self) -> char {
        match self {
            BlockMeasure::Entropy => 'H',
            BlockMeasure::TotalCorrelation => 'T',
            BlockMeasure::Binding => 'B',
            BlockMeasure::Residual => 'R',
            BlockMeasure::LocalExogenous => 'W',
            BlockMeasure::Enigmatic => 'Q',
            BlockMeasure::CoInformation => 'I',
        }
    }

    /// Parse a single-letter code, case-insensitively.
    pub fn from_letter(letter: char) -> Result<Self> {
        match letter.to_ascii_uppercase() {
            'H' => Ok(BlockMeasure::Entropy),
            'T' => Ok(BlockMeasure::TotalCorrelation),
            'B' => Ok(BlockMeasure::Binding),
            'R' => Ok(BlockMeasure::Residual),
            'W' => Ok(BlockMeasure::LocalExogenous),
            'Q' => Ok(BlockMeasure::Enigmatic),
            'I' => Ok(BlockMeasure::CoInformation),
            other => Err(Error::UnknownMeasure(other.to_string())),
        }
    }
}

impl std::str::FromStr for BlockMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => BlockMeasure::from_letter(c),
            _ => Err(Error::UnknownMeasure(s.to_string())),
        }
    }
}

impl std::fmt::Display for BlockMeasure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Values of one measure at word lengths `0..=max_len`, with the length-0
/// value pinned to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockCurve {
    measure: BlockMeasure,
    values: Vec<f64>,
}

impl BlockCurve {
    /// Which measure the curve tracks.
    pub fn measure(&self) -> BlockMeasure {
        self.measure
    }

    /// Largest word length evaluated.
    pub fn max_len(&self) -> usize {
        self.values.len() - 1
    }

    /// Values indexed by word length, starting at length 0.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at one word length.
    pub fn value(&self, len: usize) -> f64 {
        self.values[len]
    }
}

fn curve_point(
    machine: &EpsilonMachine,
    measure: BlockMeasure,
    len: usize,
    h1: f64,
) -> Result<f64> {
    let words = process::word_distribution(machine, len)?;
    match measure {
        BlockMeasure::Entropy => {
            measures::entropy(&words, &IndexSet::range(0..len))
        }
        BlockMeasure::TotalCorrelation => {
            let h = measures::entropy(&words, &IndexSet::range(0..len))?;
            measures::clamp_nonnegative(len as f64 * h1 - h, "total correlation")
        }
        BlockMeasure::Binding => measures::binding_information(&words),
        BlockMeasure::Residual => measures::residual_entropy(&words),
        BlockMeasure::LocalExogenous => measures::local_exogenous_information(&words),
        BlockMeasure::Enigmatic => measures::enigmatic_information(&words),
        BlockMeasure::CoInformation => measures::co_information(&words),
    }
}

/// Evaluate `measure` on the word distribution at every length `1..=max_len`.
///
/// Each length builds its own word table, so the lengths are independent and
/// run through [`map_range`]: in parallel under the `parallel` feature,
/// sequentially otherwise. The total correlation point reuses the exact
/// single-symbol entropy rather than re-deriving it per length.
///
/// ```
/// use infoseries::{block_curve, golden_mean_family, BlockMeasure};
///
/// let machine = golden_mean_family(0.5).unwrap();
/// let curve = block_curve(&machine, BlockMeasure::Entropy, 3).unwrap();
/// assert_eq!(curve.value(0), 0.0);
/// assert!((curve.value(2) - 3.0f64.log2()).abs() < 1e-12);
/// ```
pub fn block_curve(
    machine: &EpsilonMachine,
    measure: BlockMeasure,
    max_len: usize,
) -> Result<BlockCurve> {
    if max_len == 0 {
        return Err(Error::InvalidArgument(
            "curve needs at least one positive word length".into(),
        ));
    }
    let singles = process::word_distribution(machine, 1)?;
    let h1 = measures::entropy(&singles, &IndexSet::single(0))?;
    // The co-information subset sweep gets more expensive with every length,
    // so probe the longest point first: a request over the resource budget
    // fails before any of the cheaper lengths are computed.
    let last = if measure == BlockMeasure::CoInformation && max_len > 1 {
        Some(curve_point(machine, measure, max_len, h1)?)
    } else {
        None
    };
    let parallel_len = if last.is_some() { max_len - 1 } else { max_len };
    let points = map_range(1..parallel_len + 1, |len| {
        curve_point(machine, measure, len, h1)
    });
    let mut values = Vec::with_capacity(max_len + 1);
    values.push(0.0);
    for point in points {
        values.push(point?);
    }
    if let Some(point) = last {
        values.push(point);
    }
    Ok(BlockCurve { measure, values })
}

/// Per-length increments `v[l] - v[l-1]` for `l = 1..=max_len`.
///
/// For the entropy curve this is the block entropy gain `h(l)`; for the total
/// correlation curve it is the length-`l` redundancy estimate.
pub fn discrete_derivative(curve: &BlockCurve) -> Vec<f64> {
    curve.values.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Linear asymptote `v(l) ~ rate * l + subextensive` extracted from a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticFit {
    /// Slope estimate at the largest available length.
    pub rate: f64,
    /// Intercept estimate: the curve minus its extensive part.
    pub subextensive: f64,
    /// Whether the estimate had stopped moving at the final lengths.
    pub converged: bool,
    /// Size of the estimate's last observed movement.
    pub residual: f64,
}

/// Fit the linear asymptote of a curve from its last few points.
///
/// The slope is the final discrete derivative and the intercept follows by
/// subtraction, so the fit is exact once the curve has reached its asymptote
/// and biased when it has not: slowly decaying transients land in the slope
/// and get amplified by the length. `converged` reports whether the last
/// three derivatives agree within `tolerance`; treat the intercept with
/// suspicion when it is false. [`ee_decompositions`] avoids the bias by
/// pinning slopes to their exactly known values.
pub fn asymptote_fit(curve: &BlockCurve, tolerance: f64) -> Result<AsymptoticFit> {
    let max_len = curve.max_len();
    if max_len < 3 {
        return Err(Error::InvalidArgument(
            "asymptote fit needs a curve of length at least three".into(),
        ));
    }
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidArgument(
            "fit tolerance must be positive".into(),
        ));
    }
    let deriv = discrete_derivative(curve);
    let rate = deriv[max_len - 1];
    let subextensive = curve.value(max_len) - max_len as f64 * rate;
    let step_back = (deriv[max_len - 1] - deriv[max_len - 2]).abs();
    let step_back_two = (deriv[max_len - 2] - deriv[max_len - 3]).abs();
    let residual = step_back.max(step_back_two);
    Ok(AsymptoticFit {
        rate,
        subextensive,
        converged: residual <= tolerance,
        residual,
    })
}

/// Estimate the limit of a per-parity geometrically decaying gap sequence.
///
/// Block-measure increments of finite-state processes approach their rates
/// geometrically, often with a period-two signature (even and odd lengths
/// converging along separate tracks). Estimating a per-two-step ratio from
/// the last three same-parity gaps, sharpening it with one Aitken step, and
/// summing the implied tail recovers most of the truncation error. Returns
/// `None` when the gaps are already below the floor or too irregular for a
/// stable ratio, in which case the caller should use the bare partial sum.
fn geometric_tail(gaps: &[f64]) -> Option<f64> {
    let n = gaps.len();
    if n < 6 {
        return None;
    }
    let last = gaps[n - 1];
    let prev = gaps[n - 2];
    if last.abs() <= GAP_FLOOR && prev.abs() <= GAP_FLOOR {
        return None;
    }
    let ratio_at = |end: usize| -> Option<f64> {
        let from = gaps[end - 2];
        if from.abs() <= GAP_FLOOR {
            return None;
        }
        Some(gaps[end] / from)
    };
    let r2 = ratio_at(n - 1)?;
    let r1 = ratio_at(n - 3)?;
    let r0 = ratio_at(n - 5)?;
    // Aitken delta-squared on the ratio sequence; fall back to the raw last
    // ratio when the second difference is too small to divide by.
    let denom = (r2 - r1) - (r1 - r0);
    let ratio = if denom.abs() > 1e-6 {
        r2 - (r2 - r1) * (r2 - r1) / denom
    } else {
        r2
    };
    if !(ratio > 0.0 && ratio < TAIL_RATIO_CAP) {
        return None;
    }
    // Remaining tail: both parity tracks continue with the same ratio, so
    // the sum from length max+1 onward telescopes to (g[max-1] + g[max])
    // times ratio / (1 - ratio).
    Some((prev + last) * ratio / (1.0 - ratio))
}

/// Fit a curve whose asymptotic slope is already known exactly.
///
/// With the slope pinned, the gap sequence `d(l) - rate` is pure transient;
/// its partial sum plus a geometric tail estimate gives the subextensive
/// part. The residual is the change in that estimate when the final point is
/// dropped, a direct stability measure.
pub fn asymptote_fit_with_rate(
    curve: &BlockCurve,
    rate: f64,
    tolerance: f64,
) -> Result<AsymptoticFit> {
    let max_len = curve.max_len();
    if max_len < 3 {
        return Err(Error::InvalidArgument(
            "asymptote fit needs a curve of length at least three".into(),
        ));
    }
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidArgument(
            "fit tolerance must be positive".into(),
        ));
    }
    let estimate = |len: usize| -> f64 {
        let gaps: Vec<f64> = (1..=len)
            .map(|l| curve.value(l) - curve.value(l - 1) - rate)
            .collect();
        let partial = curve.value(len) - len as f64 * rate;
        partial + geometric_tail(&gaps).unwrap_or(0.0)
    };
    let subextensive = estimate(max_len);
    let residual = (subextensive - estimate(max_len - 1)).abs();
    Ok(AsymptoticFit {
        rate,
        subextensive,
        converged: residual <= tolerance,
        residual,
    })
}

/// Excess entropy computed along two summation routes plus a direct
/// state-based cross-check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcessEntropy {
    /// Tail-completed sum of entropy-gain overshoots `h(l) - h_mu`.
    pub from_entropy_gains: f64,
    /// The same limit reached through redundancy shortfalls `rho_mu - rho(l)`.
    pub from_redundancies: f64,
    /// Overshoot sum before the tail model is added.
    pub partial_sum: f64,
    /// Geometric tail estimate added to the partial sum.
    pub tail_correction: f64,
    /// Mutual information between the state entering a window and the window
    /// contents plus the state leaving it. Equals the past/future mutual
    /// information whenever observing the process long enough pins down the
    /// state, which holds for every built-in machine.
    pub bidirectional: f64,
    /// Whether the two summation routes agreed term by term.
    pub termwise_match: bool,
    /// Whether the final entropy gain had already reached the rate.
    pub tail_converged: bool,
    /// Largest block length entering the sums.
    pub max_len: usize,
}

/// Sum the entropy-gain overshoots up to `max_len` and complete the tail.
///
/// The increments `h(l)` of the entropy curve and the increments `rho(l)` of
/// the total correlation curve must mirror each other around their shared
/// limits (`h(l) - h_mu = rho_mu - rho(l)`); both partial sums converge to
/// the excess entropy. Finite-state transients decay geometrically, so a
/// ratio-extrapolated tail sharpens the truncated sum by orders of magnitude
/// on slowly synchronizing processes. `bidirectional` recomputes the limit
/// without any summation, from one state-framed window.
pub fn excess_entropy(machine: &EpsilonMachine, max_len: usize) -> Result<ExcessEntropy> {
    if max_len < 2 {
        return Err(Error::InvalidArgument(
            "excess entropy needs block length at least two".into(),
        ));
    }
    let h_mu = process::entropy_rate_exact(machine)?;
    let entropy_curve = block_curve(machine, BlockMeasure::Entropy, max_len)?;
    let correlation_curve = block_curve(machine, BlockMeasure::TotalCorrelation, max_len)?;
    let h1 = entropy_curve.value(1);
    let rho_mu = h1 - h_mu;

    let gains = discrete_derivative(&entropy_curve);
    let redundancies = discrete_derivative(&correlation_curve);
    let gaps: Vec<f64> = gains.iter().map(|h| h - h_mu).collect();
    let mut termwise_match = true;
    for (h_gap, rho) in gaps.iter().zip(&redundancies) {
        if (h_gap + (rho - rho_mu)).abs() > IDENTITY_TOLERANCE {
            termwise_match = false;
        }
    }

    let partial_sum: f64 = gaps.iter().sum();
    let tail_correction = geometric_tail(&gaps).unwrap_or(0.0);
    let from_entropy_gains = partial_sum + tail_correction;
    let rho_partial: f64 = redundancies.iter().map(|rho| rho_mu - rho).sum();
    let from_redundancies = rho_partial + tail_correction;
    let tail_converged = gaps[max_len - 1].abs() < CONVERGENCE_TOLERANCE;

    let bidirectional = bidirectional_excess(machine, max_len)?;

    Ok(ExcessEntropy {
        from_entropy_gains,
        from_redundancies,
        partial_sum,
        tail_correction,
        bidirectional,
        termwise_match,
        tail_converged,
        max_len,
    })
}

/// Mutual information between the entering state and everything after it in
/// a framed window of width `max_len` (capped by the word-table budget).
fn bidirectional_excess(machine: &EpsilonMachine, max_len: usize) -> Result<f64> {
    let len = affordable_len(machine, max_len.min(12)).ok_or_else(|| {
        Error::ResourceLimit("framed window for bidirectional excess entropy".into())
    })?;
    let framed = process::framed_word_distribution(machine, len)?;
    measures::mutual_information(
        &framed,
        &IndexSet::single(0),
        &IndexSet::range(1..len + 2),
    )
}

/// Largest length up to `cap` whose word table fits the budget.
fn affordable_len(machine: &EpsilonMachine, cap: usize) -> Option<usize> {
    let states = machine.state_count() as f64;
    let k = machine.alphabet_size() as f64;
    (2..=cap)
        .rev()
        .find(|&len| states * k.powi(len as i32) <= process::WORD_TABLE_BUDGET)
}

/// Entropy of the present symbol given the entering state, the next `window`
/// symbols, and the state after them.
///
/// Because the machine is unifilar, the entering state summarizes the entire
/// past of the process; the leaving state summarizes everything the future
/// beyond the window could add. The value is therefore squeezed between the
/// true two-sided conditional entropy and the finite-window one, and is exact
/// once `window` spans what the future can reveal about the state.
fn framed_present_entropy(machine: &EpsilonMachine, window: usize) -> Result<f64> {
    let framed = process::framed_word_distribution(machine, window + 1)?;
    let total = framed.variable_count();
    let rest = IndexSet::new((0..total).filter(|&i| i != 1))?;
    measures::conditional_entropy(&framed, &IndexSet::single(1), &rest)
}

/// Two-sided ephemeral rate estimate at one window width.
///
/// Public wrapper around the framed conditional entropy for callers (sweeps,
/// quick checks) that need the rate split without the full [`anatomy`].
pub fn ephemeral_rate(machine: &EpsilonMachine, window: usize) -> Result<f64> {
    if window == 0 {
        return Err(Error::InvalidArgument(
            "ephemeral rate window must be at least one".into(),
        ));
    }
    framed_present_entropy(machine, window)
}

/// The entropy-rate split and its companion quantities at one window width.
#[derive(Debug, Clone, PartialEq)]
pub struct Anatomy {
    /// Window width used for the two-sided conditioning.
    pub window: usize,
    /// Single-symbol entropy `H(1)`.
    pub h1: f64,
    /// Entropy rate `h_mu`.
    pub h_mu: f64,
    /// Compression redundancy rate `rho_mu = H(1) - h_mu`.
    pub rho_mu: f64,
    /// Ephemeral rate: entropy of a symbol no neighbor ever explains.
    pub r_mu: f64,
    /// Bound rate: randomness created now that the future will echo.
    pub b_mu: f64,
    /// Enigmatic rate `q_mu = rho_mu - b_mu`; may be negative.
    pub q_mu: f64,
    /// Exogenous rate `w_mu = rho_mu + b_mu`.
    pub w_mu: f64,
    /// Elusive rate `sigma_mu = E - rho_mu`: shared information that never
    /// shows up in any single symbol.
    pub sigma_mu: f64,
    /// Excess entropy, from the tail-completed gain sum.
    pub excess_entropy: f64,
    /// Single-symbol mutual information rate `i1 = q_mu + sigma_mu`.
    pub i1: f64,
    /// Single-symbol compression redundancy.
    pub r1: f64,
    /// Asymptotic compression redundancy.
    pub r_inf: f64,
    /// Window-convergence evidence and alternative estimators.
    pub diagnostics: AnatomyDiagnostics,
}

/// Convergence evidence for the windowed ephemeral-rate estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnatomyDiagnostics {
    /// Ephemeral rate at one window narrower.
    pub r_mu_prev_window: f64,
    /// Absolute change from the narrower window.
    pub r_mu_delta: f64,
    /// Estimate without the trailing state: an upper bound that ignores what
    /// the far future reveals.
    pub r_mu_one_sided: f64,
    /// Plain centered-window estimate over symbols only, when affordable.
    /// Converges much more slowly than the state-framed value.
    pub r_mu_symbols_only: Option<f64>,
    /// Whether widening the window stopped changing the estimate.
    pub window_converged: bool,
    /// The excess-entropy computation behind `excess_entropy`.
    pub excess: ExcessEntropy,
}

/// Decompose the entropy rate at `window` into ephemeral and bound parts,
/// and the single-symbol entropy into all derived rates.
///
/// Conditioning uses state-framed windows, so the reported rates are the
/// two-sided limits rather than finite-window approximations whenever the
/// process synchronizes in both directions; the diagnostics expose how the
/// windowed, one-sided, and symbols-only estimates compare.
///
/// ```
/// use infoseries::{anatomy, even_process};
///
/// let parts = anatomy(&even_process(), 8).unwrap();
/// // The entropy rate splits into ephemeral and bound parts. For this
/// // process every bit of the rate is bound: the present symbol is fixed
/// // once both the infinite past and the infinite future are known.
/// assert!((parts.h_mu - (parts.r_mu + parts.b_mu)).abs() < 1e-9);
/// assert!(parts.r_mu.abs() < 1e-9);
/// ```
pub fn anatomy(machine: &EpsilonMachine, window: usize) -> Result<Anatomy> {
    anatomy_capped(machine, window, EXCESS_LENGTH_CAP)
}

/// [`anatomy`] with an explicit cap on the block length used for the
/// excess-entropy sums, for callers trading accuracy against time.
pub fn anatomy_capped(
    machine: &EpsilonMachine,
    window: usize,
    block_cap: usize,
) -> Result<Anatomy> {
    if window == 0 {
        return Err(Error::InvalidArgument(
            "anatomy window must be at least one".into(),
        ));
    }
    if block_cap < 2 {
        return Err(Error::InvalidArgument(
            "excess-entropy block cap must be at least two".into(),
        ));
    }
    let h_mu = process::entropy_rate_exact(machine)?;
    let singles = process::word_distribution(machine, 1)?;
    let h1 = measures::entropy(&singles, &IndexSet::single(0))?;
    let rho_mu = h1 - h_mu;

    let r_mu = framed_present_entropy(machine, window)?;
    let r_mu_prev = framed_present_entropy(machine, window - 1)?;
    let r_mu_delta = (r_mu_prev - r_mu).abs();

    let framed = process::framed_word_distribution(machine, window + 1)?;
    let total = framed.variable_count();
    let without_trailing_state = IndexSet::new((0..total - 1).filter(|&i| i != 1))?;
    let r_mu_one_sided = measures::conditional_entropy(
        &framed,
        &IndexSet::single(1),
        &without_trailing_state,
    )?;
    let r_mu_symbols_only = symbols_only_present_entropy(machine, window)?;

    let b_mu = measures::clamp_nonnegative(h_mu - r_mu, "bound rate")?;
    let q_mu = rho_mu - b_mu;
    let w_mu = rho_mu + b_mu;

    let ee_len = affordable_len(machine, block_cap)
        .ok_or_else(|| Error::ResourceLimit("block table for excess entropy".into()))?;
    let excess = excess_entropy(machine, ee_len)?;
    let e = excess.from_entropy_gains;
    let sigma_mu = e - rho_mu;
    let i1 = q_mu + sigma_mu;

    let redundancies = process::compression_redundancies(machine)?;

    Ok(Anatomy {
        window,
        h1,
        h_mu,
        rho_mu,
        r_mu,
        b_mu,
        q_mu,
        w_mu,
        sigma_mu,
        excess_entropy: e,
        i1,
        r1: redundancies.r1,
        r_inf: redundancies.r_inf,
        diagnostics: AnatomyDiagnostics {
            r_mu_prev_window: r_mu_prev,
            r_mu_delta,
            r_mu_one_sided,
            r_mu_symbols_only,
            window_converged: r_mu_delta <= CONVERGENCE_TOLERANCE,
            excess,
        },
    })
}

/// Centered-window conditional entropy using symbols alone, skipped when the
/// table would blow the budget.
fn symbols_only_present_entropy(
    machine: &EpsilonMachine,
    window: usize,
) -> Result<Option<f64>> {
    let len = 2 * window + 1;
    let states = machine.state_count() as f64;
    let k = machine.alphabet_size() as f64;
    if states * k.powi(len as i32) > process::WORD_TABLE_BUDGET {
        return Ok(None);
    }
    let words = process::word_distribution(machine, len)?;
    let rest = IndexSet::new((0..len).filter(|&i| i != window))?;
    let value = measures::conditional_entropy(&words, &IndexSet::single(window), &rest)?;
    Ok(Some(value))
}

/// Four curve fits that must each recombine to the excess entropy.
#[derive(Debug, Clone, PartialEq)]
pub struct EeDecompositions {
    /// Fit of the residual-entropy curve; subextensive part `E_R`.
    pub residual: AsymptoticFit,
    /// Fit of the dual-total-correlation curve; subextensive part `E_B`.
    pub binding: AsymptoticFit,
    /// Fit of the enigmatic curve; subextensive part `E_Q`.
    pub enigmatic: AsymptoticFit,
    /// Fit of the exogenous curve; subextensive part `E_W`.
    pub exogenous: AsymptoticFit,
    /// The four recombinations that should each equal the excess entropy:
    /// `E_B + E_R`, `-E_B - E_Q`, `(E_R - E_Q)/2`, `-(E_W + E_Q)/2`.
    pub recombinations: [f64; 4],
    /// Reference excess entropy from the anatomy.
    pub excess_entropy: f64,
    /// `b_mu + q_mu + sigma_mu`, which must also equal the excess entropy.
    pub anatomy_sum: f64,
    /// Tolerance the recombination checks were run against.
    pub fit_tolerance: f64,
    /// Whether every recombination landed within the tolerance.
    pub consistent: bool,
}

/// Fit the residual, binding, enigmatic, and exogenous curves and check that
/// their subextensive parts recombine to the excess entropy.
///
/// The slopes of these curves are the anatomy rates, which are known exactly,
/// so the fits pin them rather than re-estimating a slope from the curve and
/// letting its error, multiplied by the length, contaminate the intercept.
pub fn ee_decompositions(
    machine: &EpsilonMachine,
    max_len: usize,
    window: usize,
) -> Result<EeDecompositions> {
    if max_len < 6 {
        return Err(Error::InvalidArgument(
            "decomposition fits need block length at least six".into(),
        ));
    }
    let parts = anatomy(machine, window)?;
    let fits: Vec<Result<AsymptoticFit>> = map_range(0..4, |i| {
        let (measure, rate) = match i {
            0 => (BlockMeasure::Residual, parts.r_mu),
            1 => (BlockMeasure::Binding, parts.b_mu),
            2 => (BlockMeasure::Enigmatic, parts.q_mu),
            _ => (BlockMeasure::LocalExogenous, parts.w_mu),
        };
        let curve = block_curve(machine, measure, max_len)?;
        asymptote_fit_with_rate(&curve, rate, FIT_TOLERANCE)
    });
    let mut it = fits.into_iter();
    let residual = it.next().unwrap()?;
    let binding = it.next().unwrap()?;
    let enigmatic = it.next().unwrap()?;
    let exogenous = it.next().unwrap()?;

    let e_r = residual.subextensive;
    let e_b = binding.subextensive;
    let e_q = enigmatic.subextensive;
    let e_w = exogenous.subextensive;
    let recombinations = [
        e_b + e_r,
        -e_b - e_q,
        0.5 * (e_r - e_q),
        -0.5 * (e_w + e_q),
    ];
    let excess = parts.excess_entropy;
    let anatomy_sum = parts.b_mu + parts.q_mu + parts.sigma_mu;
    let consistent = recombinations
        .iter()
        .all(|value| (value - excess).abs() <= FIT_TOLERANCE)
        && (anatomy_sum - excess).abs() <= FIT_TOLERANCE;

    Ok(EeDecompositions {
        residual,
        binding,
        enigmatic,
        exogenous,
        recombinations,
        excess_entropy: excess,
        anatomy_sum,
        fit_tolerance: FIT_TOLERANCE,
        consistent,
    })
}

/// Behavior of the multivariate co-information at large block lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinformationCheck {
    /// The co-information curve that was examined.
    pub curve: BlockCurve,
    /// Fitted growth rate of the curve.
    pub rate: f64,
    /// Fitted subextensive part of the curve.
    pub subextensive: f64,
    /// Final curve value.
    pub final_value: f64,
    /// `|I(max_len)| < 1e-2`: the curve itself has died out.
    pub final_small: bool,
    /// `|rate| < 1e-3`: no extensive co-information component.
    pub rate_vanishes: bool,
    /// `|subextensive| < 1e-2`: no persistent co-information offset.
    pub limit_vanishes: bool,
}

/// Threshold on the final co-information value.
pub const COINFORMATION_VALUE_TOLERANCE: f64 = 1e-2;
/// Threshold on the fitted co-information rate.
pub const COINFORMATION_RATE_TOLERANCE: f64 = 1e-3;

/// Check that the co-information of ever-longer blocks dies out.
///
/// For a positive-entropy-rate process the alternating subset sum cancels
/// almost perfectly once blocks are long: the curve, its growth rate, and
/// its limit should all vanish. Requires a positive entropy rate, since
/// periodic processes keep macroscopic co-information forever.
pub fn coinformation_propositions_check(
    machine: &EpsilonMachine,
    max_len: usize,
) -> Result<CoinformationCheck> {
    let h_mu = process::entropy_rate_exact(machine)?;
    if h_mu <= 0.0 {
        return Err(Error::InvalidArgument(
            "co-information checks need a positive entropy rate".into(),
        ));
    }
    if max_len < 3 {
        return Err(Error::InvalidArgument(
            "co-information check needs block length at least three".into(),
        ));
    }
    let curve = block_curve(machine, BlockMeasure::CoInformation, max_len)?;
    let fit = asymptote_fit(&curve, COINFORMATION_RATE_TOLERANCE)?;
    let final_value = curve.value(max_len);
    Ok(CoinformationCheck {
        rate: fit.rate,
        subextensive: fit.subextensive,
        final_value,
        final_small: final_value.abs() < COINFORMATION_VALUE_TOLERANCE,
        rate_vanishes: fit.rate.abs() < COINFORMATION_RATE_TOLERANCE,
        limit_vanishes: fit.subextensive.abs() < COINFORMATION_VALUE_TOLERANCE,
        curve,
    })
}
