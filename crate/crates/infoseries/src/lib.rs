//! Information measures for stationary symbolic processes.
//!
//! The crate is organised around three layers:
//!
//! * [`dist`] and [`measures`] work on finite joint distributions: sparse
//!   probability tables over a handful of discrete variables, the classical
//!   Shannon quantities, and the multivariate measures built from them
//!   (total correlation, binding information, co-information, and friends).
//!   [`atoms`] decomposes those measures over the signed atoms of the
//!   N-variable information diagram.
//! * [`process`] supplies the generators: unifilar edge-labelled Markov
//!   machines, their stationary distributions, exact length-`l` word
//!   distributions, and seeded sampling.
//! * [`block`] and [`pid`] combine the two: block curves of each measure as
//!   a function of word length, asymptotic growth-rate fits, the per-symbol
//!   rate decomposition of a single observation, and a two-source partial
//!   information decomposition around the present symbol.
//!
//! All entropies and rates are in bits (base-2 logarithms).
//!
//! With the default `parallel` feature the length sweeps and subset
//! enumerations fan out over a rayon thread pool; disabling default features
//! yields a dependency-free sequential build with identical results.

pub mod atoms;
pub mod block;
pub mod dist;
mod exec;
pub mod measures;
pub mod pid;
pub mod process;

pub use atoms::{atom_measure, atom_weights, AtomMeasure, AtomWeights, MeasureId};
pub use block::{
    anatomy, anatomy_capped, asymptote_fit, asymptote_fit_with_rate, block_curve,
    coinformation_propositions_check, discrete_derivative, ee_decompositions, ephemeral_rate,
    excess_entropy, Anatomy, AnatomyDiagnostics, AsymptoticFit, BlockCurve, BlockMeasure,
    CoinformationCheck, EeDecompositions, ExcessEntropy,
};
pub use dist::{IndexSet, JointDistribution};
pub use pid::{
    anatomy_pid_past, anatomy_pid_present, pid_two_sources, specific_information, PastPid,
    PidDecomposition, PresentPid,
};
pub use process::{
    compression_redundancies, empirical_word_distribution, entropy_rate_exact, even_process,
    fair_coin, framed_word_distribution, golden_mean_family, noisy_random_phase_slip,
    sample_sequence, stationary_distribution, word_distribution, EpsilonMachine, Redundancies,
    StationaryDistribution,
};

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An index set was constructed without any indices.
    #[error("index set is empty")]
    EmptyIndexSet,
    /// A variable index exceeded the distribution's dimension.
    #[error("variable index {index} out of range for {count} variables")]
    IndexOutOfRange { index: usize, count: usize },
    /// The same variable index appeared twice in one index set.
    #[error("variable index {0} appears more than once")]
    DuplicateIndex(usize),
    /// Two index sets that must be disjoint share a variable.
    #[error("index sets overlap at variable {0}")]
    OverlappingIndexSets(usize),
    /// A probability table failed validation.
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    /// Conditioning or a specific-information query hit an outcome with
    /// zero probability.
    #[error("conditioning outcome has zero probability")]
    ZeroProbabilityOutcome,
    /// A machine definition failed validation.
    #[error("invalid machine: {0}")]
    InvalidMachine(String),
    /// A provably nonnegative quantity came out below the numerical floor.
    #[error("{quantity} evaluated to {value:.3e}, below the consistency floor")]
    NegativeMeasure { quantity: &'static str, value: f64 },
    /// An atom decomposition failed its internal cross-check.
    #[error("atom decomposition inconsistent: {0}")]
    InconsistentDecomposition(String),
    /// A measure name could not be parsed.
    #[error("unknown measure `{0}`")]
    UnknownMeasure(String),
    /// The requested computation exceeds the built-in size budget.
    #[error("computation exceeds resource budget: {0}")]
    ResourceLimit(String),
    /// An iterative solver ran out of iterations.
    #[error("iteration budget of {0} exhausted before convergence")]
    NonConvergence(usize),
    /// An argument was outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
