//! Unifilar edge-labelled Markov machines and their word statistics.
//!
//! A machine is a finite set of states with at most one outgoing edge per
//! (state, symbol) pair, each edge carrying a probability and a successor
//! state. Per-state probabilities sum to one and the positive-probability
//! edge graph must be strongly connected, so the stationary state
//! distribution exists, is unique, and every length-`l` word distribution
//! drawn from it is stationary.
//!
//! Unifilarity makes the observable side exact: the state path is a
//! deterministic function of the start state and the emitted word, so word
//! probabilities are sums over start states of single products, and the
//! entropy rate is the stationary average of per-state branching entropies.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::JointDistribution;
use crate::{Error, Result};

/// Per-state outgoing probabilities must sum to one within this tolerance.
pub const ROW_SUM_TOLERANCE: f64 = 1e-12;

/// Residual tolerance for the stationary fixed point.
pub const STATIONARY_TOLERANCE: f64 = 1e-10;

/// State count above which the stationary solve switches from dense
/// elimination to power iteration.
const DENSE_SOLVE_LIMIT: usize = 64;

const POWER_ITERATION_CAP: usize = 1_000_000;
const POWER_ITERATION_TOLERANCE: f64 = 1e-13;

/// Budget on `states * alphabet^length` for exact word enumeration.
pub(crate) const WORD_TABLE_BUDGET: f64 = 2e8;

/// Finite-state generator of a stationary symbolic process.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonMachine {
    names: Vec<String>,
    alphabet_size: usize,
    /// `transitions[state][symbol]` is the probability and successor of the
    /// unique edge for that pair, if present.
    transitions: Vec<Vec<Option<(f64, usize)>>>,
}

impl EpsilonMachine {
    /// Validates and builds a machine from a flat edge list
    /// `(from, symbol, probability, to)`.
    ///
    /// Zero-probability edges are dropped. Fails on duplicate
    /// (state, symbol) pairs, probabilities outside `[0, 1]`, per-state
    /// sums off one by more than [`ROW_SUM_TOLERANCE`], or a
    /// positive-probability graph that is not strongly connected.
    pub fn from_edges(
        names: Vec<String>,
        alphabet_size: usize,
        edges: &[(usize, usize, f64, usize)],
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidMachine("a machine needs at least one state".into()));
        }
        if alphabet_size == 0 || alphabet_size > crate::dist::MAX_ALPHABET {
            return Err(Error::InvalidMachine(format!(
                "alphabet size {alphabet_size} outside 1..={}",
                crate::dist::MAX_ALPHABET
            )));
        }
        {
            let mut sorted = names.clone();
            sorted.sort();
            for pair in sorted.windows(2) {
                if pair[0] == pair[1] {
                    return Err(Error::InvalidMachine(format!(
                        "state name `{}` is not unique",
                        pair[0]
                    )));
                }
            }
        }
        let mut transitions = vec![vec![None; alphabet_size]; n];
        for &(from, symbol, p, to) in edges {
            if from >= n || to >= n {
                return Err(Error::InvalidMachine(format!(
                    "edge ({from}, {symbol}) references a state outside 0..{n}"
                )));
            }
            if symbol >= alphabet_size {
                return Err(Error::InvalidMachine(format!(
                    "symbol {symbol} outside alphabet 0..{alphabet_size}"
                )));
            }
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidMachine(format!(
                    "edge ({}, {symbol}) has probability {p}",
                    names[from]
                )));
            }
            if transitions[from][symbol].is_some() {
                return Err(Error::InvalidMachine(format!(
                    "state `{}` has two edges for symbol {symbol}",
                    names[from]
                )));
            }
            if p > 0.0 {
                transitions[from][symbol] = Some((p, to));
            }
        }
        for (s, row) in transitions.iter().enumerate() {
            let sum: f64 = row.iter().flatten().map(|&(p, _)| p).sum();
            if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
                return Err(Error::InvalidMachine(format!(
                    "outgoing probabilities of state `{}` sum to {sum:.15}",
                    names[s]
                )));
            }
        }
        let machine = Self {
            names,
            alphabet_size,
            transitions,
        };
        machine.check_strongly_connected()?;
        Ok(machine)
    }

    fn check_strongly_connected(&self) -> Result<()> {
        let n = self.state_count();
        let mut forward = vec![vec![]; n];
        let mut backward = vec![vec![]; n];
        for (s, row) in self.transitions.iter().enumerate() {
            for &(_, t) in row.iter().flatten() {
                forward[s].push(t);
                backward[t].push(s);
            }
        }
        for (direction, graph) in [("reachable from", &forward), ("able to reach", &backward)] {
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(s) = stack.pop() {
                for &t in &graph[s] {
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
            if let Some(missing) = seen.iter().position(|&v| !v) {
                return Err(Error::InvalidMachine(format!(
                    "state `{}` is not {direction} state `{}`",
                    self.names[missing], self.names[0]
                )));
            }
        }
        Ok(())
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// Probability and successor of the edge for `(state, symbol)`.
    pub fn transition(&self, state: usize, symbol: usize) -> Option<(f64, usize)> {
        self.transitions[state][symbol]
    }

    /// State-to-state transition matrix, summed over symbols.
    fn transition_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.state_count();
        let mut m = vec![vec![0.0; n]; n];
        for (s, row) in self.transitions.iter().enumerate() {
            for &(p, t) in row.iter().flatten() {
                m[s][t] += p;
            }
        }
        m
    }
}

/// Stationary probability vector over machine states.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDistribution {
    probs: Vec<f64>,
}

impl StationaryDistribution {
    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn probability(&self, state: usize) -> f64 {
        self.probs[state]
    }
}

fn fixed_point_residual(matrix: &[Vec<f64>], x: &[f64]) -> f64 {
    let n = x.len();
    (0..n)
        .map(|t| {
            let flow: f64 = (0..n).map(|s| x[s] * matrix[s][t]).sum();
            (flow - x[t]).abs()
        })
        .fold(0.0, f64::max)
}

fn dense_stationary_solve(matrix: &[Vec<f64>]) -> Option<Vec<f64>> {
    let n = matrix.len();
    // Solve x (P - I) = 0 with the last equation replaced by sum(x) = 1,
    // written column-wise as A x = b with A[t][s] = P[s][t] - delta.
    let mut a = vec![vec![0.0f64; n + 1]; n];
    for t in 0..n - 1 {
        for s in 0..n {
            a[t][s] = matrix[s][t] - if s == t { 1.0 } else { 0.0 };
        }
    }
    a[n - 1].fill(1.0);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col].abs().total_cmp(&a[j][col].abs())
        })?;
        if a[pivot][col].abs() < 1e-14 {
            return None;
        }
        a.swap(col, pivot);
        let pivot_row = a[col].clone();
        for (row, target) in a.iter_mut().enumerate() {
            if row == col {
                continue;
            }
            let factor = target[col] / pivot_row[col];
            if factor != 0.0 {
                for (t, &p) in target[col..].iter_mut().zip(&pivot_row[col..]) {
                    *t -= factor * p;
                }
            }
        }
    }
    let mut x: Vec<f64> = (0..n).map(|i| a[i][n] / a[i][i]).collect();
    for v in x.iter_mut() {
        if *v < 0.0 {
            if *v < -1e-12 {
                return None;
            }
            *v = 0.0;
        }
    }
    let total: f64 = x.iter().sum();
    for v in x.iter_mut() {
        *v /= total;
    }
    Some(x)
}

fn power_iteration(matrix: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n = matrix.len();
    let mut x = vec![1.0 / n as f64; n];
    for _ in 0..POWER_ITERATION_CAP {
        let mut next = vec![0.0; n];
        for (s, &mass) in x.iter().enumerate() {
            if mass > 0.0 {
                for (t, slot) in next.iter_mut().enumerate() {
                    *slot += mass * matrix[s][t];
                }
            }
        }
        let total: f64 = next.iter().sum();
        for v in next.iter_mut() {
            *v /= total;
        }
        let delta = x
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        x = next;
        if delta <= POWER_ITERATION_TOLERANCE {
            return Ok(x);
        }
    }
    Err(Error::NonConvergence(POWER_ITERATION_CAP))
}

/// Unique stationary distribution of the machine's state chain.
///
/// Uses dense elimination up to 64 states and power iteration beyond; the
/// returned vector satisfies the fixed-point equation within
/// [`STATIONARY_TOLERANCE`].
pub fn stationary_distribution(machine: &EpsilonMachine) -> Result<StationaryDistribution> {
    let matrix = machine.transition_matrix();
    let solved = if machine.state_count() <= DENSE_SOLVE_LIMIT {
        match dense_stationary_solve(&matrix) {
            Some(x) if fixed_point_residual(&matrix, &x) <= STATIONARY_TOLERANCE => Some(x),
            _ => None,
        }
    } else {
        None
    };
    let probs = match solved {
        Some(x) => x,
        None => {
            let x = power_iteration(&matrix)?;
            if fixed_point_residual(&matrix, &x) > STATIONARY_TOLERANCE {
                return Err(Error::NonConvergence(POWER_ITERATION_CAP));
            }
            x
        }
    };
    Ok(StationaryDistribution { probs })
}

/// Exact entropy rate in bits per symbol: the stationary average of the
/// per-state branching entropies.
pub fn entropy_rate_exact(machine: &EpsilonMachine) -> Result<f64> {
    let pi = stationary_distribution(machine)?;
    let mut rate = 0.0;
    for (s, row) in machine.transitions.iter().enumerate() {
        let mut h = 0.0;
        for &(p, _) in row.iter().flatten() {
            if p > 0.0 {
                h -= p * p.log2();
            }
        }
        rate += pi.probability(s) * h;
    }
    Ok(rate)
}

/// Exact distribution of length-`len` words emitted from the stationary
/// state mixture.
///
/// Walks the machine depth-first from every positive-probability start
/// state, pruning zero-probability branches, so the table holds only words
/// the process can emit.
pub fn word_distribution(machine: &EpsilonMachine, len: usize) -> Result<JointDistribution> {
    if len == 0 {
        return Err(Error::InvalidArgument(
            "word length must be at least one".into(),
        ));
    }
    let cost = machine.state_count() as f64 * (machine.alphabet_size as f64).powi(len as i32);
    if cost > WORD_TABLE_BUDGET {
        return Err(Error::ResourceLimit(format!(
            "enumerating {len}-symbol words over alphabet {} from {} states",
            machine.alphabet_size,
            machine.state_count()
        )));
    }
    let pi = stationary_distribution(machine)?;
    let mut table: BTreeMap<Vec<u8>, f64> = BTreeMap::new();
    let mut word = vec![0u8; len];
    for start in 0..machine.state_count() {
        let mass = pi.probability(start);
        if mass > 0.0 {
            extend_words(machine, start, mass, &mut word, 0, &mut table);
        }
    }
    JointDistribution::new(vec![machine.alphabet_size; len], table)
}

fn extend_words(
    machine: &EpsilonMachine,
    state: usize,
    mass: f64,
    word: &mut Vec<u8>,
    depth: usize,
    table: &mut BTreeMap<Vec<u8>, f64>,
) {
    if depth == word.len() {
        *table.entry(word.clone()).or_insert(0.0) += mass;
        return;
    }
    for (symbol, edge) in machine.transitions[state].iter().enumerate() {
        if let Some((p, next)) = edge {
            word[depth] = symbol as u8;
            extend_words(machine, *next, mass * p, word, depth + 1, table);
        }
    }
}

/// Joint distribution of a length-`len` word together with the machine state
/// at each end of the window.
///
/// Variables are ordered `[state before the window, the len symbols, state
/// after the window]`; the two state variables use the state count as their
/// alphabet. Because the process is Markov in the state, everything the
/// unobserved symbols beyond either end of the window could say about the
/// window is already carried by the edge states, so conditioning on them
/// stands in for conditioning on the unbounded past and future.
pub fn framed_word_distribution(machine: &EpsilonMachine, len: usize) -> Result<JointDistribution> {
    if len == 0 {
        return Err(Error::InvalidArgument(
            "word length must be at least one".into(),
        ));
    }
    let cost = machine.state_count() as f64 * (machine.alphabet_size as f64).powi(len as i32);
    if cost > WORD_TABLE_BUDGET {
        return Err(Error::ResourceLimit(format!(
            "enumerating framed {len}-symbol words over alphabet {} from {} states",
            machine.alphabet_size,
            machine.state_count()
        )));
    }
    let pi = stationary_distribution(machine)?;
    let n = machine.state_count();
    let mut table: BTreeMap<Vec<u8>, f64> = BTreeMap::new();
    let mut framed = vec![0u8; len + 2];
    for start in 0..n {
        let mass = pi.probability(start);
        if mass > 0.0 {
            framed[0] = start as u8;
            extend_framed(machine, start, mass, &mut framed, 1, &mut table);
        }
    }
    let mut alphabets = vec![machine.alphabet_size; len + 2];
    alphabets[0] = n;
    alphabets[len + 1] = n;
    JointDistribution::new(alphabets, table)
}

fn extend_framed(
    machine: &EpsilonMachine,
    state: usize,
    mass: f64,
    framed: &mut Vec<u8>,
    depth: usize,
    table: &mut BTreeMap<Vec<u8>, f64>,
) {
    if depth == framed.len() - 1 {
        framed[depth] = state as u8;
        *table.entry(framed.clone()).or_insert(0.0) += mass;
        return;
    }
    for (symbol, edge) in machine.transitions[state].iter().enumerate() {
        if let Some((p, next)) = edge {
            framed[depth] = symbol as u8;
            extend_framed(machine, *next, mass * p, framed, depth + 1, table);
        }
    }
}

/// Samples `length` symbols with a ChaCha8 generator seeded by `seed`.
///
/// The start state is drawn from the stationary distribution, so the output
/// is a stationary sample; identical seeds give identical sequences on
/// every platform.
pub fn sample_sequence(machine: &EpsilonMachine, length: usize, seed: u64) -> Result<Vec<u8>> {
    let pi = stationary_distribution(machine)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut chosen = machine.state_count() - 1;
        for (s, &p) in pi.probabilities().iter().enumerate() {
            acc += p;
            if u < acc {
                chosen = s;
                break;
            }
        }
        chosen
    };
    let mut out = Vec::with_capacity(length);
    for _ in 0..length {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut emitted = None;
        for (symbol, edge) in machine.transitions[state].iter().enumerate() {
            if let Some((p, next)) = edge {
                acc += p;
                if u < acc {
                    emitted = Some((symbol as u8, *next));
                    break;
                }
            }
        }
        let (symbol, next) = emitted.unwrap_or_else(|| {
            // Rounding pushed the cumulative sum below u; take the last edge.
            let (symbol, edge) = machine.transitions[state]
                .iter()
                .enumerate()
                .rev()
                .find(|(_, e)| e.is_some())
                .expect("validated state has at least one edge");
            let (_, next) = edge.expect("edge present");
            (symbol as u8, next)
        });
        out.push(symbol);
        state = next;
    }
    Ok(out)
}

/// Empirical distribution of the `len`-symbol sliding windows of `seq`.
///
/// The alphabet size is inferred as one plus the largest symbol present.
pub fn empirical_word_distribution(seq: &[u8], len: usize) -> Result<JointDistribution> {
    if len == 0 {
        return Err(Error::InvalidArgument(
            "window length must be at least one".into(),
        ));
    }
    if seq.len() < len {
        return Err(Error::InvalidArgument(format!(
            "sequence of {} symbols has no window of length {len}",
            seq.len()
        )));
    }
    let alphabet = *seq.iter().max().expect("sequence is nonempty") as usize + 1;
    let mut counts: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
    for window in seq.windows(len) {
        *counts.entry(window.to_vec()).or_insert(0) += 1;
    }
    let total = (seq.len() - len + 1) as f64;
    let entries = counts
        .into_iter()
        .map(|(word, c)| (word, c as f64 / total));
    JointDistribution::new(vec![alphabet; len], entries)
}

/// Single-symbol and asymptotic compression redundancies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Redundancies {
    /// `log2(alphabet) - H[single symbol]`: what symbol frequencies alone
    /// buy a compressor.
    pub r1: f64,
    /// `log2(alphabet) - entropy rate`: what full context modelling buys.
    pub r_inf: f64,
}

/// Compression redundancies of the machine's stationary process.
pub fn compression_redundancies(machine: &EpsilonMachine) -> Result<Redundancies> {
    let log_k = (machine.alphabet_size as f64).log2();
    let single = word_distribution(machine, 1)?;
    let h1 = crate::measures::entropy(&single, &crate::dist::IndexSet::single(0))?;
    let rate = entropy_rate_exact(machine)?;
    Ok(Redundancies {
        r1: log_k - h1,
        r_inf: log_k - rate,
    })
}

fn machine(names: &[&str], alphabet: usize, edges: &[(usize, usize, f64, usize)]) -> EpsilonMachine {
    EpsilonMachine::from_edges(
        names.iter().map(|s| s.to_string()).collect(),
        alphabet,
        edges,
    )
    .expect("built-in machine is valid")
}

/// Fair coin: one state emitting 0 and 1 with equal probability.
pub fn fair_coin() -> EpsilonMachine {
    machine(&["A"], 2, &[(0, 0, 0.5, 0), (0, 1, 0.5, 0)])
}

/// Even process: blocks of 1s bounded by 0s always have even length.
///
/// State A flips a fair coin between emitting 0 (stay) and starting a pair
/// of 1s; state B closes the pair deterministically.
pub fn even_process() -> EpsilonMachine {
    machine(
        &["A", "B"],
        2,
        &[(0, 0, 0.5, 0), (0, 1, 0.5, 1), (1, 1, 1.0, 0)],
    )
}

/// Golden mean family: no two consecutive 0s, with `p` the probability of
/// emitting 1 from the free state. `p = 1/2` is the classic golden mean
/// process.
pub fn golden_mean_family(p: f64) -> Result<EpsilonMachine> {
    if !p.is_finite() || !(0.0..1.0).contains(&p) || p == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "golden mean parameter {p} outside (0, 1)"
        )));
    }
    EpsilonMachine::from_edges(
        vec!["A".into(), "B".into()],
        2,
        &[(0, 1, p, 0), (0, 0, 1.0 - p, 1), (1, 1, 1.0, 0)],
    )
}

/// Noisy random phase-slip process.
///
/// A five-state clock: `A` emits 1, `B` emits 0, `C` flips a fair coin, `D`
/// emits 1, and `E` holds the phase with a fair self-loop on 1 before
/// emitting 0 to restart the cycle. The geometric dwell time in `E`
/// randomises the clock phase while the local word structure stays nearly
/// periodic, which gives the process an asymmetric split between what the
/// past and the future each say about the present.
pub fn noisy_random_phase_slip() -> EpsilonMachine {
    machine(
        &["A", "B", "C", "D", "E"],
        2,
        &[
            (0, 1, 1.0, 1),
            (1, 0, 1.0, 2),
            (2, 0, 0.5, 3),
            (2, 1, 0.5, 3),
            (3, 1, 1.0, 4),
            (4, 1, 0.5, 4),
            (4, 0, 0.5, 0),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::IndexSet;
    use crate::measures;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn validation_rejects_bad_machines() {
        let dup = EpsilonMachine::from_edges(
            vec!["A".into()],
            2,
            &[(0, 0, 0.5, 0), (0, 0, 0.5, 0)],
        );
        assert!(matches!(dup.unwrap_err(), Error::InvalidMachine(_)));

        let bad_sum =
            EpsilonMachine::from_edges(vec!["A".into()], 2, &[(0, 0, 0.25, 0), (0, 1, 0.25, 0)]);
        assert!(matches!(bad_sum.unwrap_err(), Error::InvalidMachine(_)));

        let disconnected = EpsilonMachine::from_edges(
            vec!["A".into(), "B".into()],
            2,
            &[
                (0, 0, 1.0, 0),
                (1, 1, 1.0, 1),
            ],
        );
        assert!(matches!(disconnected.unwrap_err(), Error::InvalidMachine(_)));

        let bad_prob =
            EpsilonMachine::from_edges(vec!["A".into()], 2, &[(0, 0, 1.5, 0), (0, 1, -0.5, 0)]);
        assert!(matches!(bad_prob.unwrap_err(), Error::InvalidMachine(_)));
    }

    #[test]
    fn even_process_stationary_distribution() {
        let pi = stationary_distribution(&even_process()).unwrap();
        close(pi.probability(0), 2.0 / 3.0, 1e-12);
        close(pi.probability(1), 1.0 / 3.0, 1e-12);
    }

    #[test]
    fn entropy_rates_of_library_machines() {
        close(entropy_rate_exact(&fair_coin()).unwrap(), 1.0, 1e-12);
        close(entropy_rate_exact(&even_process()).unwrap(), 2.0 / 3.0, 1e-12);
        close(
            entropy_rate_exact(&golden_mean_family(0.5).unwrap()).unwrap(),
            2.0 / 3.0,
            1e-12,
        );
    }

    #[test]
    fn golden_mean_pair_words_are_equal_thirds() {
        let d = word_distribution(&golden_mean_family(0.5).unwrap(), 2).unwrap();
        close(d.probability(&[0, 1]), 1.0 / 3.0, 1e-12);
        close(d.probability(&[1, 0]), 1.0 / 3.0, 1e-12);
        close(d.probability(&[1, 1]), 1.0 / 3.0, 1e-12);
        assert_eq!(d.probability(&[0, 0]), 0.0);
    }

    #[test]
    fn even_process_single_symbol_marginal() {
        let d = word_distribution(&even_process(), 1).unwrap();
        close(d.probability(&[0]), 1.0 / 3.0, 1e-12);
        close(d.probability(&[1]), 2.0 / 3.0, 1e-12);
    }

    #[test]
    fn even_process_forbids_odd_interior_one_blocks() {
        let d = word_distribution(&even_process(), 5).unwrap();
        // A lone interior block "010" or "01110" cannot occur.
        for word in [[0u8, 1, 0, 1, 0], [0, 1, 1, 1, 0]] {
            assert_eq!(d.probability(&word), 0.0, "word {word:?} should be forbidden");
        }
        // An even interior block can.
        assert!(d.probability(&[0, 1, 1, 0, 0]) > 0.0);
    }

    #[test]
    fn word_distributions_are_stationarity_consistent() {
        for m in [even_process(), golden_mean_family(0.5).unwrap()] {
            for len in 2..=6usize {
                let long = word_distribution(&m, len).unwrap();
                let short = word_distribution(&m, len - 1).unwrap();
                for window in [IndexSet::range(0..len - 1), IndexSet::range(1..len)] {
                    let margin = long.marginalize(&window).unwrap();
                    for (word, p) in short.iter() {
                        assert!(
                            (margin.probability(word) - p).abs() < 1e-12,
                            "window {:?} of length-{len} words disagrees at {word:?}",
                            window.indices()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn word_entropy_rate_approaches_exact_rate() {
        // The even process synchronizes slowly; its block entropy gain
        // carries a transient that halves roughly every two lengths, so a
        // tight comparison needs a reasonably long block.
        let m = even_process();
        let h11 = measures::entropy(
            &word_distribution(&m, 11).unwrap(),
            &IndexSet::range(0..11),
        )
        .unwrap();
        let h12 = measures::entropy(
            &word_distribution(&m, 12).unwrap(),
            &IndexSet::range(0..12),
        )
        .unwrap();
        let exact = entropy_rate_exact(&m).unwrap();
        let gap = h12 - h11 - exact;
        assert!(gap.abs() < 0.02, "entropy gain gap {gap} too large");
        assert!(gap > 0.0, "entropy gain must approach the rate from above");
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let m = golden_mean_family(0.5).unwrap();
        let a = sample_sequence(&m, 1000, 7).unwrap();
        let b = sample_sequence(&m, 1000, 7).unwrap();
        let c = sample_sequence(&m, 1000, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn golden_mean_samples_never_contain_double_zero() {
        let seq = sample_sequence(&golden_mean_family(0.5).unwrap(), 20_000, 42).unwrap();
        assert!(!seq.windows(2).any(|w| w == [0, 0]));
    }

    #[test]
    fn even_process_samples_have_even_interior_one_blocks() {
        let seq = sample_sequence(&even_process(), 20_000, 11).unwrap();
        let mut run = 0usize;
        let mut seen_zero = false;
        for &s in &seq {
            if s == 1 {
                run += 1;
            } else {
                if seen_zero {
                    assert_eq!(run % 2, 0, "interior block of {run} ones");
                }
                seen_zero = true;
                run = 0;
            }
        }
    }

    #[test]
    fn empirical_distribution_counts_windows() {
        let d = empirical_word_distribution(&[0, 0, 1, 0], 3).unwrap();
        close(d.probability(&[0, 0, 1]), 0.5, 1e-15);
        close(d.probability(&[0, 1, 0]), 0.5, 1e-15);
    }

    #[test]
    fn empirical_distribution_of_constant_sequence_is_unit_mass() {
        let d = empirical_word_distribution(&[1; 50], 3).unwrap();
        assert_eq!(d.support_len(), 1);
        close(d.probability(&[1, 1, 1]), 1.0, 1e-15);
    }

    #[test]
    fn empirical_entropies_approach_exact_word_entropies() {
        let m = golden_mean_family(0.5).unwrap();
        let seq = sample_sequence(&m, 200_000, 3).unwrap();
        for len in 1..=3usize {
            let exact = measures::entropy(
                &word_distribution(&m, len).unwrap(),
                &IndexSet::range(0..len),
            )
            .unwrap();
            let est = measures::entropy(
                &empirical_word_distribution(&seq, len).unwrap(),
                &IndexSet::range(0..len),
            )
            .unwrap();
            assert!((est - exact).abs() < 5e-3, "length {len}: {est} vs {exact}");
        }
    }

    #[test]
    fn phase_slip_stationary_and_rates() {
        let m = noisy_random_phase_slip();
        let pi = stationary_distribution(&m).unwrap();
        for s in 0..4 {
            close(pi.probability(s), 1.0 / 6.0, 1e-12);
        }
        close(pi.probability(4), 1.0 / 3.0, 1e-12);
        close(entropy_rate_exact(&m).unwrap(), 0.5, 1e-12);
        let d = word_distribution(&m, 1).unwrap();
        close(d.probability(&[1]), 7.0 / 12.0, 1e-12);
    }

    #[test]
    fn framed_words_carry_the_state_path() {
        // For the even process a single symbol plus its edge states is fully
        // deterministic: (A,0,A), (A,1,B), (B,1,A), each with mass 1/3.
        let d = framed_word_distribution(&even_process(), 1).unwrap();
        assert_eq!(d.support_len(), 3);
        close(d.probability(&[0, 0, 0]), 1.0 / 3.0, 1e-12);
        close(d.probability(&[0, 1, 1]), 1.0 / 3.0, 1e-12);
        close(d.probability(&[1, 1, 0]), 1.0 / 3.0, 1e-12);
    }

    #[test]
    fn framed_words_marginalise_to_plain_words() {
        for m in [even_process(), noisy_random_phase_slip()] {
            for len in 1..=4usize {
                let framed = framed_word_distribution(&m, len).unwrap();
                let plain = word_distribution(&m, len).unwrap();
                let inner = framed.marginalize(&IndexSet::range(1..len + 1)).unwrap();
                for (word, p) in plain.iter() {
                    close(inner.probability(word), p, 1e-12);
                }
            }
        }
    }

    #[test]
    fn compression_redundancies_of_even_process() {
        let r = compression_redundancies(&even_process()).unwrap();
        close(r.r1, 1.0 - (3f64.log2() - 2.0 / 3.0), 1e-12);
        close(r.r_inf, 1.0 - 2.0 / 3.0, 1e-12);
    }

    #[test]
    fn large_ring_uses_power_iteration() {
        // 80-state ring with a fair branch at every state over which
        // successor symbol is emitted; stationary distribution is uniform.
        let n = 80usize;
        let names: Vec<String> = (0..n).map(|i| format!("S{i}")).collect();
        let mut edges = Vec::new();
        for s in 0..n {
            edges.push((s, 0, 0.5, (s + 1) % n));
            edges.push((s, 1, 0.5, (s + 1) % n));
        }
        let m = EpsilonMachine::from_edges(names, 2, &edges).unwrap();
        let pi = stationary_distribution(&m).unwrap();
        for s in 0..n {
            close(pi.probability(s), 1.0 / n as f64, 1e-9);
        }
        close(entropy_rate_exact(&m).unwrap(), 1.0, 1e-9);
    }

    #[test]
    fn word_length_budget_is_enforced() {
        let err = word_distribution(&fair_coin(), 40).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }
}
