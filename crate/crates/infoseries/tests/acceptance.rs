//! Acceptance gate: nine criteria covering published-value reproduction,
//! exact identities, decomposition cross-checks, and sampling equivalence.
//! Each criterion is one test that prints a single `criterion N: PASS/FAIL`
//! line (visible with `--nocapture`) and fails the build on FAIL.

use std::time::Instant;

use infoseries::measures;
use infoseries::{
    anatomy, anatomy_pid_past, anatomy_pid_present, atom_measure, atom_weights, block_curve,
    coinformation_propositions_check, ee_decompositions, empirical_word_distribution,
    entropy_rate_exact, ephemeral_rate, even_process, excess_entropy, fair_coin,
    framed_word_distribution, golden_mean_family, noisy_random_phase_slip, pid_two_sources,
    sample_sequence, word_distribution, BlockMeasure, EpsilonMachine, IndexSet,
    JointDistribution, MeasureId,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Criterion {
    number: usize,
    checks: usize,
    failures: Vec<String>,
    started: Instant,
}

impl Criterion {
    fn new(number: usize) -> Self {
        Criterion {
            number,
            checks: 0,
            failures: Vec::new(),
            started: Instant::now(),
        }
    }

    fn close(&mut self, label: &str, actual: f64, expected: f64, tol: f64) {
        self.checks += 1;
        let deviation = (actual - expected).abs();
        if deviation.is_nan() || deviation > tol {
            self.failures
                .push(format!("{label}: {actual:.6} vs {expected:.6} (tol {tol:.0e})"));
        }
    }

    fn require(&mut self, label: &str, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push(label.to_string());
        }
    }

    fn budget(&mut self, seconds: f64) {
        let elapsed = self.started.elapsed().as_secs_f64();
        self.require(
            &format!("runtime {elapsed:.1}s exceeds {seconds:.0}s budget"),
            elapsed <= seconds,
        );
    }

    fn finish(self, detail: &str) {
        let elapsed = self.started.elapsed().as_secs_f64();
        if self.failures.is_empty() {
            println!(
                "criterion {}: PASS ({} checks, {:.2}s; {detail})",
                self.number, self.checks, elapsed
            );
        } else {
            println!(
                "criterion {}: FAIL ({} of {} checks; {})",
                self.number,
                self.failures.len(),
                self.checks,
                self.failures.join("; ")
            );
            panic!("criterion {} failed", self.number);
        }
    }
}

fn xor_triple() -> JointDistribution {
    JointDistribution::new(
        vec![2, 2, 2],
        [
            (vec![0u8, 0, 0], 0.25),
            (vec![0, 1, 1], 0.25),
            (vec![1, 0, 1], 0.25),
            (vec![1, 1, 0], 0.25),
        ],
    )
    .unwrap()
}

fn bundled_machines() -> Vec<(&'static str, EpsilonMachine)> {
    vec![
        ("coin", fair_coin()),
        ("even", even_process()),
        ("golden-mean", golden_mean_family(0.5).unwrap()),
        ("nrps", noisy_random_phase_slip()),
    ]
}

#[test]
fn criterion_1_single_symbol_anatomy_tables() {
    let mut c = Criterion::new(1);
    let cases = [
        (
            "even",
            even_process(),
            // H[1], h_mu, rho_mu, r_mu, b_mu, q_mu, w_mu, sigma_mu
            [0.91830, 0.66667, 0.25163, 0.0, 0.66667, -0.41504, 0.91830, 0.66667],
            // redundancy, iota, synergy
            [0.25163, 0.0, 0.66667],
        ),
        (
            "golden-mean",
            golden_mean_family(0.5).unwrap(),
            [0.91830, 0.66667, 0.25163, 0.45915, 0.20752, 0.04411, 0.45915, 0.0],
            [0.25163, 0.0, 0.20752],
        ),
    ];
    for (name, machine, rates, pid_atoms) in cases {
        let parts = anatomy(&machine, 8).unwrap();
        let got = [
            parts.h1,
            parts.h_mu,
            parts.rho_mu,
            parts.r_mu,
            parts.b_mu,
            parts.q_mu,
            parts.w_mu,
            parts.sigma_mu,
        ];
        let labels = ["H[1]", "h_mu", "rho_mu", "r_mu", "b_mu", "q_mu", "w_mu", "sigma_mu"];
        for ((label, actual), expected) in labels.iter().zip(got).zip(rates) {
            c.close(&format!("{name} {label}"), actual, expected, 1e-3);
        }
        let pid = anatomy_pid_present(&machine, 8).unwrap();
        c.close(
            &format!("{name} redundancy"),
            pid.decomposition.redundancy,
            pid_atoms[0],
            1e-3,
        );
        c.close(&format!("{name} iota"), pid.iota, pid_atoms[1], 1e-3);
        c.close(
            &format!("{name} synergy"),
            pid.decomposition.synergy,
            pid_atoms[2],
            1e-3,
        );
    }
    c.budget(10.0);
    c.finish("table of single-symbol rates, window 8, block cap 16");
}

#[test]
fn criterion_2_excess_entropy_decomposition_tables() {
    let mut c = Criterion::new(2);
    let cases = [
        (
            "even",
            even_process(),
            // E, then E_R, E_B, E_Q, E_W
            0.91830,
            [4.48470, -3.56640, 2.64810, -4.48470],
            // past decomposition: redundancy, unique present, unique future, synergy
            [0.25163, 0.0, 0.0, 0.66667],
        ),
        (
            "golden-mean",
            golden_mean_family(0.5).unwrap(),
            0.25163,
            [0.41504, -0.16341, -0.08822, -0.41504],
            [0.04411, 0.20752, 0.0, 0.0],
        ),
    ];
    let mut residuals = String::new();
    for (name, machine, e, subextensive, past_atoms) in cases {
        let parts = anatomy(&machine, 8).unwrap();
        c.close(&format!("{name} E"), parts.excess_entropy, e, 1e-3);
        c.close(&format!("{name} b_mu"), parts.b_mu, parts.h_mu - parts.r_mu, 1e-9);
        c.close(
            &format!("{name} sigma_mu"),
            parts.sigma_mu,
            parts.excess_entropy - parts.rho_mu,
            1e-9,
        );
        let decomp = ee_decompositions(&machine, 14, 8).unwrap();
        let fits = [
            ("E_R", &decomp.residual),
            ("E_B", &decomp.binding),
            ("E_Q", &decomp.enigmatic),
            ("E_W", &decomp.exogenous),
        ];
        for ((label, fit), expected) in fits.iter().zip(subextensive) {
            c.close(&format!("{name} {label}"), fit.subextensive, expected, 2e-2);
            residuals.push_str(&format!(" {name} {label} residual {:.1e}", fit.residual));
        }
        let past = anatomy_pid_past(&machine, 8).unwrap();
        let atoms = [
            past.decomposition.redundancy,
            past.decomposition.unique_first,
            past.decomposition.unique_second,
            past.decomposition.synergy,
        ];
        let labels = ["redundancy", "unique present", "unique future", "synergy"];
        for ((label, actual), expected) in labels.iter().zip(atoms).zip(past_atoms) {
            c.close(&format!("{name} past {label}"), actual, expected, 2e-3);
        }
    }
    c.budget(60.0);
    c.finish(&format!("subextensive fits at block length 14;{residuals}"));
}

#[test]
fn criterion_3_phase_slip_columns() {
    let mut c = Criterion::new(3);
    let machine = noisy_random_phase_slip();
    let parts = anatomy(&machine, 8).unwrap();

    // Gate: the reconstructed machine is accepted only if the two anchor
    // values hold tightly; everything else is checked only past the gate.
    let gate_h1 = (parts.h1 - 0.97987).abs() <= 1e-4;
    let gate_rate = (parts.h_mu - 0.50000).abs() <= 1e-4;
    c.require("gate H[1] = 0.97987 within 1e-4", gate_h1);
    c.require("gate h_mu = 0.50000 within 1e-4", gate_rate);
    if gate_h1 && gate_rate {
        let tol = 2e-3;
        c.close("rho_mu", parts.rho_mu, 0.47987, tol);
        c.close("r_mu", parts.r_mu, 0.16667, tol);
        c.close("b_mu", parts.b_mu, 0.33333, tol);
        c.close("q_mu", parts.q_mu, 0.14654, tol);
        c.close("w_mu", parts.w_mu, 0.81320, tol);
        c.close("sigma_mu", parts.sigma_mu, 1.09407, tol);
        c.close("E", parts.excess_entropy, 1.57393, tol);

        let present = anatomy_pid_present(&machine, 8).unwrap();
        c.close("present redundancy", present.decomposition.redundancy, 0.45550, tol);
        c.close("present iota", present.iota, 0.02437, tol);
        c.close("present synergy", present.decomposition.synergy, 0.30896, tol);

        let decomp = ee_decompositions(&machine, 14, 8).unwrap();
        c.close("E_R", decomp.residual.subextensive, 1.55445, tol);
        c.close("E_B", decomp.binding.subextensive, 0.01948, tol);
        c.close("E_Q", decomp.enigmatic.subextensive, -1.59342, tol);
        c.close("E_W", decomp.exogenous.subextensive, -1.55445, tol);

        let past = anatomy_pid_past(&machine, 8).unwrap();
        c.close("past redundancy", past.decomposition.redundancy, 0.47987, tol);
        c.close("past unique present", past.decomposition.unique_first, 0.0, tol);
        c.close("past unique future", past.decomposition.unique_second, 0.76073, tol);
        c.close("past synergy", past.decomposition.synergy, 0.33333, tol);
    }
    c.finish("five-state reconstruction anchored on H[1] and h_mu");
}

#[test]
fn criterion_4_identity_suite() {
    let mut c = Criterion::new(4);
    let tol = 1e-10;
    for (name, machine) in bundled_machines() {
        let len = 10;
        let h = block_curve(&machine, BlockMeasure::Entropy, len).unwrap();
        let t = block_curve(&machine, BlockMeasure::TotalCorrelation, len).unwrap();
        let b = block_curve(&machine, BlockMeasure::Binding, len).unwrap();
        let r = block_curve(&machine, BlockMeasure::Residual, len).unwrap();
        let w = block_curve(&machine, BlockMeasure::LocalExogenous, len).unwrap();
        let q = block_curve(&machine, BlockMeasure::Enigmatic, len).unwrap();
        let h1 = h.value(1);
        for l in 1..=len {
            let lf = l as f64;
            c.close(&format!("{name} H+T at {l}"), h.value(l) + t.value(l), lf * h1, tol);
            c.close(&format!("{name} R+W at {l}"), r.value(l) + w.value(l), lf * h1, tol);
            c.close(&format!("{name} B+R at {l}"), b.value(l) + r.value(l), h.value(l), tol);
            c.close(&format!("{name} B+Q at {l}"), b.value(l) + q.value(l), t.value(l), tol);
            c.close(&format!("{name} B+T at {l}"), b.value(l) + t.value(l), w.value(l), tol);
        }
        // The two excess-entropy summation routes must agree term by term.
        let ee = excess_entropy(&machine, len).unwrap();
        c.require(&format!("{name} termwise gain/redundancy match"), ee.termwise_match);
    }
    c.finish("five curve identities and the termwise sum match, lengths 1..=10");
}

#[test]
fn criterion_5_coinformation_propositions() {
    let mut c = Criterion::new(5);
    // Co-information is the expensive sweep: every subset of the block's
    // variables enters the alternating sum, so length 12 visits 2^12 - 1
    // subsets per machine.
    for (name, machine) in [
        ("even", even_process()),
        ("golden-mean", golden_mean_family(0.5).unwrap()),
        ("nrps", noisy_random_phase_slip()),
    ] {
        let check = coinformation_propositions_check(&machine, 12).unwrap();
        for l in 11..=12 {
            c.require(
                &format!("{name} |I({l})| = {:.4} < 1e-2", check.curve.value(l)),
                check.curve.value(l).abs() < 1e-2,
            );
        }
        c.require(
            &format!("{name} fitted rate {:.5} < 1e-3", check.rate),
            check.rate_vanishes,
        );
        c.require(
            &format!("{name} fitted limit {:.4} < 1e-2", check.subextensive),
            check.limit_vanishes,
        );
    }
    c.budget(120.0);
    c.finish("co-information dies out in value, rate, and limit at length 12");
}

#[test]
fn criterion_6_parity_block_exactness() {
    let mut c = Criterion::new(6);
    let d = xor_triple();
    let tol = 1e-12;
    let x = IndexSet::single(0);
    let y = IndexSet::single(1);
    let z = IndexSet::single(2);
    let xy = IndexSet::new([0, 1]).unwrap();
    c.close(
        "I[X;Y]",
        measures::mutual_information(&d, &x, &y).unwrap(),
        0.0,
        tol,
    );
    c.close(
        "I[X;Y|Z]",
        measures::conditional_mutual_information(&d, &x, &y, &z).unwrap(),
        1.0,
        tol,
    );
    c.close(
        "I[X,Y;Z]",
        measures::mutual_information(&d, &xy, &z).unwrap(),
        1.0,
        tol,
    );
    c.close("T", measures::total_correlation(&d).unwrap(), 1.0, tol);
    c.close("B", measures::binding_information(&d).unwrap(), 2.0, tol);
    c.close("R", measures::residual_entropy(&d).unwrap(), 0.0, tol);
    c.close("W", measures::local_exogenous_information(&d).unwrap(), 3.0, tol);
    c.close("Q", measures::enigmatic_information(&d).unwrap(), -1.0, tol);
    c.close("co-information", measures::co_information(&d).unwrap(), -1.0, tol);
    let pid = pid_two_sources(&d, &z, &x, &y).unwrap();
    c.close("PID redundancy", pid.redundancy, 0.0, tol);
    c.close("PID unique first", pid.unique_first, 0.0, tol);
    c.close("PID unique second", pid.unique_second, 0.0, tol);
    c.close("PID synergy", pid.synergy, 1.0, tol);
    c.finish("parity block: measures and decomposition exact");
}

#[test]
fn criterion_7_atom_weight_suite() {
    let mut c = Criterion::new(7);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let measure_of = |id: MeasureId, d: &JointDistribution| -> f64 {
        match id {
            MeasureId::JointEntropy => {
                measures::entropy(d, &IndexSet::range(0..d.variable_count())).unwrap()
            }
            MeasureId::TotalCorrelation => measures::total_correlation(d).unwrap(),
            MeasureId::BindingInformation => measures::binding_information(d).unwrap(),
            MeasureId::ResidualEntropy => measures::residual_entropy(d).unwrap(),
            MeasureId::LocalExogenous => measures::local_exogenous_information(d).unwrap(),
            MeasureId::Enigmatic => measures::enigmatic_information(d).unwrap(),
            MeasureId::CoInformation => measures::co_information(d).unwrap(),
        }
    };
    let all = [
        MeasureId::JointEntropy,
        MeasureId::TotalCorrelation,
        MeasureId::BindingInformation,
        MeasureId::ResidualEntropy,
        MeasureId::LocalExogenous,
        MeasureId::Enigmatic,
        MeasureId::CoInformation,
    ];
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let n: usize = 2 + i % 3;
        let alphabet: usize = if n == 4 { 2 } else { 2 + i % 2 };
        let cells = alphabet.pow(n as u32);
        let weights: Vec<f64> = (0..cells).map(|_| rng.random_range(0.01..1.0)).collect();
        let total: f64 = weights.iter().sum();
        let entries = weights.iter().enumerate().map(|(index, w)| {
            let mut outcome = Vec::with_capacity(n);
            let mut rest = index;
            for _ in 0..n {
                outcome.push((rest % alphabet) as u8);
                rest /= alphabet;
            }
            (outcome, w / total)
        });
        let d = JointDistribution::new(vec![alphabet; n], entries).unwrap();
        let atoms = atom_measure(&d).unwrap();
        for id in all {
            let direct = measure_of(id, &d);
            let from_atoms = atom_weights(id, n).unwrap().evaluate(&atoms).unwrap();
            worst = worst.max((direct - from_atoms).abs());
            c.close(&format!("dist {i} {id:?}"), from_atoms, direct, 1e-9);
        }
    }
    let central = atom_weights(MeasureId::TotalCorrelation, 4).unwrap().weight(0b1111);
    c.require(
        &format!("4-variable total-correlation central atom weight {central} = 3"),
        central == 3,
    );
    c.finish(&format!(
        "atom sums reproduce all seven measures on 100 random distributions; \
         worst deviation {worst:.1e}"
    ));
}

#[test]
fn criterion_8_sampling_oracle_equivalence() {
    let mut c = Criterion::new(8);
    let seed = 20260819;
    for (name, machine) in bundled_machines() {
        let sequence = sample_sequence(&machine, 1_000_000, seed).unwrap();
        for len in 1..=6 {
            let empirical = empirical_word_distribution(&sequence, len).unwrap();
            let vars = IndexSet::range(0..len);
            let h_empirical = measures::entropy(&empirical, &vars).unwrap();
            let exact = word_distribution(&machine, len).unwrap();
            let h_exact = measures::entropy(&exact, &vars).unwrap();
            c.close(&format!("{name} H({len})"), h_empirical, h_exact, 5e-3);
        }
    }
    c.finish("block entropies from a million-symbol sample, fixed seed");
}

#[test]
fn criterion_9_golden_mean_rate_sweep() {
    let mut c = Criterion::new(9);
    let window = 6;
    let mut split = Vec::new();
    for i in 1..=19 {
        let p = i as f64 * 0.05;
        let machine = golden_mean_family(p).unwrap();
        let h_mu = entropy_rate_exact(&machine).unwrap();
        let r_mu = ephemeral_rate(&machine, window).unwrap();
        // Bound rate from an independent conditional mutual information so
        // the identity below is a computation check, not algebra.
        let framed = framed_word_distribution(&machine, window + 1).unwrap();
        let total = framed.variable_count();
        let b_mu = measures::conditional_mutual_information(
            &framed,
            &IndexSet::single(1),
            &IndexSet::range(2..total),
            &IndexSet::single(0),
        )
        .unwrap();
        c.close(&format!("rate split at p={p:.2}"), r_mu + b_mu, h_mu, 1e-9);
        split.push((p, r_mu, b_mu));
    }
    let (_, r_low, b_low) = split[1];
    c.require(
        &format!("b_mu {b_low:.4} > r_mu {r_low:.4} at p=0.1"),
        b_low > r_low,
    );
    let (_, r_high, b_high) = split[17];
    c.require(
        &format!("r_mu {r_high:.4} > b_mu {b_high:.4} at p=0.9"),
        r_high > b_high,
    );
    c.finish("rate split closes to 1e-9 across the parameter grid");
}
