//! Command-line reports for the information anatomy of stationary symbolic
//! processes: per-symbol rate decompositions, block curves, excess-entropy
//! decompositions, parameter sweeps, and seeded sample paths.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use infoseries::{
    anatomy_capped, anatomy_pid_past, anatomy_pid_present, block_curve, ee_decompositions,
    entropy_rate_exact, even_process, fair_coin, framed_word_distribution, golden_mean_family,
    measures, noisy_random_phase_slip, sample_sequence, BlockMeasure, EpsilonMachine, IndexSet,
};
use infoseries_cli::{parse_grid, parse_machine, symbol_char, MachineFileError};

/// The sweep's rate-split identity must close to this tolerance.
const SWEEP_RESIDUAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    File(#[from] MachineFileError),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Analysis(infoseries::Error),
    #[error("{0}")]
    NotConverged(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<infoseries::Error> for CliError {
    fn from(err: infoseries::Error) -> Self {
        CliError::Analysis(err)
    }
}

impl CliError {
    /// 1 for input problems, 2 for budgets and non-convergence.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::NotConverged(_) => 2,
            CliError::Analysis(
                infoseries::Error::ResourceLimit(_) | infoseries::Error::NonConvergence(_),
            ) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "infoseries",
    version,
    about = "Information anatomy of stationary symbolic processes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MachineSource {
    /// Machine description file (alphabet/states/edge lines).
    #[arg(
        value_name = "MACHINE_FILE",
        required_unless_present = "process",
        conflicts_with = "process"
    )]
    file: Option<PathBuf>,
    /// Built-in process instead of a file: even, golden-mean, nrps, or coin.
    #[arg(long, value_name = "NAME")]
    process: Option<String>,
}

impl MachineSource {
    fn load(&self) -> Result<(EpsilonMachine, String), CliError> {
        if let Some(name) = &self.process {
            let machine = match name.as_str() {
                "even" => even_process(),
                "golden-mean" => golden_mean_family(0.5)?,
                "nrps" => noisy_random_phase_slip(),
                "coin" => fair_coin(),
                other => {
                    return Err(CliError::Input(format!(
                        "unknown process `{other}`; expected even, golden-mean, nrps, or coin"
                    )))
                }
            };
            Ok((machine, name.clone()))
        } else {
            let path = self.file.as_ref().expect("clap requires file or process");
            let text = std::fs::read_to_string(path)?;
            let machine = parse_machine(&text)?;
            Ok((machine, path.display().to_string()))
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Per-symbol anatomy: entropy-rate split, excess entropy, and the
    /// present-symbol information decomposition.
    Analyze {
        #[command(flatten)]
        source: MachineSource,
        /// Two-sided conditioning window.
        #[arg(long, default_value_t = 8)]
        window: usize,
        /// Block-length cap for the excess-entropy sums.
        #[arg(long, default_value_t = 16)]
        max_block: usize,
        /// Decimal places in the report.
        #[arg(long, default_value_t = 5)]
        precision: usize,
    },
    /// Block curves of selected measures as CSV on standard output.
    Curves {
        #[command(flatten)]
        source: MachineSource,
        /// Comma-separated measure letters out of H,T,B,R,W,Q,I.
        #[arg(long, default_value = "H,T,B,R,W,Q,I")]
        measures: String,
        /// Largest block length.
        #[arg(long, default_value_t = 12)]
        max_block: usize,
        /// Decimal places in the CSV values.
        #[arg(long, default_value_t = 6)]
        precision: usize,
    },
    /// Excess-entropy decompositions: four curve fits, their
    /// recombinations, and the past-centric information split.
    Ee {
        #[command(flatten)]
        source: MachineSource,
        /// Block length the subextensive parts are fitted at.
        #[arg(long, default_value_t = 14)]
        max_block: usize,
        /// Two-sided conditioning window for the rates.
        #[arg(long, default_value_t = 8)]
        window: usize,
        /// Decimal places in the report.
        #[arg(long, default_value_t = 5)]
        precision: usize,
    },
    /// Sweep a process family over a parameter grid; CSV on standard output.
    Sweep {
        /// Process family to sweep.
        #[arg(long, default_value = "golden-mean")]
        family: String,
        /// Parameter grid start:end:step inside (0, 1).
        #[arg(long, default_value = "0.05:0.95:0.05")]
        param_grid: String,
        /// Two-sided conditioning window for the rate split.
        #[arg(long, default_value_t = 6)]
        window: usize,
        /// Decimal places in the CSV values.
        #[arg(long, default_value_t = 6)]
        precision: usize,
    },
    /// Emit a seeded sample path, one character per symbol, 80 per line.
    Sample {
        #[command(flatten)]
        source: MachineSource,
        /// Number of symbols to emit.
        #[arg(long)]
        length: usize,
        /// RNG seed; equal seeds give equal output.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze {
            source,
            window,
            max_block,
            precision,
        } => analyze(&source, window, max_block, precision),
        Command::Curves {
            source,
            measures,
            max_block,
            precision,
        } => curves(&source, &measures, max_block, precision),
        Command::Ee {
            source,
            max_block,
            window,
            precision,
        } => ee(&source, max_block, window, precision),
        Command::Sweep {
            family,
            param_grid,
            window,
            precision,
        } => sweep(&family, &param_grid, window, precision),
        Command::Sample {
            source,
            length,
            seed,
        } => sample(&source, length, seed),
    }
}

fn row(label: &str, value: f64, precision: usize) {
    let mut shown = format!("{value:.precision$}");
    if shown.starts_with('-') && shown[1..].chars().all(|c| c == '0' || c == '.') {
        shown.remove(0);
    }
    println!("{label:<16} {shown:>12}");
}

fn analyze(
    source: &MachineSource,
    window: usize,
    max_block: usize,
    precision: usize,
) -> Result<(), CliError> {
    let (machine, name) = source.load()?;
    let parts = anatomy_capped(&machine, window, max_block)?;
    let pid = anatomy_pid_present(&machine, window)?;

    println!(
        "process          {name} ({} states, alphabet {})",
        machine.state_count(),
        machine.alphabet_size()
    );
    println!("window           {window}");
    println!("block cap        {max_block}");
    println!();
    row("H[1]", parts.h1, precision);
    row("h_mu", parts.h_mu, precision);
    row("rho_mu", parts.rho_mu, precision);
    row("r_mu", parts.r_mu, precision);
    row("b_mu", parts.b_mu, precision);
    row("q_mu", parts.q_mu, precision);
    row("w_mu", parts.w_mu, precision);
    row("sigma_mu", parts.sigma_mu, precision);
    row("E", parts.excess_entropy, precision);
    row("i1", parts.i1, precision);
    row("R1", parts.r1, precision);
    row("R_inf", parts.r_inf, precision);
    println!();
    println!("present-symbol decomposition (sources: past, future)");
    row("redundancy", pid.decomposition.redundancy, precision);
    row("unique_past", pid.decomposition.unique_first, precision);
    row("unique_future", pid.decomposition.unique_second, precision);
    row("iota", pid.iota, precision);
    row("synergy", pid.decomposition.synergy, precision);
    println!();
    println!("diagnostics");
    row("r_mu[w-1]", parts.diagnostics.r_mu_prev_window, precision);
    println!(
        "{:<16} {:>12.3e}",
        "r_mu delta", parts.diagnostics.r_mu_delta
    );
    row("r_mu one-sided", parts.diagnostics.r_mu_one_sided, precision);
    if let Some(symbols_only) = parts.diagnostics.r_mu_symbols_only {
        row("r_mu symbols", symbols_only, precision);
    }
    let excess = &parts.diagnostics.excess;
    row("E partial sum", excess.partial_sum, precision);
    println!(
        "{:<16} {:>12.3e}",
        "E tail", excess.tail_correction
    );
    row("E bidirectional", excess.bidirectional, precision);
    println!(
        "pid consistency  {}",
        if pid.consistent { "ok" } else { "loose" }
    );

    if !parts.diagnostics.window_converged {
        return Err(CliError::NotConverged(format!(
            "r_mu still moved by {:.3e} when the window grew to {window}; \
             widen --window",
            parts.diagnostics.r_mu_delta
        )));
    }
    Ok(())
}

fn curves(
    source: &MachineSource,
    measures: &str,
    max_block: usize,
    precision: usize,
) -> Result<(), CliError> {
    let (machine, _) = source.load()?;
    let selected: Vec<BlockMeasure> = measures
        .split(',')
        .map(|token| token.trim().parse::<BlockMeasure>())
        .collect::<Result<_, _>>()?;
    if selected.is_empty() {
        return Err(CliError::Input("no measures selected".into()));
    }
    let curves: Vec<_> = selected
        .iter()
        .map(|&m| block_curve(&machine, m, max_block))
        .collect::<Result<_, _>>()?;

    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let header: Vec<String> = selected.iter().map(|m| m.letter().to_string()).collect();
    writeln!(out, "l,{}", header.join(","))?;
    for len in 0..=max_block {
        let cells: Vec<String> = curves
            .iter()
            .map(|c| format!("{:.precision$}", c.value(len)))
            .collect();
        writeln!(out, "{len},{}", cells.join(","))?;
    }
    Ok(())
}

fn ee(
    source: &MachineSource,
    max_block: usize,
    window: usize,
    precision: usize,
) -> Result<(), CliError> {
    let (machine, name) = source.load()?;
    let decomp = ee_decompositions(&machine, max_block, window)?;
    let past = anatomy_pid_past(&machine, window)?;
    let parts = anatomy_capped(&machine, window, max_block.max(8))?;

    println!("process          {name}");
    println!("block length     {max_block}");
    println!("window           {window}");
    println!();
    row("E", decomp.excess_entropy, precision);
    row("b_mu", parts.b_mu, precision);
    row("q_mu", parts.q_mu, precision);
    row("sigma_mu", parts.sigma_mu, precision);
    println!();
    println!("subextensive parts (residual = fit stability)");
    for (label, fit) in [
        ("E_R", &decomp.residual),
        ("E_B", &decomp.binding),
        ("E_Q", &decomp.enigmatic),
        ("E_W", &decomp.exogenous),
    ] {
        println!(
            "{label:<16} {:>12.precision$}   residual {:.3e}",
            fit.subextensive, fit.residual
        );
    }
    println!();
    println!("recombinations (each should equal E)");
    row("E_B+E_R", decomp.recombinations[0], precision);
    row("-E_B-E_Q", decomp.recombinations[1], precision);
    row("(E_R-E_Q)/2", decomp.recombinations[2], precision);
    row("-(E_W+E_Q)/2", decomp.recombinations[3], precision);
    row("b+q+sigma", decomp.anatomy_sum, precision);
    println!();
    println!("past decomposition (sources: present, future)");
    row("redundancy", past.decomposition.redundancy, precision);
    row("unique_present", past.decomposition.unique_first, precision);
    row("unique_future", past.decomposition.unique_second, precision);
    row("synergy", past.decomposition.synergy, precision);
    row("total", past.decomposition.total, precision);

    if !decomp.consistent {
        return Err(CliError::NotConverged(format!(
            "a recombination missed the excess entropy by more than {:.0e}; \
             raise --max-block",
            decomp.fit_tolerance
        )));
    }
    Ok(())
}

fn sweep(
    family: &str,
    param_grid: &str,
    window: usize,
    precision: usize,
) -> Result<(), CliError> {
    if family != "golden-mean" {
        return Err(CliError::Input(format!(
            "unknown family `{family}`; only golden-mean is parametric"
        )));
    }
    if window == 0 {
        return Err(CliError::Input("sweep window must be at least one".into()));
    }
    let grid = parse_grid(param_grid).map_err(CliError::Input)?;

    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    writeln!(out, "p,h_mu,r_mu,b_mu,residual")?;
    let mut worst: f64 = 0.0;
    for p in grid {
        let machine = golden_mean_family(p)?;
        let h_mu = entropy_rate_exact(&machine)?;
        // The ephemeral and bound rates come from independent framed-window
        // computations, so the residual column reports a genuine identity
        // check rather than an algebraic zero.
        let framed = framed_word_distribution(&machine, window + 1)?;
        let total = framed.variable_count();
        let present = IndexSet::single(1);
        let past = IndexSet::single(0);
        let future = IndexSet::range(2..total);
        let r_mu =
            measures::conditional_entropy(&framed, &present, &past.union(&future)?)?;
        let b_mu = measures::conditional_mutual_information(&framed, &present, &future, &past)?;
        let residual = (r_mu + b_mu - h_mu).abs();
        worst = worst.max(residual);
        writeln!(
            out,
            "{p:.precision$},{h_mu:.precision$},{r_mu:.precision$},{b_mu:.precision$},{residual:.3e}"
        )?;
    }
    out.flush()?;
    if worst >= SWEEP_RESIDUAL_TOLERANCE {
        return Err(CliError::NotConverged(format!(
            "rate-split residual reached {worst:.3e}"
        )));
    }
    Ok(())
}

fn sample(source: &MachineSource, length: usize, seed: u64) -> Result<(), CliError> {
    let (machine, _) = source.load()?;
    if machine.alphabet_size() > 36 {
        return Err(CliError::Input(
            "sample output is one character per symbol; alphabet too large".into(),
        ));
    }
    let symbols = sample_sequence(&machine, length, seed)?;
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    for chunk in symbols.chunks(80) {
        let line: String = chunk
            .iter()
            .map(|&s| symbol_char(s).expect("alphabet checked above"))
            .collect();
        writeln!(out, "{line}")?;
    }
    Ok(())
}
