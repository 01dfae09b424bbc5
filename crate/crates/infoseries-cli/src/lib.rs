//! Machine-description file format and small parsing helpers shared by the
//! `infoseries` binary and its tests.
//!
//! A machine file is line-oriented plain text:
//!
//! ```text
//! # comment
//! alphabet 2
//! states A B
//! edge A 0 1/2 A
//! edge A 1 1/2 B
//! edge B 1 1 A
//! ```
//!
//! `alphabet` fixes the symbol range, `states` names the states, and each
//! `edge FROM SYMBOL PROB TO` line adds one labelled transition, with the
//! probability given as a decimal or a fraction. The `alphabet` and `states`
//! lines must precede the edges that depend on them.

use infoseries::EpsilonMachine;

/// Parse failure with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct MachineFileError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, MachineFileError> {
    Err(MachineFileError {
        line,
        message: message.into(),
    })
}

fn parse_probability(token: &str) -> Option<f64> {
    if let Some((numer, denom)) = token.split_once('/') {
        let numer: f64 = numer.parse().ok()?;
        let denom: f64 = denom.parse().ok()?;
        if denom <= 0.0 {
            return None;
        }
        Some(numer / denom)
    } else {
        token.parse().ok()
    }
}

/// Parse a machine description, reporting the offending line on failure.
pub fn parse_machine(text: &str) -> Result<EpsilonMachine, MachineFileError> {
    let mut alphabet: Option<usize> = None;
    let mut names: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize, f64, usize)> = Vec::new();
    let mut seen: Vec<(usize, usize)> = Vec::new();

    for (number, raw) in text.lines().enumerate() {
        let number = number + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().expect("nonempty line has a first token");
        match keyword {
            "alphabet" => {
                if alphabet.is_some() {
                    return fail(number, "alphabet declared twice");
                }
                let Some(k) = tokens.next().and_then(|t| t.parse::<usize>().ok()) else {
                    return fail(number, "expected `alphabet <size>`");
                };
                if k == 0 {
                    return fail(number, "alphabet size must be positive");
                }
                alphabet = Some(k);
            }
            "states" => {
                if !names.is_empty() {
                    return fail(number, "states declared twice");
                }
                names = tokens.map(str::to_string).collect();
                if names.is_empty() {
                    return fail(number, "expected `states <name> [<name>...]`");
                }
            }
            "edge" => {
                let Some(k) = alphabet else {
                    return fail(number, "edge before alphabet declaration");
                };
                if names.is_empty() {
                    return fail(number, "edge before states declaration");
                }
                let fields: Vec<&str> = tokens.collect();
                let [from_name, symbol, prob, to_name] = fields[..] else {
                    return fail(number, "expected `edge <from> <symbol> <prob> <to>`");
                };
                let Some(from) = names.iter().position(|n| n == from_name) else {
                    return fail(number, format!("unknown state `{from_name}`"));
                };
                let Some(to) = names.iter().position(|n| n == to_name) else {
                    return fail(number, format!("unknown state `{to_name}`"));
                };
                let Some(symbol) = symbol.parse::<usize>().ok().filter(|&s| s < k) else {
                    return fail(number, format!("symbol must be an integer in 0..{k}"));
                };
                let Some(p) = parse_probability(prob).filter(|p| (0.0..=1.0).contains(p))
                else {
                    return fail(
                        number,
                        "probability must be a decimal or fraction in [0, 1]",
                    );
                };
                if seen.contains(&(from, symbol)) {
                    return fail(
                        number,
                        format!("state `{from_name}` already has an edge for symbol {symbol}"),
                    );
                }
                seen.push((from, symbol));
                edges.push((from, symbol, p, to));
            }
            other => {
                return fail(number, format!("unknown keyword `{other}`"));
            }
        }
    }

    let Some(alphabet) = alphabet else {
        return fail(0, "missing alphabet declaration");
    };
    if names.is_empty() {
        return fail(0, "missing states declaration");
    }
    if edges.is_empty() {
        return fail(0, "machine has no edges");
    }
    EpsilonMachine::from_edges(names, alphabet, &edges)
        .map_err(|e| MachineFileError {
            line: 0,
            message: e.to_string(),
        })
}

/// Serialize a machine back to the file format; `parse_machine` of the
/// result reproduces the machine.
pub fn serialize_machine(machine: &EpsilonMachine) -> String {
    let mut out = String::new();
    out.push_str(&format!("alphabet {}\n", machine.alphabet_size()));
    out.push_str("states");
    for name in machine.state_names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for state in 0..machine.state_count() {
        for symbol in 0..machine.alphabet_size() {
            if let Some((p, to)) = machine.transition(state, symbol) {
                out.push_str(&format!(
                    "edge {} {} {} {}\n",
                    machine.state_names()[state],
                    symbol,
                    p,
                    machine.state_names()[to],
                ));
            }
        }
    }
    out
}

/// Parse a `start:end:step` grid over a parameter interval.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, end, step] = parts[..] else {
        return Err("expected `start:end:step`".into());
    };
    let parse = |t: &str| -> Result<f64, String> {
        t.parse::<f64>().map_err(|_| format!("`{t}` is not a number"))
    };
    let (start, end, step) = (parse(start)?, parse(end)?, parse(step)?);
    if step.is_nan() || step <= 0.0 {
        return Err("grid step must be positive".into());
    }
    if !(start > 0.0 && end < 1.0 && start <= end) {
        return Err("grid must lie inside (0, 1) with start <= end".into());
    }
    let count = ((end - start) / step + 0.5).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

/// Character used to print a symbol, one character per symbol.
pub fn symbol_char(symbol: u8) -> Option<char> {
    let table = b"0123456789abcdefghijklmnopqrstuvwxyz";
    table.get(symbol as usize).map(|&b| b as char)
}
