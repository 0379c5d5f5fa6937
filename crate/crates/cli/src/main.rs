//! `kmin`: minimize and inspect deterministic Kripke structures.
//!
//! Exit codes: 0 on success, 1 when a query's verdict is negative (for now
//! only `equiv` on inequivalent inputs), 2 on usage, parse or validation
//! errors. Structures travel in the `.kts` text format; every command that
//! emits a structure emits the canonical serialization, so identical
//! invocations produce byte-identical output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kmin_core::{
    canonical_form, export_dot, gen_random, gen_redundant, is_minimal, language_equivalent,
    minimize, parse_kts, run_bench, serialize_kts, trim_unreachable, validate,
    EquivalenceVerdict, GenSpec, KripkeStructure, Strictness,
};

#[derive(Parser)]
#[command(name = "kmin", version, about = "Minimize and inspect deterministic Kripke structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize a structure and write its canonical form
    Minimize {
        /// Input .kts file
        input: PathBuf,
        /// Write the result here instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print a one-line JSON record of the refinement counters
        /// (to standard output with -o, to standard error otherwise)
        #[arg(long)]
        stats: bool,
    },
    /// Decide language equivalence of two structures
    Equiv {
        left: PathBuf,
        right: PathBuf,
    },
    /// Print summary facts about a structure
    Info {
        input: PathBuf,
    },
    /// Emit a seeded random structure
    Gen {
        /// State count
        #[arg(long)]
        states: usize,
        /// Label width in bits
        #[arg(long)]
        bits: usize,
        /// Alphabet size
        #[arg(long)]
        alphabet: usize,
        /// Generator seed
        #[arg(long)]
        seed: u64,
        /// Probability that a state reuses an earlier state's label
        #[arg(long, default_value_t = 0.0)]
        collide: f64,
    },
    /// Emit a language-equivalent structure inflated with clone states
    Inflate {
        input: PathBuf,
        /// Clones per state
        #[arg(long)]
        copies: usize,
        /// Rewiring seed
        #[arg(long)]
        seed: u64,
    },
    /// Measure refinement work across instance sizes
    Bench {
        /// Comma-separated, strictly ascending instance sizes
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Label width in bits
        #[arg(long)]
        bits: usize,
        /// Alphabet size
        #[arg(long)]
        alphabet: usize,
        /// Instances per (family, size) cell
        #[arg(long)]
        reps: usize,
        /// Master seed
        #[arg(long)]
        seed: u64,
        /// Emit the report as a single JSON line instead of a table
        #[arg(long)]
        json: bool,
    },
    /// Emit the structure as Graphviz DOT
    Dot {
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    // Usage errors exit with code 2 via clap itself.
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("kmin: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Minimize { input, output, stats } => cmd_minimize(&input, output.as_deref(), stats),
        Command::Equiv { left, right } => cmd_equiv(&left, &right),
        Command::Info { input } => cmd_info(&input),
        Command::Gen { states, bits, alphabet, seed, collide } => {
            cmd_gen(states, bits, alphabet, seed, collide)
        }
        Command::Inflate { input, copies, seed } => cmd_inflate(&input, copies, seed),
        Command::Bench { sizes, bits, alphabet, reps, seed, json } => {
            cmd_bench(&sizes, bits, alphabet, reps, seed, json)
        }
        Command::Dot { input } => cmd_dot(&input),
    }
}

fn load(path: &Path) -> Result<KripkeStructure, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))?;
    parse_kts(&text).map_err(|e| format!("{}: {}", path.display(), e))
}

/// Loads and rejects structures with hard defects (missing transitions);
/// unreachable states are allowed.
fn load_total(path: &Path) -> Result<KripkeStructure, String> {
    let k = load(path)?;
    let report = validate(&k, Strictness::AllowUnreachable);
    if !report.ok {
        return Err(format!("{}: {}", path.display(), report));
    }
    Ok(k)
}

/// Like [`load_total`], but additionally drops unreachable states with a
/// notice on standard error. Returns the trimmed structure and the state
/// count of the file as parsed.
fn load_reachable(path: &Path) -> Result<(KripkeStructure, usize), String> {
    let k = load_total(path)?;
    let parsed_states = k.state_count();
    let (trimmed, removed) = trim_unreachable(&k);
    if removed > 0 {
        eprintln!(
            "kmin: {}: dropped {} unreachable state(s)",
            path.display(),
            removed
        );
    }
    Ok((trimmed, parsed_states))
}

fn cmd_minimize(input: &Path, output: Option<&Path>, stats: bool) -> Result<u8, String> {
    let (k, input_states) = load_reachable(input)?;
    let min = minimize(&k).map_err(|e| format!("{}: {}", input.display(), e))?;
    let canon = canonical_form(&min.structure).structure;
    let text = serialize_kts(&canon);
    match output {
        Some(path) => {
            fs::write(path, &text).map_err(|e| format!("{}: {}", path.display(), e))?
        }
        None => print!("{text}"),
    }
    if stats {
        let line = serde_json::json!({
            "splits": min.stats.splits,
            "state_moves": min.stats.state_moves,
            "splitter_removals": min.stats.splitter_removals,
            "loop_iterations": min.stats.loop_iterations,
            "input_states": input_states,
            "output_states": canon.state_count(),
        })
        .to_string();
        // The structure owns standard output unless it went to a file.
        if output.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
    Ok(0)
}

fn cmd_equiv(left: &Path, right: &Path) -> Result<u8, String> {
    let a = load_total(left)?;
    let b = load_total(right)?;
    match language_equivalent(&a, &b).map_err(|e| e.to_string())? {
        EquivalenceVerdict::Equivalent => {
            println!("equivalent");
            Ok(0)
        }
        EquivalenceVerdict::NotEquivalent { word, left, right } => {
            let rendered = if word.is_empty() {
                "(empty)".to_string()
            } else {
                word.join(" ")
            };
            println!("word: {rendered}");
            println!("left: {left}");
            println!("right: {right}");
            Ok(1)
        }
    }
}

fn cmd_info(input: &Path) -> Result<u8, String> {
    let k = load(input)?;
    let report = validate(&k, Strictness::AllowUnreachable);
    let (trimmed, removed) = trim_unreachable(&k);
    // A structure counts as minimal only if nothing is unreachable and no
    // two states are equivalent; undecidable here when transitions are
    // missing.
    let minimal = if report.ok {
        Some(removed == 0 && is_minimal(&trimmed).map_err(|e| e.to_string())?)
    } else {
        None
    };
    println!("states {}", k.state_count());
    println!("bits {}", k.bits);
    println!("alphabet {}", k.alphabet_size());
    println!("reachable {}", k.state_count() - removed);
    match minimal {
        Some(answer) => println!("minimal {answer}"),
        None => println!("minimal unknown"),
    }
    Ok(0)
}

fn cmd_gen(states: usize, bits: usize, alphabet: usize, seed: u64, collide: f64) -> Result<u8, String> {
    if states == 0 {
        return Err("--states must be at least 1".into());
    }
    if bits == 0 {
        return Err("--bits must be at least 1".into());
    }
    if alphabet == 0 {
        return Err("--alphabet must be at least 1".into());
    }
    if !(0.0..=1.0).contains(&collide) {
        return Err("--collide must lie in [0, 1]".into());
    }
    let spec = GenSpec {
        states,
        bits,
        alphabet_size: alphabet,
        seed,
        label_collision: collide,
    };
    print!("{}", serialize_kts(&gen_random(&spec)));
    Ok(0)
}

fn cmd_inflate(input: &Path, copies: usize, seed: u64) -> Result<u8, String> {
    if copies == 0 {
        return Err("--copies must be at least 1".into());
    }
    let (k, _) = load_reachable(input)?;
    print!("{}", serialize_kts(&gen_redundant(&k, copies, seed)));
    Ok(0)
}

fn cmd_bench(
    sizes: &[usize],
    bits: usize,
    alphabet: usize,
    reps: usize,
    seed: u64,
    json: bool,
) -> Result<u8, String> {
    if sizes.is_empty() {
        return Err("--sizes needs at least one size".into());
    }
    if !sizes.windows(2).all(|w| w[0] < w[1]) {
        return Err("--sizes must be strictly ascending".into());
    }
    if bits == 0 {
        return Err("--bits must be at least 1".into());
    }
    if alphabet == 0 {
        return Err("--alphabet must be at least 1".into());
    }
    let report = run_bench(sizes, bits, alphabet, reps, seed);
    if json {
        println!("{}", serde_json::to_string(&report).unwrap());
    } else {
        println!(
            "{:<10} {:>9} {:>10} {:>12} {:>12} {:>14} {:>14} {:>9} {:>12} {:>14}",
            "family",
            "n",
            "n_eff",
            "moves_mean",
            "moves_max",
            "removals_mean",
            "removals_max",
            "wall_ms",
            "bound_ratio",
            "removal_ratio"
        );
        for p in &report.points {
            println!(
                "{:<10} {:>9} {:>10.1} {:>12.1} {:>12} {:>14.1} {:>14} {:>9.2} {:>12.3} {:>14.3}",
                p.family,
                p.requested_states,
                p.mean_effective_states,
                p.mean_state_moves,
                p.max_state_moves,
                p.mean_splitter_removals,
                p.max_splitter_removals,
                p.mean_wall_ms,
                p.bound_ratio,
                p.removal_ratio
            );
        }
    }
    Ok(0)
}

fn cmd_dot(input: &Path) -> Result<u8, String> {
    let k = load(input)?;
    print!("{}", export_dot(&k));
    Ok(0)
}
