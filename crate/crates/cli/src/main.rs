//! `qsqc`: analyze stabilizer codes, verify and search quotient space codes,
//! evaluate bounds and run the exact oracle.
//!
//! Exit status: 0 certified / holds / found, 1 rejected / not found,
//! 2 usage or input error.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use qsqc::oracle::{self, KlOptions, BASIS_QUBIT_LIMIT};
use qsqc::{
    classify, corpus, find_qsc, format::parse_check_matrix, general_hamming_compare, gv_type, hamming_type,
    singleton_for, ust_distance, verify, Error, NormMode, QscCode, SearchProblem, StabilizerCode, Strategy,
    SympVector, Target,
};

use report::{
    AnalyzeReport, BoundsReport, ExampleEntry, ExamplesReport, Outcome, ProfileReport, SearchReport, UstSummary,
    VerifyReport,
};

#[derive(Parser)]
#[command(name = "qsqc", version, about = "Quotient space quantum codes")]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    Quantum,
    Hamming,
}

impl From<NormArg> for NormMode {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::Quantum => NormMode::Quantum,
            NormArg::Hamming => NormMode::Hamming,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Greedy,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, distances and degeneracy of a self-orthogonal code.
    Analyze {
        matrix: PathBuf,
        /// Target distance for the degeneracy profile (default d_m).
        #[arg(long)]
        d: Option<usize>,
    },
    /// Certify a quotient space code at distance d.
    Verify {
        matrix: PathBuf,
        omega: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "quantum")]
        norm: NormArg,
        /// Also run the exact Knill-Laflamme check (n <= 14).
        #[arg(long)]
        oracle: bool,
        /// Check a seeded sample of this many errors instead of all.
        #[arg(long, requires = "oracle")]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Permit the oracle above 12 qubits.
        #[arg(long, requires = "oracle")]
        allow_large: bool,
    },
    /// Search for a quotient space code inside C(d-1)^perp.
    #[command(group(ArgGroup::new("target").required(true).args(["l", "maximize"])))]
    Search {
        matrix: PathBuf,
        #[arg(long)]
        d: usize,
        /// Number of cosets wanted.
        #[arg(long = "L", id = "l")]
        l: Option<usize>,
        #[arg(long)]
        maximize: bool,
        #[arg(long, value_enum, default_value = "exhaustive")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Branch-and-bound node limit.
        #[arg(long)]
        budget: Option<u64>,
        /// Write the representatives found to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Measurement Hamming/GV bounds, Singleton and the general Hamming comparison.
    Bounds {
        matrix: PathBuf,
        omega: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Union-stabilizer distance against the classical union distance.
    Ust { matrix: PathBuf, omega: PathBuf },
    /// Re-verify the bundled examples (a name or a family).
    Examples {
        name: Option<String>,
        /// Skip the oracle on small members.
        #[arg(long)]
        no_oracle: bool,
    },
}

/// Input or usage problem: exit status 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

fn read_vectors(path: &Path) -> Result<Vec<SympVector>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_check_matrix(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<StabilizerCode, Failure> {
    Ok(StabilizerCode::analyze(&read_vectors(path)?)?)
}

fn load_qsc(code: &StabilizerCode, path: &Path, norm: NormMode) -> Result<QscCode, Failure> {
    let reps = read_vectors(path)?;
    if let Some(r) = reps.iter().find(|r| r.n() != code.n()) {
        return Err(Error::DimensionMismatch {
            left: code.n(),
            right: r.n(),
        }
        .into());
    }
    Ok(QscCode::build_with_norm(code, &reps, norm)?)
}

fn analyze(path: &Path, d: Option<usize>) -> Result<Outcome, Failure> {
    let code = load_code(path)?;
    let dm = code.dm();
    let profile = d.or(dm.finite()).map(|d| {
        let p = code.degeneracy_profile(d);
        ProfileReport {
            d,
            lowweight: p.lowweight.clone(),
            s: p.s,
            d_s: p.d_s,
            degenerate: p.is_degenerate(),
        }
    });
    let r = AnalyzeReport {
        n: code.n(),
        k: code.k(),
        dim: code.code().dim(),
        min_weight: code.min_weight(),
        dm,
        self_dual: code.is_self_dual(),
        generators: code.code().basis().to_vec(),
        profile,
    };
    Ok(Outcome::new(true, &r, r.text()))
}

fn run_oracle(
    code: &StabilizerCode,
    qsc: &QscCode,
    d: usize,
    sample: Option<usize>,
    seed: u64,
    allow_large: bool,
) -> Result<oracle::KlReport, Failure> {
    if code.n() > BASIS_QUBIT_LIMIT {
        return Err(Failure(format!(
            "oracle refused: {} qubits exceeds the limit of {BASIS_QUBIT_LIMIT}",
            code.n()
        )));
    }
    let mut opts = match sample {
        Some(count) => KlOptions::sampled(count, seed),
        None => KlOptions::default(),
    };
    opts.allow_large = allow_large;
    oracle::check_qsqc(code, qsc, d, &opts).map_err(|e| match e {
        Error::StateSpaceTooLarge { .. } => Failure(format!("{e}; pass --allow-large to run it anyway")),
        e => e.into(),
    })
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    matrix: &Path,
    omega: &Path,
    d: usize,
    norm: NormMode,
    with_oracle: bool,
    sample: Option<usize>,
    seed: u64,
    allow_large: bool,
) -> Result<Outcome, Failure> {
    let code = load_code(matrix)?;
    let qsc = load_qsc(&code, omega, norm)?;
    let cert = verify(&code, &qsc, d)?;
    let oracle = if with_oracle {
        Some(run_oracle(&code, &qsc, d, sample, seed, allow_large)?)
    } else {
        None
    };
    let ok = cert.is_certified() && oracle.as_ref().map_or(true, |o| o.ok);
    let r = VerifyReport {
        classification: classify(&cert),
        certificate: cert,
        oracle,
    };
    Ok(Outcome::new(ok, &r, r.text()))
}

#[allow(clippy::too_many_arguments)]
fn search_cmd(
    matrix: &Path,
    d: usize,
    l: Option<usize>,
    strategy: StrategyArg,
    seed: u64,
    budget: Option<u64>,
    output: Option<&Path>,
) -> Result<Outcome, Failure> {
    let code = load_code(matrix)?;
    let target = l.map_or(Target::Maximize, Target::Count);
    let strategy = match strategy {
        StrategyArg::Exhaustive => Strategy::Exhaustive,
        StrategyArg::Greedy => Strategy::Greedy,
    };
    let mut problem = SearchProblem::new(code.clone(), d, target).strategy(strategy).seed(seed);
    if let Some(b) = budget {
        problem = problem.budget(b);
    }
    let r = match find_qsc(&problem) {
        Ok(found) => {
            let cert = verify(&code, &found.qsc, d)?;
            if let Some(path) = output {
                let text = qsqc::format::write_check_matrix(&found.qsc.reps());
                fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            }
            SearchReport {
                found: cert.is_certified(),
                target,
                strategy,
                omega: found.qsc.reps(),
                size: found.qsc.len(),
                nodes: found.nodes,
                optimal: found.optimal,
                elapsed_ms: found.elapsed_ms,
                certificate: Some(cert),
                reason: None,
            }
        }
        Err(e @ (Error::NotFound { .. } | Error::BudgetExhausted { .. } | Error::TargetExceedsDm { .. })) => {
            SearchReport {
                found: false,
                target,
                strategy,
                omega: Vec::new(),
                size: 0,
                nodes: 0,
                optimal: false,
                elapsed_ms: 0,
                certificate: None,
                reason: Some(e.to_string()),
            }
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome::new(r.found, &r, r.text()))
}

fn bounds_cmd(matrix: &Path, omega: &Path, d: usize) -> Result<Outcome, Failure> {
    let code = load_code(matrix)?;
    let qsc = load_qsc(&code, omega, NormMode::Quantum)?;
    let cert = verify(&code, &qsc, d)?;
    let hamming = if cert.is_certified() {
        Some(hamming_type(&code, &cert)?)
    } else {
        None
    };
    let r = BoundsReport {
        hamming_type: hamming,
        gv_type: gv_type(&code, d, qsc.len())?,
        singleton: singleton_for(&cert),
        general_hamming_compare: general_hamming_compare(&code, d)?,
        certified: cert.is_certified(),
        params: cert.params(),
    };
    let ok = r.hamming_type.as_ref().is_some_and(|h| h.holds == Some(true)) && r.singleton.holds != Some(false);
    Ok(Outcome::new(ok, &r, r.text()))
}

fn ust_cmd(matrix: &Path, omega: &Path) -> Result<Outcome, Failure> {
    let code = load_code(matrix)?;
    let qsc = load_qsc(&code, omega, NormMode::Quantum)?;
    let r = UstSummary {
        n: code.n(),
        size: qsc.len(),
        qsc_distance: qsc.distance(),
        dm: code.dm(),
        code_distance: code.min_weight(),
        report: ust_distance(&code, &qsc)?,
    };
    Ok(Outcome::new(true, &r, r.text()))
}

/// Members up to this size also get the oracle in the sweep.
const SWEEP_ORACLE_QUBITS: usize = 9;

fn examples_cmd(name: Option<&str>, with_oracle: bool) -> Result<Outcome, Failure> {
    let selected = corpus::select(name);
    if selected.is_empty() {
        let names: Vec<&str> = corpus::examples().iter().map(|e| e.name).collect();
        return Err(Failure(format!(
            "unknown example {:?}; choose one of {} or c8-family",
            name.unwrap_or_default(),
            names.join(", ")
        )));
    }
    let mut entries = Vec::new();
    for ex in selected {
        let code = StabilizerCode::analyze(&ex.code_rows())?;
        let qsc = QscCode::build(&code, &ex.omega_reps())?;
        let cert = verify(&code, &qsc, ex.d)?;
        let (n, k, l, d) = ex.expected;
        let matches = (cert.n, cert.k as u32, cert.l, cert.claimed_d) == (n, k, l, d);
        let hamming = if cert.is_certified() {
            Some(hamming_type(&code, &cert)?)
        } else {
            None
        };
        let oracle = if with_oracle && code.n() <= SWEEP_ORACLE_QUBITS {
            Some(oracle::check_qsqc(&code, &qsc, ex.d, &KlOptions::default())?)
        } else {
            None
        };
        entries.push(ExampleEntry {
            name: ex.name,
            family: ex.family,
            expected: format!("(({n}, 2^{k}·{l}, {d}))"),
            matches,
            ust: ust_distance(&code, &qsc)?,
            code_distance: code.min_weight(),
            hamming_type: hamming,
            singleton: singleton_for(&cert),
            oracle_ok: oracle.as_ref().map(|o| o.ok),
            oracle_errors: oracle.as_ref().map(|o| o.errors_checked),
            certificate: cert,
        });
    }
    let ok = entries.iter().all(ExampleEntry::ok);
    let r = ExamplesReport { ok, examples: entries };
    Ok(Outcome::new(ok, &r, r.text()))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Analyze { matrix, d } => analyze(matrix, *d),
        Command::Verify {
            matrix,
            omega,
            d,
            norm,
            oracle,
            sample,
            seed,
            allow_large,
        } => verify_cmd(matrix, omega, *d, (*norm).into(), *oracle, *sample, *seed, *allow_large),
        Command::Search {
            matrix,
            d,
            l,
            maximize: _,
            strategy,
            seed,
            budget,
            output,
        } => search_cmd(matrix, *d, *l, *strategy, *seed, *budget, output.as_deref()),
        Command::Bounds { matrix, omega, d } => bounds_cmd(matrix, omega, *d),
        Command::Ust { matrix, omega } => ust_cmd(matrix, omega),
        Command::Examples { name, no_oracle } => examples_cmd(name.as_deref(), !no_oracle),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.success { 0 } else { 1 })
        }
        Err(Failure(msg)) => {
            if cli.json {
                println!("{}", serde_json::json!({ "status": "error", "error": msg }));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}
