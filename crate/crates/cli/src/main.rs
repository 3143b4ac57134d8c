//! `facecover` command-line front end.

mod error;
mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use facecover::analysis::{
    check_inequalities, chernoff_tail_check, classification_report, dyakonov_check,
    experiment_theorem1, sample_phi, theorem2_bound, theorem2_sweep, theorem3_bound,
    verify_cut_lemma,
};
use facecover::{
    all_minimal_dnfs_with_budget, complete_function, enumerate_prime_implicants, extract_reduced,
    hk_function, minimal_dnf_with_budget, to_proper, Budget, Dnf, FewZeroFunction, Limits, Literal,
    Objective, ZeroMatrix,
};
use serde_json::{json, Value};

use error::CliError;
use report::{Output, Provenance};

/// Widest matrix accepted from files; operations apply their own limits.
const MAX_INPUT_COLUMNS: usize = 1 << 16;

#[derive(Parser)]
#[command(
    name = "facecover",
    version,
    about = "Minimal DNFs for Boolean functions with few zeros"
)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ObjectiveArg {
    Rank,
    Length,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Rank => Objective::Rank,
            ObjectiveArg::Length => Objective::Length,
        }
    }
}

#[derive(Args)]
struct Input {
    /// Zero-matrix file, one row of 0/1 per line; `-` or absent reads stdin.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named function.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Bring a function to proper form and extract its reduced form.
    Canon {
        #[command(flatten)]
        input: Input,
        /// Where to write the JSON sidecar with the transform and grouping.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// List prime implicants as signed-integer lists.
    Implicants {
        #[command(flatten)]
        input: Input,
        /// Same as `--format json`.
        #[arg(long)]
        json: bool,
    },
    /// Minimum-rank or minimum-length DNF.
    Minimize {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "rank")]
        objective: ObjectiveArg,
        /// Return every optimal DNF.
        #[arg(long)]
        all: bool,
        /// Branch-and-bound node limit.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Classify the conjunctions of a DNF and evaluate the class inequalities.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// JSON file holding a list of signed-integer lists, or a `minimize` report.
        #[arg(long)]
        dnf: PathBuf,
    },
    /// Closed-form rank lower bounds.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Exact binomial tail against its exponential bound.
    Chernoff {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lambda: f64,
    },
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    /// Check the cut lemma for one literal.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Signed variable index: `3` is x3, `-3` its negation.
        #[arg(long, allow_hyphen_values = true)]
        literal: i64,
        #[arg(long)]
        t: usize,
    },
    /// Draw a reduced function with column weights at least `m`.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// All column classes of `k` rows.
    Complete {
        #[arg(long)]
        k: usize,
    },
    /// Heavy column classes of `k` rows.
    Hk {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum BoundCommand {
    T2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    T3 {
        /// Number of variables; may be fractional.
        #[arg(long)]
        m: f64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: f64,
    },
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// How often random proper functions reduce to the complete function.
    T1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact minimum rank of sampled functions against the closed-form bound.
    T2sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn read_input(input: &Input) -> Result<FewZeroFunction, CliError> {
    let text = match &input.input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| CliError::io(p.display().to_string(), e))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::io("stdin", e))?;
            s
        }
    };
    Ok(FewZeroFunction::new(ZeroMatrix::parse_text(
        &text,
        Limits::wide(MAX_INPUT_COLUMNS),
    )?))
}

fn read_dnf(path: &PathBuf) -> Result<Dnf, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let lists = match &value {
        Value::Object(o) => o.get("dnf").cloned().unwrap_or(Value::Null),
        other => other.clone(),
    };
    let lists: Vec<Vec<i64>> = serde_json::from_value(lists).map_err(|e| {
        CliError::Input(format!(
            "{}: expected a list of signed-integer lists: {e}",
            path.display()
        ))
    })?;
    Ok(Dnf::from_signed(&lists)?)
}

fn budget(nodes: Option<u64>) -> Budget {
    Budget {
        max_nodes: nodes,
        ..Budget::default()
    }
}

fn matrix_json(f: &FewZeroFunction) -> Value {
    json!({
        "n": f.n(),
        "k": f.k(),
        "rows": f.matrix().rows().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
    })
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let format = cli.format;
    let pick = |default: Format, allowed: &[Format]| -> Result<Format, CliError> {
        let f = format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(CliError::Usage(
                format!("format {f:?} is not available for this command").to_lowercase(),
            ))
        }
    };
    let matrix_formats = [Format::Text, Format::Json];
    match cli.command {
        Command::Gen(g) => {
            let fmt = pick(Format::Text, &matrix_formats)?;
            let (f, extra, prov) = match g {
                GenCommand::Complete { k } => (
                    complete_function(k)?,
                    json!({}),
                    Provenance::new("gen complete"),
                ),
                GenCommand::Hk { k } => {
                    let h = hk_function(k)?;
                    let extra = json!({
                        "weight_threshold": h.weight_threshold,
                        "column_count": h.column_count,
                        "meets_count_claim": h.meets_count_claim,
                        "has_adjacent_zeros": h.has_adjacent_zeros,
                    });
                    (h.function, extra, Provenance::new("gen hk"))
                }
            };
            Ok(match fmt {
                Format::Text => Output::Text(f.matrix().to_text()),
                _ => Output::json(prov, report::merge(matrix_json(&f), extra)),
            })
        }
        Command::Canon { input, sidecar } => {
            let fmt = pick(Format::Text, &matrix_formats)?;
            let f = read_input(&input)?;
            let (proper, transform) = to_proper(&f)?;
            let (reduced, grouping) = extract_reduced(&proper)?;
            let side = json!({
                "transform": {
                    "perm": transform.perm(),
                    "neg": transform.neg().to_string(),
                },
                "grouping": grouping,
                "reduced": matrix_json(&reduced),
            });
            match fmt {
                Format::Text => {
                    if let Some(path) = sidecar {
                        let body = Output::json(Provenance::new("canon"), side).render();
                        std::fs::write(&path, body)
                            .map_err(|e| CliError::io(path.display().to_string(), e))?;
                    }
                    Ok(Output::Text(proper.matrix().to_text()))
                }
                _ => Ok(Output::json(
                    Provenance::new("canon"),
                    report::merge(json!({ "proper": matrix_json(&proper) }), side),
                )),
            }
        }
        Command::Implicants { input, json } => {
            let fmt = if json {
                Format::Json
            } else {
                pick(Format::Json, &[Format::Json, Format::Text])?
            };
            let f = read_input(&input)?;
            let primes = enumerate_prime_implicants(&f)?;
            Ok(match fmt {
                Format::Text => Output::Text(
                    primes
                        .iter()
                        .map(|c| {
                            c.to_signed()
                                .iter()
                                .map(i64::to_string)
                                .collect::<Vec<_>>()
                                .join(" ")
                                + "\n"
                        })
                        .collect(),
                ),
                _ => Output::json(
                    Provenance::new("implicants"),
                    json!({ "n": f.n(), "k": f.k(), "count": primes.len(), "implicants": primes }),
                ),
            })
        }
        Command::Minimize {
            input,
            objective,
            all,
            budget: nodes,
        } => {
            pick(Format::Json, &[Format::Json])?;
            let f = read_input(&input)?;
            let b = budget(nodes);
            let prov = Provenance::new("minimize").budget(nodes);
            let objective: Objective = objective.into();
            let r = minimal_dnf_with_budget(&f, objective, &b)?;
            let mut body = json!({
                "objective": objective,
                "optimum": r.optimum,
                "dnf": r.dnf,
                "proved_optimal": r.proved_optimal,
                "nodes_explored": r.nodes_explored,
                "prime_count": r.prime_count,
            });
            if !r.proved_optimal {
                return Err(CliError::Budget {
                    message: format!("no optimality proof within {} nodes", r.nodes_explored),
                    partial: Some(Output::json(prov, body)),
                });
            }
            if all {
                let all = all_minimal_dnfs_with_budget(&f, objective, &b)?;
                body["all"] = json!(all);
            }
            Ok(Output::json(prov, body))
        }
        Command::Analyze { input, dnf } => {
            pick(Format::Json, &[Format::Json])?;
            let f = read_input(&input)?;
            let d = read_dnf(&dnf)?;
            if !facecover::realizes(&f, &d)? {
                return Err(CliError::Lib(facecover::Error::PreconditionViolated(
                    "the DNF does not realize the function".into(),
                )));
            }
            let classes = classification_report(&f, &d)?;
            let inequalities = check_inequalities(&f, &d, &classes)?;
            let near_zero = dyakonov_check(&f, &d)?;
            Ok(Output::json(
                Provenance::new("analyze"),
                json!({
                    "classification": classes,
                    "inequalities": inequalities,
                    "inequalities_hold": inequalities.all_hold(),
                    "near_zero": near_zero,
                }),
            ))
        }
        Command::Bound(b) => {
            pick(Format::Json, &[Format::Json])?;
            Ok(match b {
                BoundCommand::T2 { n, k, m } => {
                    Output::json(Provenance::new("bound t2"), json!(theorem2_bound(n, k, m)?))
                }
                BoundCommand::T3 { m, k, alpha } => Output::json(
                    Provenance::new("bound t3"),
                    json!(theorem3_bound(m, k, alpha)?),
                ),
            })
        }
        Command::Chernoff { k, lambda } => {
            pick(Format::Json, &[Format::Json])?;
            Ok(Output::json(
                Provenance::new("chernoff"),
                json!(chernoff_tail_check(k, lambda)?),
            ))
        }
        Command::Experiment(ExperimentCommand::T1 { n, k, trials, seed }) => {
            pick(Format::Json, &[Format::Json])?;
            let r = experiment_theorem1(n, k, trials, seed)?;
            Ok(Output::json(
                Provenance::new("experiment t1").seed(seed),
                json!(r),
            ))
        }
        Command::Experiment(ExperimentCommand::T2sweep {
            n,
            k,
            m,
            trials,
            seed,
            budget: nodes,
        }) => {
            let fmt = pick(Format::Csv, &[Format::Csv, Format::Json])?;
            let rows = theorem2_sweep(n, k, m, trials, seed, &budget(nodes))?;
            Ok(match fmt {
                Format::Csv => Output::Text(report::sweep_csv(&rows)),
                _ => Output::json(
                    Provenance::new("experiment t2sweep")
                        .seed(seed)
                        .budget(nodes),
                    json!({ "rows": rows }),
                ),
            })
        }
        Command::Verify { input, literal, t } => {
            pick(Format::Json, &[Format::Json])?;
            let f = read_input(&input)?;
            let l = Literal::from_signed(literal)?;
            Ok(Output::json(
                Provenance::new("verify"),
                json!({
                    "scope": "optimal prime-implicant DNFs of rank and of length",
                    "report": verify_cut_lemma(&f, l, t)?,
                }),
            ))
        }
        Command::Sample { n, k, m, seed } => {
            let fmt = pick(Format::Text, &matrix_formats)?;
            let f = sample_phi(n, k, m, seed)?;
            Ok(match fmt {
                Format::Text => Output::Text(f.matrix().to_text()),
                _ => Output::json(Provenance::new("sample").seed(seed), matrix_json(&f)),
            })
        }
    }
}

fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("FACECOVER_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "FACECOVER_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return CliError::Usage(e.to_string()).report(None);
        }
    };
    let out = cli.out.clone();
    let result = init_threads().and_then(|()| run(cli));
    match result.and_then(|o| o.write(out.as_deref())) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.report(out.as_deref()),
    }
}
