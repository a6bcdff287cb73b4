//! `mucat`: run the coherence-law suite and work with matrix-model channels
//! stored as JSON.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use mucat::cpinf::{equiv_decide_tol, kraus_apply, kraus_compose, pure_decomposition, purify, to_choi};
use mucat::io::{parse, reports_to_json_lines, to_json, ChannelJson, ChoiJson, MatrixJson, SpaceJson, SparseJson};
use mucat::model::ModelKind;
use mucat::suite::{list_laws, run_suite, SuiteConfig};

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Lib(#[from] mucat::Error),
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "mucat", version, about = "Coherence-law suite and channel tools for mixed unitary categories")]
struct Cli {
    /// Models for `laws-run`, comma separated: mat, fmat, cplane.
    #[arg(long, global = true, value_delimiter = ',')]
    model: Vec<ModelKind>,
    /// Trials per law.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    #[arg(long, global = true, env = "MUC_CPINF_SEED", default_value_t = 0)]
    seed: u64,
    /// Comparison tolerance; defaults to the model's own.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Glob over law ids.
    #[arg(long, global = true)]
    filter: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the law suite, one JSON report per line.
    LawsRun,
    /// List the law catalog, one JSON entry per line.
    LawsList,
    /// Sequential composite of two channels.
    ChannelCompose { first: PathBuf, second: PathBuf },
    /// Decide whether two channels are equivalent.
    ChannelEquiv { left: PathBuf, right: PathBuf },
    /// Choi matrix of a channel.
    ChannelChoi { channel: PathBuf },
    /// Kraus operators of a channel.
    ChannelDecompose { channel: PathBuf },
    /// A minimal channel with the given Choi matrix.
    ChannelPurify { choi: PathBuf },
    /// Apply a channel to a matrix.
    ChannelApply { channel: PathBuf, density: PathBuf },
    /// Validate a finiteness space or a typed sparse matrix.
    FmatCheck { input: PathBuf },
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    Ok(parse(&read(path)?)?)
}

struct Output<'a> {
    out: Option<&'a Path>,
    seed: u64,
    tolerance: f64,
}

impl Output<'_> {
    fn write(&self, text: &str) -> CliResult<()> {
        match self.out {
            Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            }),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|source| CliError::Io {
                        path: "<stdout>".into(),
                        source,
                    })
            }
        }
    }

    /// Writes one JSON object with the seed and tolerance attached.
    fn emit(&self, value: Value) -> CliResult<()> {
        let mut value = value;
        if let Value::Object(map) = &mut value {
            map.insert("seed".into(), json!(self.seed));
            map.insert("tolerance".into(), json!(self.tolerance));
        }
        self.write(&(value.to_string() + "\n"))
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable value")
}

/// Returns whether the command succeeded in the exit-code sense.
fn run(cli: Cli) -> CliResult<bool> {
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(mucat::Error::InvalidValue(format!("--tol must be positive, got {t}")).into());
        }
    }
    let tolerance = cli.tol.unwrap_or_else(|| ModelKind::Mat.default_tolerance());
    let out = Output {
        out: cli.out.as_deref(),
        seed: cli.seed,
        tolerance,
    };
    match cli.command {
        Command::LawsRun => {
            let models = if cli.model.is_empty() { ModelKind::ALL.to_vec() } else { cli.model };
            let cfg = SuiteConfig {
                models: models.iter().map(|m| m.id().to_string()).collect(),
                filter: cli.filter,
                trials: cli.trials,
                seed: cli.seed,
                tolerance: cli.tol,
            };
            let reports = run_suite(&cfg)?;
            out.write(&reports_to_json_lines(&reports))?;
            let failed: Vec<String> = reports.iter().filter(|r| !r.pass).map(|r| format!("{}@{}", r.law, r.model)).collect();
            if !failed.is_empty() {
                eprintln!("mucat: {} of {} checks failed: {}", failed.len(), reports.len(), failed.join(", "));
            }
            Ok(failed.is_empty())
        }
        Command::LawsList => {
            let lines: String = list_laws().iter().map(|l| to_json(l) + "\n").collect();
            out.write(&lines)?;
            Ok(true)
        }
        Command::ChannelCompose { first, second } => {
            let k1 = load::<ChannelJson>(&first)?.to_kraus()?;
            let k2 = load::<ChannelJson>(&second)?.to_kraus()?;
            out.emit(to_value(&ChannelJson::from_kraus(&kraus_compose(&k1, &k2)?)?))?;
            Ok(true)
        }
        Command::ChannelEquiv { left, right } => {
            let k1 = load::<ChannelJson>(&left)?.to_kraus()?;
            let k2 = load::<ChannelJson>(&right)?.to_kraus()?;
            // channels of different types are simply not equivalent
            let equivalent = match equiv_decide_tol(&k1, &k2, tolerance) {
                Err(mucat::Error::DomCodMismatch(_)) => false,
                other => other?,
            };
            out.emit(json!({ "equivalent": equivalent }))?;
            Ok(equivalent)
        }
        Command::ChannelChoi { channel } => {
            let k = load::<ChannelJson>(&channel)?.to_kraus()?;
            out.emit(to_value(&ChoiJson::from_choi(&to_choi(&k)?)))?;
            Ok(true)
        }
        Command::ChannelDecompose { channel } => {
            let k = load::<ChannelJson>(&channel)?.to_kraus()?;
            let ops = pure_decomposition(&k)?
                .iter()
                .map(|m| m.dense().map(|d| to_value(&MatrixJson::from_matrix(d))))
                .collect::<Option<Vec<_>>>()
                .expect("matrix-model operators");
            out.emit(json!({ "operators": ops }))?;
            Ok(true)
        }
        Command::ChannelPurify { choi } => {
            let c = load::<ChoiJson>(&choi)?.to_choi()?;
            out.emit(to_value(&ChannelJson::from_kraus(&purify(&c)?)?))?;
            Ok(true)
        }
        Command::ChannelApply { channel, density } => {
            let k = load::<ChannelJson>(&channel)?.to_kraus()?;
            let rho = load::<MatrixJson>(&density)?.to_matrix()?;
            out.emit(to_value(&MatrixJson::from_matrix(&kraus_apply(&k, &rho)?)))?;
            Ok(true)
        }
        Command::FmatCheck { input } => {
            let text = read(&input)?;
            let (kind, verdict) = if let Ok(m) = parse::<SparseJson>(&text) {
                ("matrix", m.to_sparse().map(|_| ()))
            } else {
                ("space", parse::<SpaceJson>(&text)?.to_space().map(|_| ()))
            };
            let valid = verdict.is_ok();
            let mut report = json!({ "kind": kind, "valid": valid });
            if let Err(e) = verdict {
                report["reason"] = json!(e.to_string());
            }
            out.emit(report)?;
            Ok(valid)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("mucat: {e}");
            ExitCode::from(2)
        }
    }
}
