//! Command-line front end. The binary only parses arguments and forwards
//! here, so everything is testable in-process through [`run`].

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::action::{canonicalize, ActionSpec};
use crate::error::{Error, Result};
use crate::invariants::generators;
use crate::numeric::{verify_suite, SampleReport};
use crate::recovery::{recover, roundtrip, roundtrip_campaign, SpecBounds};
use crate::strata::{face_table, orbit_strata, StratificationDiagram};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Print invariant generators.
    Invariants,
    /// Print the face table and orbit-type stratification.
    Stratify,
    /// Recover weights from a diagram JSON file.
    Recover,
    /// Stratify then recover, for one action or a random campaign.
    Roundtrip,
    /// Run the sampled numeric checks of the Hilbert map.
    Verify,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "circle-strata",
    version,
    about = "Invariants, strata and weight recovery for linear circle actions"
)]
pub struct CommandConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Comma-separated integer weights, e.g. `1,2,3`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Option<Vec<i64>>,
    /// Dimension of the factor the circle fixes.
    #[arg(long, default_value_t = 0)]
    pub trivial_dim: usize,
    /// Diagram JSON file, or `-` for stdin.
    #[arg(long = "diagram")]
    pub diagram_path: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write a Graphviz rendering of the diagram here.
    #[arg(long = "dot")]
    pub dot_path: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub max_weight: Option<u64>,
    #[arg(long)]
    pub max_m: Option<usize>,
}

/// Exit status plus what would go to stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

const DEFAULT_SEED: u64 = 0x5eed;

/// Executes one command. Library errors become exit status 2 with a
/// one-line diagnostic.
pub fn run(config: &CommandConfig) -> Outcome {
    match dispatch(config) {
        Ok(out) => out,
        Err(e) => Outcome {
            status: EXIT_INPUT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn spec_from(config: &CommandConfig) -> Result<ActionSpec> {
    if config.diagram_path.is_some() {
        return Err(Error::InvalidInput(format!(
            "{:?} takes --weights, not --diagram",
            config.command
        )));
    }
    let weights = config
        .weights
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("--weights is required".into()))?;
    canonicalize(weights, config.trivial_dim)
}

fn read_diagram(config: &CommandConfig) -> Result<StratificationDiagram> {
    if config.weights.is_some() {
        return Err(Error::InvalidInput(
            "recover takes --diagram, not --weights".into(),
        ));
    }
    let path = config
        .diagram_path
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("--diagram is required".into()))?;
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn report_lines(reports: &[SampleReport], format: Format) -> Result<String> {
    let mut out = String::new();
    for r in reports {
        match format {
            Format::Json => {
                out.push_str(&serde_json::to_string(r)?);
                out.push('\n');
            }
            Format::Text => {
                let verdict = if r.passed() { "pass" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "{:<14} {verdict}  trials {} failures {} max_err {:.3e} (seed {})",
                    r.check, r.trials, r.failures, r.max_err, r.seed
                );
            }
        }
    }
    Ok(out)
}

fn dispatch(config: &CommandConfig) -> Result<Outcome> {
    match config.command {
        Command::Invariants => {
            let spec = spec_from(config)?;
            let gens = generators(&spec)?;
            let stdout = match config.format {
                Format::Json => serde_json::to_string(&gens)? + "\n",
                Format::Text => gens.iter().map(|g| format!("{g}\n")).collect(),
            };
            Ok(Outcome::ok(stdout))
        }
        Command::Stratify => {
            let spec = spec_from(config)?;
            let diagram = orbit_strata(&spec)?;
            if let Some(path) = &config.dot_path {
                std::fs::write(path, diagram.to_dot())?;
            }
            let stdout = match config.format {
                Format::Json => serde_json::to_string(&diagram)? + "\n",
                Format::Text => {
                    let mut s = format!("{:<16} {:>6} {:>6}\n", "set", "order", "codim");
                    for row in face_table(&spec)? {
                        let _ = writeln!(
                            s,
                            "{:<16} {:>6} {:>6}",
                            row.indices.to_string(),
                            row.stabilizer_order,
                            row.codim
                        );
                    }
                    let _ = writeln!(s, "{:<16} {:>6} {:>6}", "{0}", "inf", 2 * spec.m());
                    s.push('\n');
                    s.push_str(&diagram.to_string());
                    s
                }
            };
            Ok(Outcome::ok(stdout))
        }
        Command::Recover => {
            let diagram = read_diagram(config)?;
            let r = recover(&diagram)?;
            let stdout = match config.format {
                Format::Json => serde_json::to_string(&r)? + "\n",
                Format::Text => {
                    let w: Vec<String> = r.weights.iter().map(u64::to_string).collect();
                    format!(
                        "weights {}\ntrivial_dim {}\nm {}\nn {}\n",
                        w.join(","),
                        r.trivial_dim,
                        r.m,
                        r.n
                    )
                }
            };
            Ok(Outcome::ok(stdout))
        }
        Command::Roundtrip => {
            if config.weights.is_some() {
                let spec = spec_from(config)?;
                let pass = roundtrip(&spec)?;
                let stdout = match config.format {
                    Format::Json => {
                        serde_json::json!({
                            "weights": spec.weights(),
                            "trivial_dim": spec.trivial_dim(),
                            "pass": pass,
                        })
                        .to_string()
                            + "\n"
                    }
                    Format::Text => format!("{}: {}\n", spec, if pass { "pass" } else { "FAIL" }),
                };
                return Ok(Outcome {
                    status: if pass { EXIT_OK } else { EXIT_VERIFY_FAILED },
                    stdout,
                    stderr: String::new(),
                });
            }
            if config.diagram_path.is_some() {
                return Err(Error::InvalidInput(
                    "roundtrip takes --weights or campaign flags".into(),
                ));
            }
            let defaults = SpecBounds::default();
            let bounds = SpecBounds {
                max_m: config.max_m.unwrap_or(defaults.max_m),
                max_weight: config.max_weight.unwrap_or(defaults.max_weight),
                max_trivial_dim: defaults.max_trivial_dim,
            };
            let (report, failures) =
                roundtrip_campaign(config.seed.unwrap_or(DEFAULT_SEED), config.trials, bounds);
            let mut stderr = String::new();
            for spec in &failures {
                let _ = writeln!(stderr, "roundtrip failed for {spec}");
            }
            Ok(Outcome {
                status: if report.passed() {
                    EXIT_OK
                } else {
                    EXIT_VERIFY_FAILED
                },
                stdout: report_lines(&[report], config.format)?,
                stderr,
            })
        }
        Command::Verify => {
            let spec = spec_from(config)?;
            if config.tol.is_nan() || config.tol <= 0.0 {
                return Err(Error::InvalidInput("--tol must be positive".into()));
            }
            let reports = verify_suite(
                &spec,
                config.seed.unwrap_or(DEFAULT_SEED),
                config.trials,
                config.tol,
            )?;
            let failed = reports.iter().any(|r| !r.passed());
            Ok(Outcome {
                status: if failed { EXIT_VERIFY_FAILED } else { EXIT_OK },
                stdout: report_lines(&reports, config.format)?,
                stderr: String::new(),
            })
        }
    }
}
