//! Flag parsing and per-subcommand validation.

use crate::error::CliError;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use swl_core::finite_kernel::DEFAULT_CDF_NODES;
use swl_core::limit_dists::{Ensemble, Family, DEFAULT_LIMIT_NODES};
use swl_core::quaternion::SpikedParams;

pub const MAX_FINITE_M: usize = 40;
pub const DEFAULT_TRIALS: usize = 20_000;

#[derive(Debug, Parser)]
#[command(
    name = "swl",
    version,
    about = "Largest eigenvalue laws of the rank-one quaternionic spiked Wishart ensemble"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Tabulate a limiting law: CSV `T,F`.
    Dist(DistArgs),
    /// Tabulate the finite-N distribution of the largest eigenvalue: CSV `T,P`.
    FiniteCdf(FiniteArgs),
    /// Monte Carlo maxima: CSV `trial,raw_max,rescaled` and a KS summary line.
    Mc(McArgs),
    /// Run a verification suite and print one line per check.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Grid {
    #[arg(long, allow_negative_numbers = true)]
    pub t_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub t_max: f64,
    #[arg(long)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    /// gue, gue1, goe, gse, gse1 or gaussian.
    #[arg(long)]
    pub family: String,
    #[command(flatten)]
    pub grid: Grid,
    /// Nyström nodes; defaults to 96.
    #[arg(long, env = "SWL_QUAD_NODES")]
    pub quad_nodes: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FiniteArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m_samples: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[command(flatten)]
    pub grid: Grid,
    /// Nyström nodes; defaults to 64.
    #[arg(long, env = "SWL_QUAD_NODES")]
    pub quad_nodes: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, conflicts_with = "gamma", required_unless_present = "gamma")]
    pub m_samples: Option<usize>,
    /// sqrt(M/N); M = γ²N must be an integer.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, value_enum, default_value_t = EnsembleArg::Quaternionic)]
    pub ensemble: EnsembleArg,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnsembleArg {
    Quaternionic,
    Complex,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Master seed of the identity sweep and the joint-density sampler.
    #[arg(long, default_value_t = swl_core::identities::SWEEP_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Skew,
    Painleve,
    All,
}

/// Uniform grid `t_min, …, t_max` with `steps` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TGrid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl TGrid {
    fn new(g: &Grid) -> Result<Self, CliError> {
        if g.steps < 2 {
            return Err(CliError::Usage(format!(
                "--steps must be at least 2, got {}",
                g.steps
            )));
        }
        if !g.t_min.is_finite() || !g.t_max.is_finite() || g.t_min >= g.t_max {
            return Err(CliError::Usage(format!(
                "need finite --t-min < --t-max, got {} and {}",
                g.t_min, g.t_max
            )));
        }
        Ok(TGrid {
            min: g.t_min,
            max: g.t_max,
            steps: g.steps,
        })
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let h = (self.max - self.min) / (self.steps - 1) as f64;
        (0..self.steps).map(move |i| {
            if i + 1 == self.steps {
                self.max
            } else {
                self.min + h * i as f64
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Dist {
        family: Family,
        grid: TGrid,
        nodes: usize,
    },
    FiniteCdf {
        params: SpikedParams,
        grid: TGrid,
        nodes: usize,
    },
    Mc {
        params: SpikedParams,
        ensemble: Ensemble,
        trials: usize,
    },
    Verify {
        suite: Suite,
    },
}

/// A fully validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

fn usage(e: swl_core::Error) -> CliError {
    CliError::Usage(e.to_string())
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> Result<Self, CliError> {
        match cli.command {
            Sub::Dist(d) => {
                let family: Family = d.family.parse().map_err(usage)?;
                let grid = TGrid::new(&d.grid)?;
                Ok(RunConfig {
                    command: Command::Dist {
                        family,
                        grid,
                        nodes: d.quad_nodes.unwrap_or(DEFAULT_LIMIT_NODES),
                    },
                    out: d.out,
                    seed: 0,
                })
            }
            Sub::FiniteCdf(f) => {
                let params = SpikedParams::new(f.m_samples, f.n, f.a).map_err(usage)?;
                if f.m_samples > MAX_FINITE_M {
                    return Err(CliError::Usage(format!(
                        "finite-cdf supports M <= {MAX_FINITE_M}, got {}",
                        f.m_samples
                    )));
                }
                let grid = TGrid::new(&f.grid)?;
                if grid.min <= 0.0 {
                    return Err(CliError::Usage(format!(
                        "finite-cdf needs --t-min > 0, got {}",
                        grid.min
                    )));
                }
                Ok(RunConfig {
                    command: Command::FiniteCdf {
                        params,
                        grid,
                        nodes: f.quad_nodes.unwrap_or(DEFAULT_CDF_NODES),
                    },
                    out: f.out,
                    seed: 0,
                })
            }
            Sub::Mc(m) => {
                let params = match (m.m_samples, m.gamma) {
                    (Some(ms), None) => SpikedParams::new(ms, m.n, m.a),
                    (None, Some(g)) => SpikedParams::from_gamma(m.n, g, m.a),
                    _ => unreachable!("clap enforces exactly one of --m-samples and --gamma"),
                }
                .map_err(usage)?;
                if m.trials == 0 {
                    return Err(CliError::Usage("--trials must be at least 1".into()));
                }
                let ensemble = match m.ensemble {
                    EnsembleArg::Quaternionic => Ensemble::Quaternionic,
                    EnsembleArg::Complex => Ensemble::Complex,
                };
                Ok(RunConfig {
                    command: Command::Mc {
                        params,
                        ensemble,
                        trials: m.trials,
                    },
                    out: m.out,
                    seed: m.seed,
                })
            }
            Sub::Verify(v) => Ok(RunConfig {
                command: Command::Verify { suite: v.suite },
                out: None,
                seed: v.seed,
            }),
        }
    }
}
