//! Command-line arguments and their validated form.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use fredholm_core::scattering::derive_params;
use fredholm_core::{
    Interval, PhysicalParams, PotentialSpec, ReducedKernelChoice, RuleKind, SolverConfig,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "FREDHOLM_SEED_THREADS";

const MAX_GRID_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Potentials,
    ClosedForm,
    Solve,
    Figures,
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelArg {
    Regularized,
    Separable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleArg {
    Gauss,
    Midpoint,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialArg {
    Coulomb,
    Podolsky,
}

/// Fredholm-equation solver for Coulomb and Podolsky scattering.
#[derive(Debug, Clone, Parser)]
#[command(name = "fredholm", version, allow_negative_numbers = true)]
pub struct Args {
    #[arg(long, value_enum, default_value_t = CommandKind::Figures)]
    pub command: CommandKind,
    /// Podolsky screening length; repeat for several curves.
    #[arg(long = "a", value_name = "A")]
    pub a: Vec<f64>,
    /// Radial integration interval `lo:hi`.
    #[arg(long, default_value = "1:5")]
    pub interval: String,
    /// Output grid `start:stop:step`.
    #[arg(long, default_value = "0.05:10:0.01")]
    pub grid: String,
    #[arg(long, default_value_t = 2.0)]
    pub mass: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 0.25)]
    pub energy: f64,
    #[arg(long, default_value_t = 1.0)]
    pub charge: f64,
    /// Coupling override; defaults to -mQ²/(2ħ²).
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Potential used by `solve`; Podolsky takes a single `--a`.
    #[arg(long, value_enum, default_value_t = PotentialArg::Coulomb)]
    pub potential: PotentialArg,
    #[arg(long, default_value_t = 128)]
    pub nodes: usize,
    #[arg(long, default_value_t = 4)]
    pub series_order: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub det_tolerance: f64,
    #[arg(long, value_enum, default_value_t = RuleArg::Gauss)]
    pub rule: RuleArg,
    #[arg(long, value_enum, default_value_t = KernelArg::Separable)]
    pub kernel: KernelArg,
    /// Smoothing length of the regularized Green kernel.
    #[arg(long, default_value_t = ReducedKernelChoice::DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

/// Evenly spaced abscissae `start + i·step`, `i = 0, 1, …` up to `stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, step: f64) -> CliResult<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(CliError::Validation("grid bounds must be finite".into()));
        }
        if step <= 0.0 {
            return Err(CliError::Validation(format!(
                "grid step must be positive, got {step}"
            )));
        }
        if stop < start {
            return Err(CliError::Validation(format!(
                "grid stop {stop} lies below start {start}"
            )));
        }
        let grid = Self { start, stop, step };
        if (stop - start) / step >= MAX_GRID_POINTS as f64 {
            return Err(CliError::Validation(format!(
                "grid has more than {MAX_GRID_POINTS} points"
            )));
        }
        Ok(grid)
    }

    pub fn len(&self) -> usize {
        // tolerate the rounding in e.g. (10 - 0.05) / 0.01
        ((self.stop - self.start) / self.step * (1.0 + 1e-12) + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| self.start + i as f64 * self.step)
            .collect()
    }
}

fn parse_reals(text: &str, parts: usize, what: &str) -> CliResult<Vec<f64>> {
    let values: Vec<f64> = text
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Validation(format!("cannot parse {what} {text:?}")))?;
    if values.len() != parts {
        return Err(CliError::Validation(format!(
            "{what} {text:?} must have {parts} colon-separated numbers"
        )));
    }
    Ok(values)
}

pub fn parse_interval(text: &str) -> CliResult<Interval> {
    let v = parse_reals(text, 2, "interval")?;
    Ok(Interval::new(v[0], v[1])?)
}

pub fn parse_grid(text: &str) -> CliResult<GridSpec> {
    let v = parse_reals(text, 3, "grid")?;
    GridSpec::new(v[0], v[1], v[2])
}

/// Everything a command needs, checked before any output is produced.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub interval: Interval,
    pub grid: GridSpec,
    /// Screening lengths given with `--a`; empty means the command default.
    pub a_values: Vec<f64>,
    pub physical: PhysicalParams,
    /// Coupling actually used.
    pub lambda: f64,
    pub potential: PotentialArg,
    pub solver: SolverConfig,
    pub kernel_choice: ReducedKernelChoice,
    pub output_path: PathBuf,
    pub format: Format,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn from_args(args: &Args, threads_env: Option<&str>) -> CliResult<Self> {
        let interval = parse_interval(&args.interval)?;
        let grid = parse_grid(&args.grid)?;
        let physical = derive_params(args.mass, args.hbar, args.energy, args.charge)?;
        let lambda = args.lambda.unwrap_or(physical.lambda);
        if !lambda.is_finite() {
            return Err(CliError::Validation(format!(
                "lambda must be finite, got {lambda}"
            )));
        }

        for (i, &a) in args.a.iter().enumerate() {
            if !(a >= 0.0 && a.is_finite()) {
                return Err(CliError::Validation(format!(
                    "screening length must be finite and >= 0, got {a}"
                )));
            }
            if args.a[..i].contains(&a) {
                return Err(CliError::Validation(format!(
                    "screening length {a} given twice"
                )));
            }
        }

        let rule_kind = match args.rule {
            RuleArg::Gauss => RuleKind::Gauss,
            RuleArg::Midpoint => RuleKind::Midpoint,
            RuleArg::Left => RuleKind::LeftEndpoint,
        };
        let solver = SolverConfig {
            series_order_max: args.series_order,
            nodes: args.nodes,
            det_tolerance: args.det_tolerance,
            rule_kind,
        };
        solver.validate()?;
        solver.rule(interval)?;

        let kernel_choice = match args.kernel {
            KernelArg::Separable => ReducedKernelChoice::SeparableFarField,
            KernelArg::Regularized => {
                if !(args.epsilon > 0.0 && args.epsilon.is_finite()) {
                    return Err(CliError::Validation(format!(
                        "epsilon must be positive, got {}",
                        args.epsilon
                    )));
                }
                ReducedKernelChoice::RegularizedGreen {
                    epsilon: args.epsilon,
                }
            }
        };

        let threads = match threads_env.map(str::trim) {
            None | Some("") => None,
            Some(text) => match text.parse::<usize>() {
                Ok(n) if n > 0 => Some(n),
                _ => {
                    return Err(CliError::Validation(format!(
                        "{THREADS_ENV} must be a positive integer, got {text:?}"
                    )))
                }
            },
        };

        let config = Self {
            command: args.command,
            interval,
            grid,
            a_values: args.a.clone(),
            physical,
            lambda,
            potential: args.potential,
            solver,
            kernel_choice,
            output_path: args.out.clone(),
            format: args.format,
            threads,
        };
        config.check_command()?;
        Ok(config)
    }

    fn check_command(&self) -> CliResult<()> {
        use CommandKind::*;
        if matches!(self.command, Potentials | ClosedForm | Solve | Figures)
            && self.grid.start <= 0.0
        {
            return Err(CliError::Validation(format!(
                "grid must start above 0 (x = 0 is singular), got {}",
                self.grid.start
            )));
        }
        if matches!(self.command, ClosedForm | Figures) && !self.closed_forms_apply() {
            return Err(CliError::Validation(format!(
                "closed forms require wave number k = 1, got {}",
                self.physical.k
            )));
        }
        if self.command == Solve {
            if self.potential == PotentialArg::Podolsky && self.a_values.len() != 1 {
                return Err(CliError::Validation(
                    "solve with the Podolsky potential takes exactly one --a".into(),
                ));
            }
            if self.potential == PotentialArg::Coulomb && !self.a_values.is_empty() {
                return Err(CliError::Validation(
                    "--a is only meaningful with --potential podolsky".into(),
                ));
            }
        }
        Ok(())
    }

    /// The closed forms belong to `k = 1`.
    pub fn closed_forms_apply(&self) -> bool {
        (self.physical.k - 1.0).abs() <= 1e-12
    }

    /// Screening lengths for the per-`a` curves of `potentials`, `closed-form`
    /// and figure 2.
    pub fn curve_a_values(&self) -> Vec<f64> {
        if self.a_values.is_empty() {
            vec![1.0, 2.0, 3.0, 4.0, 5.0]
        } else {
            self.a_values.clone()
        }
    }

    pub fn potential_spec(&self) -> CliResult<PotentialSpec> {
        let charge = self.physical.charge;
        Ok(match self.potential {
            PotentialArg::Coulomb => PotentialSpec::coulomb(charge)?,
            PotentialArg::Podolsky => PotentialSpec::podolsky(charge, self.a_values[0])?,
        })
    }

    /// Physical parameters with the effective coupling.
    pub fn effective_params(&self) -> PhysicalParams {
        PhysicalParams {
            lambda: self.lambda,
            ..self.physical
        }
    }

    /// The resolved configuration, minus the output location and thread count,
    /// which do not affect results.
    pub fn meta(&self) -> Value {
        let rule = match self.solver.rule_kind {
            RuleKind::Gauss => "gauss",
            RuleKind::Midpoint => "midpoint",
            RuleKind::LeftEndpoint => "left",
        };
        let kernel = match self.kernel_choice {
            ReducedKernelChoice::SeparableFarField => json!({ "kind": "separable" }),
            ReducedKernelChoice::RegularizedGreen { epsilon } => {
                json!({ "kind": "regularized", "epsilon": epsilon })
            }
            ReducedKernelChoice::ClosedFormOnly => json!({ "kind": "closed-form" }),
        };
        json!({
            "command": self.command,
            "interval": [self.interval.lower(), self.interval.upper()],
            "grid": self.grid,
            "a_values": self.a_values,
            "physical": {
                "mass": self.physical.mass,
                "hbar": self.physical.hbar,
                "energy": self.physical.energy,
                "charge": self.physical.charge,
                "k": self.physical.k,
                "lambda": self.physical.lambda,
            },
            "lambda": self.lambda,
            "potential": self.potential,
            "solver": {
                "series_order_max": self.solver.series_order_max,
                "nodes": self.solver.nodes,
                "det_tolerance": self.solver.det_tolerance,
                "rule": rule,
            },
            "kernel": kernel,
            "format": self.format,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}
