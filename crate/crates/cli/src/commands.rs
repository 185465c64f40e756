//! The five commands, computed entirely in memory.

use fredholm_core::scattering::{
    coulomb_potential, podolsky_potential, reduced_kernel, ClosedFormWave,
};
use fredholm_core::selftest::run_selftest;
use fredholm_core::special::plane_wave;
use fredholm_core::{solve_nystrom, Complex64, FredholmSystem, WaveKind};
use rayon::prelude::*;
use serde_json::json;

use crate::config::{CommandKind, Format, GridSpec, PotentialArg, RunConfig};
use crate::dataset::{format_number, label, FigureDataset};
use crate::error::CliResult;

/// Last series term, relative to `|Δ|`, above which `solve` warns.
pub const SERIES_WARN_RATIO: f64 = 1e-6;

/// Tables to write (by file stem) and lines for standard output.
#[derive(Debug, Clone, Default)]
pub struct CommandOutput {
    pub files: Vec<(String, FigureDataset)>,
    pub report: Vec<String>,
    /// Set when a check failed without an error being raised.
    pub failed: bool,
}

pub fn execute(config: &RunConfig) -> CliResult<CommandOutput> {
    match config.command {
        CommandKind::Potentials => potentials(config),
        CommandKind::ClosedForm => closed_form(config),
        CommandKind::Solve => solve(config),
        CommandKind::Figures => figures(config),
        CommandKind::Selftest => Ok(selftest(config)),
    }
}

/// Closed-form waves for several kinds on one grid, evaluated in parallel.
fn waves(kinds: &[WaveKind], grid: &[f64], lambda: f64) -> CliResult<Vec<Vec<Complex64>>> {
    kinds
        .par_iter()
        .map(|&kind| {
            let wave = ClosedFormWave::new(kind, lambda)?;
            grid.iter()
                .map(|&x| wave.eval(x))
                .collect::<fredholm_core::Result<Vec<_>>>()
        })
        .collect::<fredholm_core::Result<Vec<_>>>()
        .map_err(Into::into)
}

fn podolsky_prefix(a: f64) -> String {
    format!("podolsky_a{}_", label(a))
}

fn potentials(config: &RunConfig) -> CliResult<CommandOutput> {
    let r = config.grid.points();
    let charge = config.physical.charge;
    let mut table = FigureDataset::new();
    table.push("r", r.clone())?;
    let coulomb = r
        .iter()
        .map(|&r| coulomb_potential(r, charge))
        .collect::<fredholm_core::Result<Vec<_>>>()?;
    table.push("coulomb", coulomb)?;
    for a in config.curve_a_values() {
        let values = r
            .iter()
            .map(|&r| podolsky_potential(r, charge, a))
            .collect::<fredholm_core::Result<Vec<_>>>()?;
        table.push(format!("podolsky_a{}", label(a)), values)?;
    }
    Ok(CommandOutput {
        files: vec![("potentials".into(), table)],
        ..Default::default()
    })
}

fn closed_form(config: &RunConfig) -> CliResult<CommandOutput> {
    let grid = config.grid.points();
    let a_values = config.curve_a_values();
    let kinds: Vec<WaveKind> = std::iter::once(WaveKind::Coulomb)
        .chain(a_values.iter().map(|&a| WaveKind::Podolsky { a }))
        .collect();
    let values = waves(&kinds, &grid, config.lambda)?;
    let mut table = FigureDataset::new();
    table.push("x", grid)?;
    table.push_wave("coulomb_", &values[0])?;
    for (a, v) in a_values.iter().zip(&values[1..]) {
        table.push_wave(&podolsky_prefix(*a), v)?;
    }
    Ok(CommandOutput {
        files: vec![("closed_form".into(), table)],
        ..Default::default()
    })
}

fn max_gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p - q).norm())
        .fold(0.0, f64::max)
}

fn solve(config: &RunConfig) -> CliResult<CommandOutput> {
    let params = config.effective_params();
    let kernel = reduced_kernel(
        config.potential_spec()?,
        &params,
        config.interval,
        config.kernel_choice,
    )?;
    let k = params.k;
    let forcing = move |x: f64| plane_wave(x, k);
    let lambda = Complex64::new(config.lambda, 0.0);
    let grid = config.grid.points();

    let system = FredholmSystem::new(&kernel, &config.solver)?;
    let det = system.determinant(lambda);
    let by_resolvent = system.solve(forcing, lambda, &grid)?;
    let nodal = solve_nystrom(&kernel, forcing, lambda, &config.solver)?;
    let by_nystrom = nodal.interpolate(&kernel, forcing, &grid)?;

    let interval = config.interval;
    let closed =
        if config.closed_forms_apply() && interval.lower() == 1.0 && interval.upper() == 5.0 {
            let kind = match config.potential {
                PotentialArg::Coulomb => WaveKind::Coulomb,
                PotentialArg::Podolsky => WaveKind::Podolsky {
                    a: config.a_values[0],
                },
            };
            Some(waves(&[kind], &grid, config.lambda)?.remove(0))
        } else {
            None
        };

    let mut table = FigureDataset::new();
    table.push("x", grid)?;
    table.push_wave("resolvent_", by_resolvent.values())?;
    table.push_wave("nystrom_", by_nystrom.values())?;

    let mut report = vec![
        format!(
            "determinant {},{}",
            format_number(det.value.re),
            format_number(det.value.im)
        ),
        format!("series_last_term {}", format_number(det.last_term)),
    ];
    if det.last_term > SERIES_WARN_RATIO * det.value.norm() {
        report.push(format!(
            "warning: determinant series not converged at order {}; raise --series-order or trust the Nystrom columns",
            config.solver.series_order_max
        ));
    }
    if let Some(rcond) = nodal.rcond {
        report.push(format!("nystrom_rcond {}", format_number(rcond)));
    }
    report.push(format!(
        "max_deviation resolvent_nystrom {}",
        format_number(by_resolvent.max_deviation(&by_nystrom)?)
    ));
    match &closed {
        Some(values) => {
            table.push_wave("closed_", values)?;
            report.push(format!(
                "max_deviation resolvent_closed {}",
                format_number(max_gap(by_resolvent.values(), values))
            ));
            report.push(format!(
                "max_deviation nystrom_closed {}",
                format_number(max_gap(by_nystrom.values(), values))
            ));
        }
        None => report.push("closed form omitted (needs k = 1 on the interval 1:5)".into()),
    }
    Ok(CommandOutput {
        files: vec![("solve".into(), table)],
        report,
        failed: false,
    })
}

/// Default surface grids for figure 4.
pub fn surface_grids() -> (GridSpec, GridSpec) {
    (
        GridSpec {
            start: 0.1,
            stop: 10.0,
            step: 0.1,
        },
        GridSpec {
            start: 0.5,
            stop: 50.0,
            step: 0.5,
        },
    )
}

fn figures(config: &RunConfig) -> CliResult<CommandOutput> {
    let lambda = config.lambda;
    let grid = config.grid.points();

    let mut fig1 = FigureDataset::new();
    fig1.push("x", grid.clone())?;
    fig1.push_wave("", &waves(&[WaveKind::Coulomb], &grid, lambda)?[0])?;

    let a_values = config.curve_a_values();
    let kinds: Vec<WaveKind> = a_values.iter().map(|&a| WaveKind::Podolsky { a }).collect();
    let mut fig2 = FigureDataset::new();
    fig2.push("x", grid.clone())?;
    for (a, v) in a_values.iter().zip(waves(&kinds, &grid, lambda)?) {
        fig2.push_wave(&podolsky_prefix(*a), &v)?;
    }

    let overlay = [0.0, 2.0, 5.0];
    let kinds: Vec<WaveKind> = std::iter::once(WaveKind::Coulomb)
        .chain(overlay.iter().map(|&a| WaveKind::Podolsky { a }))
        .collect();
    let values = waves(&kinds, &grid, lambda)?;
    let mut fig3 = FigureDataset::new();
    fig3.push("x", grid)?;
    fig3.push_wave("coulomb_", &values[0])?;
    for (a, v) in overlay.iter().zip(&values[1..]) {
        fig3.push_wave(&podolsky_prefix(*a), v)?;
    }

    let (x_grid, a_grid) = surface_grids();
    let xs = x_grid.points();
    let a_list = a_grid.points();
    let kinds: Vec<WaveKind> = a_list.iter().map(|&a| WaveKind::Podolsky { a }).collect();
    let surface = waves(&kinds, &xs, lambda)?;
    let mut fig4 = FigureDataset::new();
    fig4.push(
        "x",
        a_list.iter().flat_map(|_| xs.iter().copied()).collect(),
    )?;
    fig4.push(
        "a",
        a_list
            .iter()
            .flat_map(|&a| std::iter::repeat_n(a, xs.len()))
            .collect(),
    )?;
    fig4.push_wave("", &surface.concat())?;

    Ok(CommandOutput {
        files: vec![
            ("fig1".into(), fig1),
            ("fig2".into(), fig2),
            ("fig3".into(), fig3),
            ("fig4".into(), fig4),
        ],
        ..Default::default()
    })
}

fn selftest(config: &RunConfig) -> CommandOutput {
    let outcomes = run_selftest(&config.solver);
    let failed = outcomes.iter().any(|c| !c.passed);
    let report = match config.format {
        Format::Csv => outcomes
            .iter()
            .map(|c| {
                let status = if c.passed { "PASS" } else { "FAIL" };
                format!("{status} {} {}", c.name, c.detail)
            })
            .collect(),
        Format::Json => {
            let checks: Vec<_> = outcomes
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                .collect();
            let doc = json!({ "passed": !failed, "checks": checks });
            vec![serde_json::to_string_pretty(&doc).expect("plain values serialize")]
        }
    };
    CommandOutput {
        files: Vec::new(),
        report,
        failed,
    }
}
