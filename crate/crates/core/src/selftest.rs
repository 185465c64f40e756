//! Invariant checks runnable outside the test harness.
//!
//! Solver checks use the caller's [`SolverConfig`], so a misconfiguration
//! (say an absurd determinant tolerance) shows up as failed checks rather
//! than being masked by a private default.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::fredholm::{solve_neumann, solve_nystrom, FredholmSystem, KernelSpec, SolverConfig};
use crate::quadrature::{gauss_rule, Interval};
use crate::scattering::{
    amplitude_range, coulomb_potential, greens_function, podolsky_potential, psi_coulomb_closed,
    psi_podolsky_closed, reduced_kernel, sample_wavefunction, PhysicalParams, PotentialSpec,
    ReducedKernelChoice, WaveKind,
};
use crate::special::{e1, e1_continued_fraction, e1_series, plane_wave};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn from_result(name: &'static str, result: Result<(bool, String)>) -> Self {
        match result {
            Ok((passed, detail)) => Self {
                name,
                passed,
                detail,
            },
            Err(err) => Self {
                name,
                passed: false,
                detail: err.to_string(),
            },
        }
    }
}

type Check = fn(&SolverConfig) -> Result<(bool, String)>;

const CHECKS: &[(&str, Check)] = &[
    ("e1_reference_values", e1_reference_values),
    ("e1_conjugate_symmetry", e1_conjugate_symmetry),
    ("e1_derivative", e1_derivative),
    ("e1_branch_overlap", e1_branch_overlap),
    ("quadrature_weight_sum", quadrature_weight_sum),
    ("rank1_determinant", rank1_determinant),
    ("rank1_resolvent_solution", rank1_resolvent_solution),
    ("characteristic_value", characteristic_value),
    ("resolvent_equation", resolvent_equation),
    ("rank2_determinant", rank2_determinant),
    ("cross_solver_agreement", cross_solver_agreement),
    ("greens_helmholtz_residual", greens_helmholtz_residual),
    ("potential_limits", potential_limits),
    ("closed_form_identity", closed_form_identity),
    ("stabilization_metric", stabilization_metric),
];

/// Runs every check in a fixed order.
pub fn run_selftest(config: &SolverConfig) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|(name, check)| CheckOutcome::from_result(name, check(config)))
        .collect()
}

fn unit() -> Interval {
    Interval::new(0.0, 1.0).expect("valid interval")
}

fn rank_one() -> KernelSpec {
    KernelSpec::separable(unit(), |x| x.into(), |t| t.into())
}

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Deterministic spread of points with `|z|` in `[r_lo, r_hi]` and argument
/// in `(-max_arg, max_arg)`, excluding the real axis.
pub fn sample_points(count: usize, r_lo: f64, r_hi: f64, max_arg: f64) -> Vec<Complex64> {
    let golden = 0.618_033_988_749_894_9;
    (0..count)
        .map(|i| {
            let u = (i as f64 + 0.5) / count as f64;
            let v = ((i as f64 + 1.0) * golden).fract();
            let r = r_lo + (r_hi - r_lo) * u;
            let theta = max_arg * (2.0 * v - 1.0);
            let theta = if theta.abs() < 1e-3 { 1e-3 } else { theta };
            Complex64::from_polar(r, theta)
        })
        .collect()
}

fn e1_reference_values(_: &SolverConfig) -> Result<(bool, String)> {
    let one = e1(re(1.0))?;
    let imag = e1(Complex64::i())?;
    let ten = e1(re(10.0))?;
    let err_one = (one - re(0.219_383_934_396)).norm();
    let err_imag = (imag - Complex64::new(-0.337_404, -0.624_713)).norm();
    let err_ten = (ten.re - 4.15697e-6).abs() / 4.15697e-6;
    Ok((
        err_one <= 1e-10 && err_imag <= 1e-5 && err_ten < 5e-6,
        format!(
            "E1(1)={:.12} E1(i)={:.6}{:+.6}i E1(10)={:.6e}",
            one.re, imag.re, imag.im, ten.re
        ),
    ))
}

fn e1_conjugate_symmetry(_: &SolverConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for z in sample_points(100, 0.1, 20.0, PI) {
        let a = e1(z.conj())?;
        let b = e1(z)?.conj();
        worst = worst.max((a - b).norm() / b.norm());
    }
    Ok((
        worst <= 1e-12,
        format!("max relative asymmetry {worst:.3e}"),
    ))
}

fn e1_derivative(_: &SolverConfig) -> Result<(bool, String)> {
    let h = 1e-5;
    let mut worst = 0.0f64;
    for z in sample_points(40, 0.5, 20.0, 0.9 * PI) {
        let exact = -(-z).exp() / z;
        for step in [re(h), Complex64::new(0.0, h)] {
            let fd = (e1(z + step)? - e1(z - step)?) / (2.0 * step);
            worst = worst.max((fd - exact).norm() / exact.norm());
        }
    }
    Ok((
        worst <= 1e-6,
        format!("max relative derivative error {worst:.3e}"),
    ))
}

fn e1_branch_overlap(_: &SolverConfig) -> Result<(bool, String)> {
    let worst = sample_points(100, 3.0, 5.0, 0.9 * PI)
        .into_iter()
        .map(|z| {
            let s = e1_series(z);
            (s - e1_continued_fraction(z)).norm() / s.norm()
        })
        .fold(0.0, f64::max);
    Ok((
        worst <= 1e-10,
        format!("max series/fraction gap {worst:.3e}"),
    ))
}

fn quadrature_weight_sum(config: &SolverConfig) -> Result<(bool, String)> {
    let iv = Interval::new(1.0, 5.0)?;
    let rule = config.rule(iv)?;
    let sum: f64 = rule.weights().iter().sum();
    let err = (sum - iv.length()).abs();
    Ok((err <= 1e-12, format!("weight sum error {err:.3e}")))
}

fn rank1_determinant(config: &SolverConfig) -> Result<(bool, String)> {
    let sys = FredholmSystem::new(&rank_one(), config)?;
    let det = sys.determinant(re(1.0)).value;
    let err = (det - re(2.0 / 3.0)).norm();
    let d2 = sys.coefficients().get(1).map_or(0.0, |d| d.norm());
    Ok((
        err <= 1e-10 && d2 <= 1e-10,
        format!("D(1)={:.15} |d2|={d2:.3e}", det.re),
    ))
}

fn rank1_resolvent_solution(config: &SolverConfig) -> Result<(bool, String)> {
    let sys = FredholmSystem::new(&rank_one(), config)?;
    let u = sys.solve(|x| x.into(), re(1.0), &[0.5])?.values()[0];
    let err = (u - re(0.75)).norm();
    Ok((err <= 1e-8, format!("u(0.5)={:.12} error {err:.3e}", u.re)))
}

fn characteristic_value(config: &SolverConfig) -> Result<(bool, String)> {
    let sys = FredholmSystem::new(&rank_one(), config)?;
    let resolvent = sys.resolvent(1.0, 1.0, re(3.0));
    let nystrom = solve_nystrom(&rank_one(), |x| x.into(), re(3.0), config);
    let describe = |e: &crate::Error| e.to_string();
    let passed = matches!(resolvent, Err(crate::Error::SingularDeterminant { .. }))
        && matches!(
            nystrom,
            Err(crate::Error::SingularMatrix { .. } | crate::Error::IllConditioned { .. })
        );
    Ok((
        passed,
        format!(
            "resolvent: {}; nystrom: {}",
            resolvent
                .as_ref()
                .map_or_else(describe, |v| format!("value {v}")),
            nystrom.as_ref().map_or_else(describe, |_| "solved".into()),
        ),
    ))
}

fn resolvent_equation(config: &SolverConfig) -> Result<(bool, String)> {
    let kernel = rank_one();
    let check_rule = gauss_rule(unit(), 24)?;
    let points = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut worst = 0.0f64;
    for lambda in [-1.0, 0.5, 1.0] {
        let lambda = re(lambda);
        let sys = FredholmSystem::new(&kernel, config)?;
        for &x in &points {
            for &t in &points {
                let r = sys.resolvent(x, t, lambda)?;
                let mut integral = Complex64::new(0.0, 0.0);
                for (s, w) in check_rule.iter() {
                    integral += w * kernel.eval(x, s) * sys.resolvent(s, t, lambda)?;
                }
                worst = worst.max((r - kernel.eval(x, t) - lambda * integral).norm());
            }
        }
    }
    Ok((worst <= 1e-8, format!("max residual {worst:.3e}")))
}

fn rank2_determinant(config: &SolverConfig) -> Result<(bool, String)> {
    let kernel = KernelSpec::general(unit(), |x, t| (x * t + x * x * t * t).into());
    let sys = FredholmSystem::new(&kernel, config)?;
    let mut worst = 0.0f64;
    for lambda in [-1.0, 1.0] {
        let exact = (1.0 - lambda / 3.0) * (1.0 - lambda / 5.0) - lambda * lambda / 16.0;
        worst = worst.max((sys.determinant(re(lambda)).value - re(exact)).norm());
    }
    Ok((worst <= 1e-8, format!("max deviation {worst:.3e}")))
}

/// Max pairwise deviation between the resolvent, Nyström and Neumann
/// solutions for the far-field Coulomb kernel on `[1, 5]`.
pub fn far_field_cross_solver(config: &SolverConfig, lambda: f64) -> Result<[f64; 3]> {
    let params = PhysicalParams::default();
    let interval = Interval::new(1.0, 5.0)?;
    let kernel = reduced_kernel(
        PotentialSpec::coulomb(params.charge)?,
        &params,
        interval,
        ReducedKernelChoice::SeparableFarField,
    )?;
    let k = params.k;
    let forcing = move |x: f64| plane_wave(x, k);
    let lambda = re(lambda);
    let grid: Vec<f64> = (0..=40).map(|i| 1.0 + 0.1 * i as f64).collect();

    let by_resolvent = FredholmSystem::new(&kernel, config)?.solve(forcing, lambda, &grid)?;
    let by_nystrom =
        solve_nystrom(&kernel, forcing, lambda, config)?.interpolate(&kernel, forcing, &grid)?;
    // the rank-one operator has norm ∫ g h = 0.8, so |λ| = 1 contracts by 0.8
    let by_neumann = solve_neumann(&kernel, forcing, lambda, 200, config)?
        .interpolate(&kernel, forcing, &grid)?;
    Ok([
        by_resolvent.max_deviation(&by_nystrom)?,
        by_resolvent.max_deviation(&by_neumann)?,
        by_nystrom.max_deviation(&by_neumann)?,
    ])
}

fn cross_solver_agreement(config: &SolverConfig) -> Result<(bool, String)> {
    let [rn, rm, nm] = far_field_cross_solver(config, -1.0)?;
    let worst = rn.max(rm).max(nm);
    Ok((
        worst <= 1e-6,
        format!("resolvent-nystrom {rn:.3e} resolvent-neumann {rm:.3e} nystrom-neumann {nm:.3e}"),
    ))
}

/// Worst relative residual of `u'' + k²u = 0` for `u(ρ) = ρ G(ρ)` using a
/// central difference with step `h` on `[0.5, 10]`.
pub fn helmholtz_residual(k: f64, h: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for i in 0..=950 {
        let rho = 0.5 + 0.01 * i as f64;
        let u = |r: f64| greens_function(r, k).map(|g| g * r);
        let center = u(rho)?;
        let second = (u(rho + h)? - 2.0 * center + u(rho - h)?) / (h * h);
        worst = worst.max((second + k * k * center).norm() / center.norm());
    }
    Ok(worst)
}

fn greens_helmholtz_residual(_: &SolverConfig) -> Result<(bool, String)> {
    let worst = helmholtz_residual(1.0, 1e-3)?;
    Ok((worst <= 1e-5, format!("max relative residual {worst:.3e}")))
}

fn potential_limits(_: &SolverConfig) -> Result<(bool, String)> {
    let mut ok = true;
    let mut origin_err = 0.0f64;
    for a in [0.5, 1.0, 2.0, 5.0] {
        origin_err =
            origin_err.max((podolsky_potential(0.0, 1.0, a)? - 1.0 / (4.0 * PI * a)).abs());
        for i in 0..=180 {
            let r = 10f64.powf(-6.0 + i as f64 / 20.0);
            let p = podolsky_potential(r, 1.0, a)?;
            let c = coulomb_potential(r, 1.0)?;
            ok &= (0.0..=c).contains(&p);
            if r > 10.0 * a {
                ok &= (p / c - 1.0).abs() < 0.01;
            }
        }
    }
    Ok((
        ok && origin_err <= 1e-12,
        format!("origin error {origin_err:.3e}"),
    ))
}

fn closed_form_identity(_: &SolverConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for x in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        worst =
            worst.max((psi_podolsky_closed(x, 0.0, -1.0)? - psi_coulomb_closed(x, -1.0)?).norm());
    }
    Ok((worst <= 1e-12, format!("max difference {worst:.3e}")))
}

/// Amplitude ranges `(coulomb, podolsky a = 5)` on `x ∈ [0.5, 5]`, step 0.01.
pub fn stabilization_ranges() -> Result<(f64, f64)> {
    let params = PhysicalParams::default();
    let grid: Vec<f64> = (0..=450).map(|i| 0.5 + 0.01 * i as f64).collect();
    let coulomb = sample_wavefunction(WaveKind::Coulomb, &grid, &params)?;
    let podolsky = sample_wavefunction(WaveKind::Podolsky { a: 5.0 }, &grid, &params)?;
    Ok((amplitude_range(&coulomb), amplitude_range(&podolsky)))
}

fn stabilization_metric(_: &SolverConfig) -> Result<(bool, String)> {
    let (coulomb, podolsky) = stabilization_ranges()?;
    Ok((
        podolsky < coulomb,
        format!("range coulomb {coulomb:.6e} podolsky(a=5) {podolsky:.6e}"),
    ))
}
