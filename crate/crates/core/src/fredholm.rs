//! Second-kind Fredholm equations
//!
//! ```text
//! u(x) = f(x) + λ ∫_a^b K(x,t) u(t) dt
//! ```
//!
//! solved two ways:
//!
//! * through the Fredholm determinant `Δ(λ)` and first minor `Δ(x,t;λ)`,
//!   whose ratio is the resolvent kernel `R(x,t;λ)`, giving
//!   `u(x) = f(x) + λ ∫ R(x,t;λ) f(t) dt`;
//! * by Nyström discretization `(δ_pq - λ K_pq w_q) u_q = f_p`, solved by row
//!   reduction.
//!
//! A fixed-point (Neumann series) iteration is included as a third, independent
//! route for small `|λ|`.
//!
//! # Series coefficients
//!
//! With `Δ(λ) = 1 + Σ (-λ)^n/n! d_n` and `Δ(x,t;λ) = K(x,t) + Σ (-λ)^n/n! d_n(x,t)`,
//! the `n`-fold integrals of `n×n` (resp. bordered `(n+1)×(n+1)`) kernel
//! determinants obey Fredholm's recurrence
//!
//! ```text
//! d_n        = ∫ d_{n-1}(s,s) ds
//! d_n(x,t)   = d_n K(x,t) - n ∫ K(x,s) d_{n-1}(s,t) ds,      d_0(x,t) = K(x,t)
//! ```
//!
//! which is the Laplace expansion of the bordered determinant along its first
//! row. It holds term by term for the tensor-product quadrature sums, so
//! evaluating it with the configured rule yields exactly the tensor-product
//! approximation of every `d_n` at `O(N³)` cost per order instead of `O(Nⁿ)`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::linalg::{solve_checked, Matrix};
use crate::quadrature::{gauss_rule, uniform_rule, Interval, QuadratureRule, UniformPlacement};

/// Highest supported truncation order of the determinant series.
pub const MAX_SERIES_ORDER: usize = 6;

/// Growth of the Neumann iterate norm that counts as divergence.
pub const DIVERGENCE_GROWTH: f64 = 1e6;

pub type KernelFn = dyn Fn(f64, f64) -> Complex64 + Send + Sync;
pub type UnaryFn = dyn Fn(f64) -> Complex64 + Send + Sync;

#[derive(Clone)]
enum KernelForm {
    General(Arc<KernelFn>),
    Separable { g: Arc<UnaryFn>, h: Arc<UnaryFn> },
}

/// A complex kernel `K(x,t)` together with its integration domain.
#[derive(Clone)]
pub struct KernelSpec {
    form: KernelForm,
    domain: Interval,
}

impl KernelSpec {
    pub fn general<F>(domain: Interval, eval: F) -> Self
    where
        F: Fn(f64, f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            form: KernelForm::General(Arc::new(eval)),
            domain,
        }
    }

    /// Rank-one kernel `K(x,t) = g(x)·h(t)`.
    pub fn separable<G, H>(domain: Interval, g: G, h: H) -> Self
    where
        G: Fn(f64) -> Complex64 + Send + Sync + 'static,
        H: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            form: KernelForm::Separable {
                g: Arc::new(g),
                h: Arc::new(h),
            },
            domain,
        }
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn is_separable(&self) -> bool {
        matches!(self.form, KernelForm::Separable { .. })
    }

    pub fn eval(&self, x: f64, t: f64) -> Complex64 {
        match &self.form {
            KernelForm::General(k) => k(x, t),
            KernelForm::Separable { g, h } => g(x) * h(t),
        }
    }

    pub fn try_eval(&self, x: f64, t: f64) -> Result<Complex64> {
        ensure_finite(self.eval(x, t), x, t)
    }
}

impl fmt::Debug for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.form {
            KernelForm::General(_) => "General",
            KernelForm::Separable { .. } => "Separable",
        };
        f.debug_struct("KernelSpec")
            .field("form", &kind)
            .field("domain", &self.domain)
            .finish()
    }
}

/// Quadrature family used to discretize the integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RuleKind {
    #[default]
    Gauss,
    /// Uniform cells sampled at their midpoints.
    Midpoint,
    /// Uniform cells sampled at their left ends (literal Riemann sum).
    LeftEndpoint,
}

impl RuleKind {
    pub fn build(self, interval: Interval, nodes: usize) -> Result<QuadratureRule> {
        match self {
            RuleKind::Gauss => gauss_rule(interval, nodes),
            RuleKind::Midpoint => uniform_rule(interval, nodes, UniformPlacement::Midpoint),
            RuleKind::LeftEndpoint => uniform_rule(interval, nodes, UniformPlacement::LeftEndpoint),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Highest `n` kept in the determinant and first-minor series.
    pub series_order_max: usize,
    /// Quadrature size.
    pub nodes: usize,
    /// `|Δ(λ)|` below this is treated as a characteristic value.
    pub det_tolerance: f64,
    pub rule_kind: RuleKind,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            series_order_max: 4,
            nodes: 128,
            det_tolerance: 1e-10,
            rule_kind: RuleKind::Gauss,
        }
    }
}

impl SolverConfig {
    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.nodes = nodes;
        self
    }

    pub fn with_series_order(mut self, order: usize) -> Self {
        self.series_order_max = order;
        self
    }

    pub fn with_det_tolerance(mut self, tol: f64) -> Self {
        self.det_tolerance = tol;
        self
    }

    pub fn with_rule(mut self, rule_kind: RuleKind) -> Self {
        self.rule_kind = rule_kind;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_SERIES_ORDER).contains(&self.series_order_max) {
            return Err(Error::InvalidArgument(format!(
                "series order must be in 1..={MAX_SERIES_ORDER}, got {}",
                self.series_order_max
            )));
        }
        if self.nodes < 2 {
            return Err(Error::InvalidArgument(format!(
                "at least 2 quadrature nodes required, got {}",
                self.nodes
            )));
        }
        if !(self.det_tolerance > 0.0 && self.det_tolerance.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "determinant tolerance must be positive, got {}",
                self.det_tolerance
            )));
        }
        Ok(())
    }

    pub fn rule(&self, interval: Interval) -> Result<QuadratureRule> {
        self.validate()?;
        self.rule_kind.build(interval, self.nodes)
    }
}

/// Complex samples on a strictly increasing real grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Vec<f64>,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "grid has {} points but {} values were given",
                grid.len(),
                values.len()
            )));
        }
        check_grid(&grid)?;
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.grid.iter().copied().zip(self.values.iter().copied())
    }

    /// `max |u_i - v_i|` against another sampling of the same grid.
    pub fn max_deviation(&self, other: &SampledFunction) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::InvalidArgument(
                "cannot compare samples on different grids".into(),
            ));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(
            "grid contains non-finite points".into(),
        ));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "grid must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// A truncated series value plus the size of the last term kept, so callers
/// can judge whether the truncation order is sufficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEstimate {
    pub value: Complex64,
    pub last_term: f64,
}

/// Kernel discretized on a quadrature rule, with the determinant-series
/// coefficients `d_1..d_M` precomputed.
#[derive(Debug, Clone)]
pub struct FredholmSystem {
    kernel: KernelSpec,
    rule: QuadratureRule,
    /// `K(t_i, t_j)`
    kernel_matrix: Matrix,
    /// `K(t_i, t_j)·w_j`
    weighted: Matrix,
    coefficients: Vec<Complex64>,
    config: SolverConfig,
}

impl FredholmSystem {
    pub fn new(kernel: &KernelSpec, config: &SolverConfig) -> Result<Self> {
        let rule = config.rule(kernel.domain())?;
        let nodes = rule.nodes();
        let n = nodes.len();

        let mut kernel_matrix = Matrix::zeros(n);
        for (i, &x) in nodes.iter().enumerate() {
            for (j, &t) in nodes.iter().enumerate() {
                kernel_matrix.set(i, j, kernel.try_eval(x, t)?);
            }
        }
        let weights = rule.weights();
        let weighted = Matrix::from_fn(n, |i, j| kernel_matrix.get(i, j) * weights[j]);

        // d_n = Σ_i w_i B_{n-1}(t_i, t_i),  B_n = d_n K - n (K W) B_{n-1}
        let order = config.series_order_max;
        let mut coefficients = Vec::with_capacity(order);
        let mut minor = kernel_matrix.clone();
        for m in 1..=order {
            let d: Complex64 = (0..n).map(|i| weights[i] * minor.get(i, i)).sum();
            coefficients.push(d);
            if m < order {
                let product = weighted.mul(&minor);
                let scale = m as f64;
                minor = Matrix::from_fn(n, |i, j| {
                    d * kernel_matrix.get(i, j) - scale * product.get(i, j)
                });
            }
        }

        Ok(Self {
            kernel: kernel.clone(),
            rule,
            kernel_matrix,
            weighted,
            coefficients,
            config: *config,
        })
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    /// Discretized `d_1, …, d_M`.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// `Δ(λ)` truncated at the configured order.
    pub fn determinant(&self, lambda: Complex64) -> SeriesEstimate {
        let mut value = Complex64::new(1.0, 0.0);
        let mut last_term = 0.0;
        let mut factor = Complex64::new(1.0, 0.0);
        for (idx, d) in self.coefficients.iter().enumerate() {
            factor *= -lambda / (idx + 1) as f64;
            let term = factor * d;
            value += term;
            last_term = term.norm();
        }
        SeriesEstimate { value, last_term }
    }

    /// `Δ(x,t;λ)` truncated at the configured order.
    pub fn first_minor(&self, x: f64, t: f64, lambda: Complex64) -> Result<SeriesEstimate> {
        let column = self
            .rule
            .nodes()
            .iter()
            .map(|&s| self.kernel.try_eval(s, t))
            .collect::<Result<Vec<_>>>()?;
        let leading = self.kernel.try_eval(x, t)?;
        self.bordered_series(x, leading, &column, lambda)
    }

    /// `R(x,t;λ) = Δ(x,t;λ) / Δ(λ)`.
    pub fn resolvent(&self, x: f64, t: f64, lambda: Complex64) -> Result<Complex64> {
        let det = self.checked_determinant(lambda)?;
        Ok(self.first_minor(x, t, lambda)?.value / det)
    }

    /// `u(x) = f(x) + λ ∫ R(x,t;λ) f(t) dt` on `grid`.
    ///
    /// The integral against `f` is pushed through the first-minor
    /// recurrence, so the cost is one `O(N²)` pass plus `O(N)` per grid point.
    pub fn solve<F>(&self, f: F, lambda: Complex64, grid: &[f64]) -> Result<SampledFunction>
    where
        F: Fn(f64) -> Complex64,
    {
        check_grid(grid)?;
        let det = self.checked_determinant(lambda)?;
        let forcing = self.forcing_at_nodes(&f)?;
        let weights = self.rule.weights();
        let weighted_forcing: Vec<Complex64> =
            forcing.iter().zip(weights).map(|(v, w)| v * w).collect();
        // column of ∫ K(t_i, t) f(t) dt
        let column = self.kernel_matrix.mul_vec(&weighted_forcing);

        let mut values = Vec::with_capacity(grid.len());
        for &x in grid {
            let row = self.kernel_row(x)?;
            let leading: Complex64 = row.iter().zip(&weighted_forcing).map(|(k, v)| k * v).sum();
            let integral = self
                .bordered_series_with_row(&row, leading, &column, lambda)
                .value;
            let fx = ensure_finite(f(x), x, x)?;
            values.push(fx + lambda * integral / det);
        }
        SampledFunction::new(grid.to_vec(), values)
    }

    fn checked_determinant(&self, lambda: Complex64) -> Result<Complex64> {
        let det = self.determinant(lambda).value;
        if det.norm() < self.config.det_tolerance {
            return Err(Error::SingularDeterminant {
                magnitude: det.norm(),
                tolerance: self.config.det_tolerance,
            });
        }
        Ok(det)
    }

    fn forcing_at_nodes<F>(&self, f: &F) -> Result<Vec<Complex64>>
    where
        F: Fn(f64) -> Complex64,
    {
        self.rule
            .nodes()
            .iter()
            .map(|&t| ensure_finite(f(t), t, t))
            .collect()
    }

    fn kernel_row(&self, x: f64) -> Result<Vec<Complex64>> {
        self.rule
            .nodes()
            .iter()
            .map(|&s| self.kernel.try_eval(x, s))
            .collect()
    }

    fn bordered_series(
        &self,
        x: f64,
        leading: Complex64,
        column: &[Complex64],
        lambda: Complex64,
    ) -> Result<SeriesEstimate> {
        let row = self.kernel_row(x)?;
        Ok(self.bordered_series_with_row(&row, leading, column, lambda))
    }

    /// Sums `Σ_n (-λ)^n/n! β_n` where `β_0 = leading`, `b_0 = column` and
    ///
    /// ```text
    /// β_n = d_n β_0 - n Σ_j row_j w_j b_{n-1,j}
    /// b_n = d_n b_0 - n (K W) b_{n-1}
    /// ```
    ///
    /// With `row = K(x,·)`, `column = K(·,t)`, `leading = K(x,t)` this is the
    /// first minor; replacing `t` by an integral against `f` gives the
    /// resolvent applied to `f`.
    fn bordered_series_with_row(
        &self,
        row: &[Complex64],
        leading: Complex64,
        column: &[Complex64],
        lambda: Complex64,
    ) -> SeriesEstimate {
        let weights = self.rule.weights();
        let order = self.coefficients.len();
        let mut value = leading;
        let mut last_term = 0.0;
        let mut factor = Complex64::new(1.0, 0.0);
        let mut current = column.to_vec();
        for (idx, &d) in self.coefficients.iter().enumerate() {
            let m = (idx + 1) as f64;
            let contraction: Complex64 = row
                .iter()
                .zip(weights)
                .zip(&current)
                .map(|((k, w), b)| k * w * b)
                .sum();
            let beta = d * leading - m * contraction;
            factor *= -lambda / m;
            let term = factor * beta;
            value += term;
            last_term = term.norm();
            if idx + 1 < order {
                let propagated = self.weighted.mul_vec(&current);
                current = column
                    .iter()
                    .zip(&propagated)
                    .map(|(c, p)| d * c - m * p)
                    .collect();
            }
        }
        SeriesEstimate { value, last_term }
    }
}

/// `Δ(λ)` for `kernel`, with the magnitude of the last series term.
pub fn fredholm_determinant(
    kernel: &KernelSpec,
    lambda: Complex64,
    config: &SolverConfig,
) -> Result<SeriesEstimate> {
    Ok(FredholmSystem::new(kernel, config)?.determinant(lambda))
}

/// First Fredholm minor `Δ(x,t;λ)`.
pub fn fredholm_first_minor(
    kernel: &KernelSpec,
    x: f64,
    t: f64,
    lambda: Complex64,
    config: &SolverConfig,
) -> Result<SeriesEstimate> {
    FredholmSystem::new(kernel, config)?.first_minor(x, t, lambda)
}

/// Resolvent kernel `R(x,t;λ)`. Fails with [`Error::SingularDeterminant`]
/// when `|Δ(λ)|` is below `config.det_tolerance`.
pub fn resolvent(
    kernel: &KernelSpec,
    x: f64,
    t: f64,
    lambda: Complex64,
    config: &SolverConfig,
) -> Result<Complex64> {
    FredholmSystem::new(kernel, config)?.resolvent(x, t, lambda)
}

/// Solution via the resolvent, sampled on `grid`.
pub fn solve_resolvent<F>(
    kernel: &KernelSpec,
    f: F,
    lambda: Complex64,
    grid: &[f64],
    config: &SolverConfig,
) -> Result<SampledFunction>
where
    F: Fn(f64) -> Complex64,
{
    FredholmSystem::new(kernel, config)?.solve(f, lambda, grid)
}

/// Values of the unknown at the quadrature nodes, from which the solution
/// anywhere follows by the Nyström interpolation formula.
#[derive(Debug, Clone)]
pub struct NodalSolution {
    rule: QuadratureRule,
    lambda: Complex64,
    values: Vec<Complex64>,
    /// Reciprocal condition number of the linear system, when one was solved.
    pub rcond: Option<f64>,
}

impl NodalSolution {
    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at_nodes(&self) -> SampledFunction {
        SampledFunction {
            grid: self.rule.nodes().to_vec(),
            values: self.values.clone(),
        }
    }

    /// `u(x) = f(x) + λ Σ_q w_q K(x, t_q) u_q` on `grid`.
    pub fn interpolate<F>(&self, kernel: &KernelSpec, f: F, grid: &[f64]) -> Result<SampledFunction>
    where
        F: Fn(f64) -> Complex64,
    {
        check_grid(grid)?;
        let mut values = Vec::with_capacity(grid.len());
        for &x in grid {
            let mut sum = Complex64::new(0.0, 0.0);
            for ((t, w), u) in self.rule.iter().zip(&self.values) {
                sum += w * kernel.try_eval(x, t)? * u;
            }
            values.push(ensure_finite(f(x), x, x)? + self.lambda * sum);
        }
        SampledFunction::new(grid.to_vec(), values)
    }
}

/// Nyström solution: `(δ_pq - λ K(t_p,t_q) w_q) u_q = f(t_p)` solved by row
/// reduction with partial pivoting.
pub fn solve_nystrom<F>(
    kernel: &KernelSpec,
    f: F,
    lambda: Complex64,
    config: &SolverConfig,
) -> Result<NodalSolution>
where
    F: Fn(f64) -> Complex64,
{
    let rule = config.rule(kernel.domain())?;
    let n = rule.len();
    let nodes = rule.nodes();
    let weights = rule.weights();

    let mut system = Matrix::zeros(n);
    for p in 0..n {
        for q in 0..n {
            let k = kernel.try_eval(nodes[p], nodes[q])?;
            let delta = if p == q { 1.0 } else { 0.0 };
            system.set(p, q, delta - lambda * k * weights[q]);
        }
    }
    let rhs = nodes
        .iter()
        .map(|&t| ensure_finite(f(t), t, t))
        .collect::<Result<Vec<_>>>()?;
    let (values, rcond) = solve_checked(&system, &rhs)?;
    Ok(NodalSolution {
        rule,
        lambda,
        values,
        rcond: Some(rcond),
    })
}

/// Fixed-point iteration `u ← f + λ ∫ K u` started from `u = f`.
///
/// Fails with [`Error::DivergenceDetected`] once the iterate norm exceeds
/// [`DIVERGENCE_GROWTH`] times the norm of `f`.
pub fn solve_neumann<F>(
    kernel: &KernelSpec,
    f: F,
    lambda: Complex64,
    iterations: usize,
    config: &SolverConfig,
) -> Result<NodalSolution>
where
    F: Fn(f64) -> Complex64,
{
    if iterations == 0 {
        return Err(Error::InvalidArgument(
            "Neumann iteration needs at least one step".into(),
        ));
    }
    let rule = config.rule(kernel.domain())?;
    let nodes = rule.nodes();
    let weights = rule.weights();
    let n = rule.len();
    let weighted = {
        let mut m = Matrix::zeros(n);
        for p in 0..n {
            for q in 0..n {
                m.set(p, q, kernel.try_eval(nodes[p], nodes[q])? * weights[q]);
            }
        }
        m
    };
    let forcing = nodes
        .iter()
        .map(|&t| ensure_finite(f(t), t, t))
        .collect::<Result<Vec<_>>>()?;
    let sup = |v: &[Complex64]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let base = sup(&forcing);

    let mut current = forcing.clone();
    for step in 1..=iterations {
        let applied = weighted.mul_vec(&current);
        current = forcing
            .iter()
            .zip(&applied)
            .map(|(f, a)| f + lambda * a)
            .collect();
        if base > 0.0 {
            let growth = sup(&current) / base;
            if !(growth <= DIVERGENCE_GROWTH) {
                return Err(Error::DivergenceDetected {
                    growth,
                    iterations: step,
                });
            }
        }
    }
    Ok(NodalSolution {
        rule,
        lambda,
        values: current,
        rcond: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    fn xt() -> KernelSpec {
        KernelSpec::separable(unit(), |x| x.into(), |t| t.into())
    }

    fn re(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn config_validation() {
        let base = SolverConfig::default();
        assert!(base.validate().is_ok());
        assert!(base.with_series_order(0).validate().is_err());
        assert!(base.with_series_order(7).validate().is_err());
        assert!(base.with_nodes(1).validate().is_err());
        assert!(base.with_det_tolerance(0.0).validate().is_err());
        assert!(base.with_det_tolerance(f64::NAN).validate().is_err());
    }

    #[test]
    fn sampled_function_invariants() {
        assert!(SampledFunction::new(vec![0.0, 1.0], vec![re(1.0)]).is_err());
        assert!(SampledFunction::new(vec![1.0, 1.0], vec![re(1.0); 2]).is_err());
        let s = SampledFunction::new(vec![0.0, 1.0], vec![re(1.0), re(2.0)]).unwrap();
        let t = SampledFunction::new(vec![0.0, 1.0], vec![re(1.5), re(2.0)]).unwrap();
        assert_eq!(s.max_deviation(&t).unwrap(), 0.5);
    }

    #[test]
    fn determinant_rank_one() {
        let cfg = SolverConfig::default();
        let d = fredholm_determinant(&xt(), re(1.0), &cfg).unwrap();
        assert!((d.value - re(2.0 / 3.0)).norm() < 1e-12);
        assert!(d.last_term < 1e-12);
        let d = fredholm_determinant(&xt(), re(0.0), &cfg).unwrap();
        assert_eq!(d.value, re(1.0));
        let d = fredholm_determinant(&xt(), re(3.0), &cfg).unwrap();
        assert!(d.value.norm() < 1e-10);
    }

    #[test]
    fn first_minor_rank_one_is_kernel() {
        let cfg = SolverConfig::default();
        for (x, t) in [(0.2, 0.7), (1.0, 1.0), (0.0, 0.5)] {
            for lambda in [re(0.0), re(1.0), Complex64::new(-2.0, 0.5)] {
                let m = fredholm_first_minor(&xt(), x, t, lambda, &cfg).unwrap();
                assert!((m.value - re(x * t)).norm() < 1e-13, "x={x} t={t}");
            }
        }
    }

    #[test]
    fn resolvent_rank_one() {
        let cfg = SolverConfig::default();
        let r = resolvent(&xt(), 1.0, 1.0, re(1.0), &cfg).unwrap();
        assert!((r - re(1.5)).norm() < 1e-12);
        let r = resolvent(&xt(), 0.3, 0.6, re(0.0), &cfg).unwrap();
        assert!((r - re(0.18)).norm() < 1e-15);
        assert!(matches!(
            resolvent(&xt(), 1.0, 1.0, re(3.0), &cfg),
            Err(Error::SingularDeterminant { .. })
        ));
    }

    #[test]
    fn solve_resolvent_rank_one() {
        let cfg = SolverConfig::default();
        let grid = [0.0, 0.5, 1.0];
        let u = solve_resolvent(&xt(), |x| x.into(), re(1.0), &grid, &cfg).unwrap();
        assert!((u.values()[1] - re(0.75)).norm() < 1e-12);
        let u = solve_resolvent(&xt(), |x| x.into(), re(-1.0), &grid, &cfg).unwrap();
        assert!((u.values()[2] - re(0.75)).norm() < 1e-12);
        let u = solve_resolvent(&xt(), |x| (x * x).into(), re(0.0), &grid, &cfg).unwrap();
        assert_eq!(u.values(), &[re(0.0), re(0.25), re(1.0)]);
    }

    #[test]
    fn nystrom_rank_one() {
        let cfg = SolverConfig::default().with_nodes(200);
        let sol = solve_nystrom(&xt(), |x| x.into(), re(1.0), &cfg).unwrap();
        let u = sol.interpolate(&xt(), |x| x.into(), &[0.5]).unwrap();
        assert!((u.values()[0] - re(0.75)).norm() < 1e-6);

        let sol = solve_nystrom(&xt(), |x| x.into(), re(0.0), &cfg).unwrap();
        for (t, u) in sol.at_nodes().iter() {
            assert_eq!(u, re(t));
        }

        let err = solve_nystrom(&xt(), |x| x.into(), re(3.0), &cfg).unwrap_err();
        assert!(
            matches!(
                err,
                Error::SingularMatrix { .. } | Error::IllConditioned { .. }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn neumann_rank_one() {
        let cfg = SolverConfig::default();
        let sol = solve_neumann(&xt(), |x| x.into(), re(0.1), 30, &cfg).unwrap();
        let u = sol.interpolate(&xt(), |x| x.into(), &[1.0]).unwrap();
        assert_relative_eq!(u.values()[0].re, 3.0 / 2.9, epsilon = 1e-8);

        let sol = solve_neumann(&xt(), |x| x.into(), re(0.0), 5, &cfg).unwrap();
        for (t, u) in sol.at_nodes().iter() {
            assert_eq!(u, re(t));
        }

        assert!(matches!(
            solve_neumann(&xt(), |x| x.into(), re(5.0), 50, &cfg),
            Err(Error::DivergenceDetected { .. })
        ));
        assert!(solve_neumann(&xt(), |x| x.into(), re(0.1), 0, &cfg).is_err());
    }

    #[test]
    fn non_finite_kernel_is_reported() {
        let k = KernelSpec::general(unit(), |x, t| Complex64::from(1.0 / (x - t)));
        let cfg = SolverConfig::default();
        assert!(matches!(
            fredholm_determinant(&k, re(1.0), &cfg),
            Err(Error::Evaluation { .. })
        ));
        assert!(matches!(
            solve_nystrom(&k, |_| re(1.0), re(1.0), &cfg),
            Err(Error::Evaluation { .. })
        ));
    }

    #[test]
    fn series_coefficients_are_factorial_scaled_traces() {
        // For K(x,t) = x t + x² t², d_n = n!·e_n(M) with e_n the elementary
        // symmetric functions of M's eigenvalues.
        let k = KernelSpec::general(unit(), |x, t| (x * t + x * x * t * t).into());
        let sys = FredholmSystem::new(&k, &SolverConfig::default()).unwrap();
        let trace = 1.0 / 3.0 + 1.0 / 5.0;
        let det = 1.0 / 15.0 - 1.0 / 16.0;
        let d = sys.coefficients();
        assert!((d[0] - re(trace)).norm() < 1e-14);
        assert!((d[1] - re(2.0 * det)).norm() < 1e-14);
        assert!(d[2].norm() < 1e-14 && d[3].norm() < 1e-14);
    }
}
