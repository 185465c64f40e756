//! One-dimensional quadrature rules.
//!
//! Two families are provided: the uniform partition (`n` equal cells of width
//! `Δt = (b - a)/n`, sampled at the midpoint or at the left endpoint of each
//! cell) and Gauss–Legendre. Multi-dimensional integrals in the solvers are
//! tensor products of one of these.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported Gauss–Legendre order.
pub const MAX_GAUSS_NODES: usize = 512;

/// Finite integration interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "interval [{a}, {b}] has a non-finite end"
            )));
        }
        if a >= b {
            return Err(Error::InvalidArgument(format!(
                "interval [{a}, {b}] requires a < b"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn lower(&self) -> f64 {
        self.a
    }

    pub fn upper(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.a && x <= self.b
    }
}

/// Where the uniform rule samples each of its cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UniformPlacement {
    /// `a + (h + ½)Δt`: avoids both endpoints, second-order accurate.
    #[default]
    Midpoint,
    /// `a + hΔt`, `h = 0..n-1`: the literal Riemann sum, first order.
    LeftEndpoint,
}

/// Nodes and weights of a quadrature rule on an [`Interval`].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    interval: Interval,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    /// Builds a rule from explicit nodes and weights.
    ///
    /// Nodes must lie in the interval and be strictly increasing; weights
    /// must be positive.
    pub fn new(interval: Interval, nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(Error::InvalidArgument(format!(
                "rule needs matching non-empty nodes and weights, got {} and {}",
                nodes.len(),
                weights.len()
            )));
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "quadrature nodes must be strictly increasing".into(),
            ));
        }
        if nodes.iter().any(|&x| !interval.contains(x)) {
            return Err(Error::InvalidArgument(
                "quadrature nodes must lie in the interval".into(),
            ));
        }
        if weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidArgument(
                "quadrature weights must be positive and finite".into(),
            ));
        }
        Ok(Self {
            interval,
            nodes,
            weights,
        })
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// Uniform partition of `interval` into `n` cells of width `(b - a)/n`.
pub fn uniform_rule(
    interval: Interval,
    n: usize,
    placement: UniformPlacement,
) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "uniform rule needs at least one cell".into(),
        ));
    }
    let step = interval.length() / n as f64;
    let offset = match placement {
        UniformPlacement::Midpoint => 0.5,
        UniformPlacement::LeftEndpoint => 0.0,
    };
    let nodes = (0..n)
        .map(|h| interval.lower() + (h as f64 + offset) * step)
        .collect();
    QuadratureRule::new(interval, nodes, vec![step; n])
}

/// Gauss–Legendre rule with `n` nodes mapped onto `interval`.
///
/// Nodes are the roots of `P_n`, found by Newton iteration on the three-term
/// recurrence; exact for polynomials of degree `2n - 1`.
pub fn gauss_rule(interval: Interval, n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_GAUSS_NODES {
        return Err(Error::InvalidArgument(format!(
            "Gauss-Legendre order must be in 1..={MAX_GAUSS_NODES}, got {n}"
        )));
    }
    let (std_nodes, std_weights) = gauss_legendre_reference(n);
    let half = 0.5 * interval.length();
    let mid = 0.5 * (interval.lower() + interval.upper());
    let nodes = std_nodes.iter().map(|&x| mid + half * x).collect();
    let weights = std_weights.iter().map(|&w| half * w).collect();
    QuadratureRule::new(interval, nodes, weights)
}

/// Nodes (ascending) and weights on `[-1, 1]`.
fn gauss_legendre_reference(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    // roots are symmetric: solve for the upper half only
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut derivative = 0.0;
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            derivative = dp;
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        if dp != 0.0 {
            derivative = dp;
        }
        let w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` from the Bonnet recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// `Σ w_q f(t_q)`.
pub fn integrate<F>(rule: &QuadratureRule, f: F) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    rule.iter().map(|(t, w)| w * f(t)).sum()
}

/// Like [`integrate`] but for a fallible integrand; the first error is
/// returned unchanged.
pub fn try_integrate<F, E>(rule: &QuadratureRule, mut f: F) -> std::result::Result<Complex64, E>
where
    F: FnMut(f64) -> std::result::Result<Complex64, E>,
{
    let mut sum = Complex64::new(0.0, 0.0);
    for (t, w) in rule.iter() {
        sum += w * f(t)?;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
        assert_eq!(Interval::new(1.0, 5.0).unwrap().length(), 4.0);
    }

    #[test]
    fn midpoint_nodes() {
        let rule = uniform_rule(unit(), 4, UniformPlacement::Midpoint).unwrap();
        assert_eq!(rule.nodes(), &[0.125, 0.375, 0.625, 0.875]);
        assert_eq!(rule.weights(), &[0.25; 4]);

        let rule = uniform_rule(
            Interval::new(1.0, 5.0).unwrap(),
            2,
            UniformPlacement::Midpoint,
        )
        .unwrap();
        assert_eq!(rule.nodes(), &[2.0, 4.0]);
        assert_eq!(rule.weights(), &[2.0, 2.0]);
    }

    #[test]
    fn left_endpoint_nodes() {
        let rule = uniform_rule(unit(), 4, UniformPlacement::LeftEndpoint).unwrap();
        assert_eq!(rule.nodes(), &[0.0, 0.25, 0.5, 0.75]);
    }

    #[test]
    fn zero_cells_rejected() {
        assert!(matches!(
            uniform_rule(unit(), 0, UniformPlacement::Midpoint),
            Err(Error::InvalidArgument(_))
        ));
        assert!(gauss_rule(unit(), 0).is_err());
        assert!(gauss_rule(unit(), MAX_GAUSS_NODES + 1).is_err());
    }

    #[test]
    fn low_order_gauss() {
        let sym = Interval::new(-1.0, 1.0).unwrap();
        let one = gauss_rule(sym, 1).unwrap();
        assert_eq!(one.nodes(), &[0.0]);
        assert_relative_eq!(one.weights()[0], 2.0, epsilon = 1e-15);

        let two = gauss_rule(sym, 2).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert_relative_eq!(two.nodes()[0], -r, epsilon = 1e-15);
        assert_relative_eq!(two.nodes()[1], r, epsilon = 1e-15);
        assert_relative_eq!(two.weights()[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(two.weights()[1], 1.0, epsilon = 1e-15);

        let cubic = integrate(&gauss_rule(unit(), 2).unwrap(), |t| {
            Complex64::from(t * t * t)
        });
        assert_relative_eq!(cubic.re, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn gauss_weight_sums_and_exactness() {
        let iv = Interval::new(-0.3, 2.2).unwrap();
        for n in [3, 7, 16, 64, 128, 257, 512] {
            let rule = gauss_rule(iv, n).unwrap();
            let sum: f64 = rule.weights().iter().sum();
            assert!((sum - iv.length()).abs() < 1e-12, "n={n} sum={sum}");
            // degree 2n-1 monomial, capped to keep the exact value representable
            let deg = (2 * n - 1).min(21) as i32;
            let got = integrate(&rule, |t| Complex64::from(t.powi(deg))).re;
            let exact = (2.2f64.powi(deg + 1) - (-0.3f64).powi(deg + 1)) / (deg + 1) as f64;
            assert!((got - exact).abs() < 1e-12 * exact.abs(), "n={n}");
        }
    }

    #[test]
    fn oscillatory_integrals() {
        let iv = Interval::new(1.0, 5.0).unwrap();
        let ones = uniform_rule(iv, 7, UniformPlacement::Midpoint).unwrap();
        assert_relative_eq!(
            integrate(&ones, |_| Complex64::from(1.0)).re,
            4.0,
            epsilon = 1e-14
        );

        // antiderivative of e^(it) is -i e^(it)
        let rule = gauss_rule(iv, 32).unwrap();
        let got = integrate(&rule, |t| Complex64::from_polar(1.0, t));
        let exact = Complex64::new(5f64.sin() - 1f64.sin(), 1f64.cos() - 5f64.cos());
        assert!((got - exact).norm() < 1e-13);

        // ∫_1^5 e^(-it)/t dt = E1(i) - E1(5i)
        let rule = gauss_rule(iv, 64).unwrap();
        let got = integrate(&rule, |t| Complex64::from_polar(1.0 / t, -t));
        let exact = Complex64::new(-0.527_433_672_557_612_1, -0.603_848_174_577_491_1);
        assert!((got - exact).norm() < 1e-12);
    }

    #[test]
    fn try_integrate_propagates() {
        let rule = gauss_rule(unit(), 4).unwrap();
        let r: std::result::Result<Complex64, &str> =
            try_integrate(&rule, |t| if t > 0.5 { Err("boom") } else { Ok(t.into()) });
        assert_eq!(r, Err("boom"));
    }

    #[test]
    fn midpoint_converges_quadratically() {
        let iv = Interval::new(1.0, 5.0).unwrap();
        let exact = integrate(&gauss_rule(iv, 64).unwrap(), |t| {
            Complex64::from_polar(1.0, t)
        });
        let err = |n| {
            let rule = uniform_rule(iv, n, UniformPlacement::Midpoint).unwrap();
            (integrate(&rule, |t| Complex64::from_polar(1.0, t)) - exact).norm()
        };
        let ratio = err(100) / err(200);
        assert!((ratio - 4.0).abs() < 0.05, "ratio {ratio}");
    }
}
