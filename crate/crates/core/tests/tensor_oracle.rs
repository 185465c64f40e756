//! The Fredholm coefficients computed by recurrence must equal the literal
//! tensor-product sums of n×n (and bordered) kernel determinants.

use fredholm_core::linalg::{LuFactors, Matrix};
use fredholm_core::quadrature::gauss_rule;
use fredholm_core::{solve_nystrom, Complex64, FredholmSystem, Interval, KernelSpec, SolverConfig};

/// Leibniz expansion; independent of any elimination code.
fn leibniz_det(m: &[Vec<Complex64>]) -> Complex64 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Complex64::new(0.0, 0.0);
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<Complex64>], total: &mut Complex64) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        let prod: Complex64 = (0..n).map(|i| m[i][perm[i]]).product();
        *total += sign * prod;
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}

/// All index tuples in `0..base` of length `len`.
fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |i| {
                    let mut next = t.clone();
                    next.push(i);
                    next
                })
            })
            .collect();
    }
    out
}

fn kernel() -> KernelSpec {
    KernelSpec::general(Interval::new(-0.5, 1.5).unwrap(), |x, t| {
        Complex64::new(0.0, x * t).exp() + (x - t).cos() * 0.3 + Complex64::new(x, -t * t)
    })
}

#[test]
fn determinant_coefficients_match_tensor_sums() {
    let k = kernel();
    let n_nodes = 5;
    let config = SolverConfig::default()
        .with_nodes(n_nodes)
        .with_series_order(4);
    let system = FredholmSystem::new(&k, &config).unwrap();
    let rule = gauss_rule(k.domain(), n_nodes).unwrap();
    let (t, w) = (rule.nodes(), rule.weights());

    for order in 1..=4 {
        let mut sum = Complex64::new(0.0, 0.0);
        for p in tuples(n_nodes, order) {
            let m: Vec<Vec<Complex64>> = p
                .iter()
                .map(|&i| p.iter().map(|&j| k.eval(t[i], t[j])).collect())
                .collect();
            let weight: f64 = p.iter().map(|&i| w[i]).product();
            sum += weight * leibniz_det(&m);
        }
        let got = system.coefficients()[order - 1];
        assert!(
            (got - sum).norm() <= 1e-12 * sum.norm().max(1.0),
            "d_{order}: recurrence {got} vs tensor sum {sum}"
        );
    }
}

#[test]
fn first_minor_matches_bordered_tensor_sums() {
    let k = kernel();
    let n_nodes = 4;
    let order = 3;
    let config = SolverConfig::default()
        .with_nodes(n_nodes)
        .with_series_order(order);
    let system = FredholmSystem::new(&k, &config).unwrap();
    let rule = gauss_rule(k.domain(), n_nodes).unwrap();
    let (t, w) = (rule.nodes(), rule.weights());
    let lambda = Complex64::new(0.7, -0.4);
    let (x, y) = (0.33, 1.21);

    let mut expected = k.eval(x, y);
    let mut factor = Complex64::new(1.0, 0.0);
    for n in 1..=order {
        factor *= -lambda / n as f64;
        let mut sum = Complex64::new(0.0, 0.0);
        for p in tuples(n_nodes, n) {
            let rows: Vec<f64> = std::iter::once(x).chain(p.iter().map(|&i| t[i])).collect();
            let cols: Vec<f64> = std::iter::once(y).chain(p.iter().map(|&i| t[i])).collect();
            let m: Vec<Vec<Complex64>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| k.eval(r, c)).collect())
                .collect();
            let weight: f64 = p.iter().map(|&i| w[i]).product();
            sum += weight * leibniz_det(&m);
        }
        expected += factor * sum;
    }
    let got = system.first_minor(x, y, lambda).unwrap().value;
    assert!((got - expected).norm() < 1e-12, "{got} vs {expected}");
}

#[test]
fn complete_series_equals_discrete_determinant_and_nystrom() {
    // With as many series terms as nodes, the series is exact for the
    // discretized operator: Δ(λ) = det(I - λ K W), and the resolvent solution
    // coincides with the Nyström one.
    let k = kernel();
    let n_nodes = 5;
    let config = SolverConfig::default()
        .with_nodes(n_nodes)
        .with_series_order(5);
    let system = FredholmSystem::new(&k, &config).unwrap();
    let rule = system.rule().clone();
    let lambda = Complex64::new(-0.35, 0.2);

    let a = Matrix::from_fn(n_nodes, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - lambda * k.eval(rule.nodes()[i], rule.nodes()[j]) * rule.weights()[j]
    });
    let rows: Vec<Vec<Complex64>> = (0..n_nodes)
        .map(|i| (0..n_nodes).map(|j| a.get(i, j)).collect())
        .collect();
    let det = leibniz_det(&rows);
    let series = system.determinant(lambda);
    assert!((series.value - det).norm() < 1e-12);
    assert!(LuFactors::factor(&a).is_ok());

    let f = |x: f64| Complex64::new(x.sin(), 1.0);
    let grid = [-0.4, 0.1, 0.9, 1.4];
    let by_resolvent = system.solve(f, lambda, &grid).unwrap();
    let by_nystrom = solve_nystrom(&k, f, lambda, &config)
        .unwrap()
        .interpolate(&k, f, &grid)
        .unwrap();
    assert!(by_resolvent.max_deviation(&by_nystrom).unwrap() < 1e-12);
}
