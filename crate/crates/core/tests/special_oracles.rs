use std::f64::consts::{FRAC_PI_2, PI};

use fredholm_core::quadrature::gauss_rule;
use fredholm_core::special::{e1, e1_continued_fraction, e1_series, plane_wave};
use fredholm_core::{Complex64, Interval};
use proptest::prelude::*;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Fixed 40-term power series on the positive real axis.
fn e1_real_series_oracle(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut factorial = 1.0;
    for n in 1..=40 {
        factorial *= n as f64;
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * x.powi(n) / (n as f64 * factorial);
    }
    -EULER_GAMMA - x.ln() + sum
}

/// Cosine and sine integrals from their Taylor series.
fn ci_si(x: f64) -> (f64, f64) {
    let mut ci = 0.0;
    let mut si = 0.0;
    let mut term = 1.0; // x^k / k!
    for k in 1..=60 {
        term *= x / k as f64;
        match k % 4 {
            1 => si += term / k as f64,
            2 => ci -= term / k as f64,
            3 => si -= term / k as f64,
            _ => ci += term / k as f64,
        }
    }
    (EULER_GAMMA + x.ln() + ci, si)
}

/// E1(ix) = -Ci(x) + i(Si(x) - π/2) for x > 0.
fn e1_imaginary_oracle(x: f64) -> Complex64 {
    let (ci, si) = ci_si(x);
    Complex64::new(-ci, si - FRAC_PI_2)
}

/// E1(x) = e^(-x) ∫_0^∞ e^(-s)/(s + x) ds, truncated at s = 60 and
/// integrated with Gauss-Legendre.
fn e1_quadrature_oracle(x: f64) -> f64 {
    let rule = gauss_rule(Interval::new(0.0, 60.0).unwrap(), 128).unwrap();
    (-x).exp()
        * rule
            .iter()
            .map(|(s, w)| w * (-s).exp() / (s + x))
            .sum::<f64>()
}

#[test]
fn e1_at_one() {
    let oracle = e1_real_series_oracle(1.0);
    assert!((oracle - 0.219_383_934_396).abs() < 1e-12);
    let got = e1(Complex64::new(1.0, 0.0)).unwrap();
    assert!((got.re - oracle).abs() < 1e-14 && got.im == 0.0);
}

#[test]
fn e1_on_imaginary_axis() {
    let oracle = e1_imaginary_oracle(1.0);
    assert!((oracle - Complex64::new(-0.337_404, -0.624_713)).norm() < 1e-6);
    for x in [0.3, 1.0, 2.5, 5.0, 8.0] {
        let got = e1(Complex64::new(0.0, x)).unwrap();
        let want = e1_imaginary_oracle(x);
        assert!(
            (got - want).norm() < 1e-11 * want.norm().max(1.0),
            "x={x}: {got} vs {want}"
        );
    }
}

#[test]
fn e1_at_ten() {
    let oracle = e1_quadrature_oracle(10.0);
    let got = e1(Complex64::new(10.0, 0.0)).unwrap().re;
    assert!((got - oracle).abs() / oracle < 1e-12);
    assert!((got - 4.15697e-6).abs() < 5e-12);
}

#[test]
fn branch_split_overlap() {
    for i in 0..200 {
        let r = 3.0 + 2.0 * (i as f64 / 199.0);
        let theta = -0.9 * PI + 1.8 * PI * ((i * 37 % 200) as f64 / 199.0);
        let z = Complex64::from_polar(r, theta);
        let s = e1_series(z);
        let c = e1_continued_fraction(z);
        assert!((s - c).norm() <= 1e-10 * s.norm(), "z={z}: {s} vs {c}");
    }
}

#[test]
fn closed_form_arguments_are_accurate() {
    // E1(i - a), E1(5i - a) over the screening range used for the surface
    let i = Complex64::i();
    for a in [0.0, 0.5, 1.0, 3.0, 5.0, 12.0, 25.0, 50.0] {
        for z in [i - a, 5.0 * i - a] {
            let v = e1(z).unwrap();
            // derivative identity as a spot check of local consistency
            let h = 1e-6 * z.norm().max(1.0);
            let fd = (e1(z + h).unwrap() - e1(z - h).unwrap()) / (2.0 * h);
            let exact = -(-z).exp() / z;
            assert!(
                (fd - exact).norm() < 1e-5 * exact.norm(),
                "a={a} z={z} v={v}"
            );
        }
    }
}

proptest! {
    #[test]
    fn conjugate_symmetry(r in 0.1f64..20.0, theta in 0.001f64..3.1) {
        let z = Complex64::from_polar(r, theta);
        let a = e1(z.conj()).unwrap();
        let b = e1(z).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-12 * b.norm());
    }

    #[test]
    fn derivative_matches(r in 0.3f64..20.0, theta in -2.8f64..2.8) {
        let z = Complex64::from_polar(r, theta);
        let exact = -(-z).exp() / z;
        let h = 1e-5;
        for step in [Complex64::new(h, 0.0), Complex64::new(0.0, h)] {
            let fd = (e1(z + step).unwrap() - e1(z - step).unwrap()) / (2.0 * step);
            prop_assert!((fd - exact).norm() <= 1e-6 * exact.norm());
        }
    }

    #[test]
    fn plane_wave_has_unit_modulus(x in -1e3f64..1e3, k in -5.0f64..5.0) {
        prop_assert!((plane_wave(x, k).norm() - 1.0).abs() < 1e-15);
    }
}
