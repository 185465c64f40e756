//! Complex exponential integral and plane-wave helper.
//!
//! The wave-function closed forms are written in terms of
//!
//! ```text
//! E1(z) = ∫_z^∞ e^(-u) / u du
//! ```
//!
//! on the principal branch, with the cut along the closed negative real
//! axis. The same function is often written `E_i` in physics texts; it is
//! *not* the `Ei(x)` of Abramowitz & Stegun 5.1.2, which differs in sign and
//! branch. Everything here uses the `E1` convention.

use num_complex::Complex64;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below this modulus the power series is used.
pub const SERIES_RADIUS: f64 = 4.0;

const MAX_TERMS: usize = 5000;

/// Exponential integral `E1(z)` for complex `z`.
///
/// Fails with [`Error::Domain`] at `z = 0`, on the branch cut
/// (`Im z = 0`, `Re z < 0`), and when the result overflows.
pub fn e1(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("E1 argument {z} is not finite")));
    }
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::Domain(format!(
            "E1 is undefined at {z}: zero or on the negative real branch cut"
        )));
    }

    // |z| + Re z measures how close z is to the negative real axis. Near the
    // cut the continued fraction converges very slowly, while the series
    // terms all share (nearly) the same phase, so the series sums without
    // cancellation even for large |z|.
    let value = if z.norm() < SERIES_RADIUS || z.norm() + z.re < SERIES_RADIUS {
        e1_series(z)
    } else {
        e1_continued_fraction(z)
    };

    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain(format!("E1({z}) overflows")))
    }
}

/// Convergent expansion `E1(z) = -γ - ln z - Σ_{n≥1} (-z)^n / (n·n!)`.
///
/// Accurate to roundoff for `|z| < 4` anywhere off the cut, and for larger
/// `|z|` close to the negative real axis. No domain checks.
pub fn e1_series(z: Complex64) -> Complex64 {
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let modulus = z.norm();
    for n in 1..=MAX_TERMS {
        let nf = n as f64;
        power *= -z / nf;
        let term = power / nf;
        sum += term;
        if nf > modulus && term.norm() <= f64::EPSILON * sum.norm() {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - sum
}

/// Continued fraction
///
/// ```text
/// E1(z) = e^(-z) / (z + 1 - 1²/(z + 3 - 2²/(z + 5 - ...)))
/// ```
///
/// evaluated with the modified Lentz algorithm. Intended for `|z| ≥ 4`
/// away from the negative real axis. No domain checks.
pub fn e1_continued_fraction(z: Complex64) -> Complex64 {
    const TINY: f64 = 1e-300;
    let tiny = Complex64::new(TINY, 0.0);

    let mut b = z + 1.0;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..=MAX_TERMS {
        let an = -((i * i) as f64);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = tiny;
        }
        d = d.inv();
        c = b + an / c;
        if c.norm() < TINY {
            c = tiny;
        }
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).norm() <= f64::EPSILON {
            break;
        }
    }
    h * (-z).exp()
}

/// Incident plane wave `e^(ikx)`, without the `(2π)^(-3/2)` normalization.
pub fn plane_wave(x: f64, k: f64) -> Complex64 {
    Complex64::from_polar(1.0, k * x)
}
