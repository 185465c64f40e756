//! Stationary scattering by Coulomb and Podolsky potentials.
//!
//! The Schrödinger equation in Helmholtz form `(∇² + k²)ψ = (2m/ħ²) V ψ`,
//! with `k² = 2mE/ħ²`, becomes the integral equation
//!
//! ```text
//! ψ(r) = φ(r) - (2πm/ħ²) ∫ e^(ik|r-r'|)/|r-r'| V(r') ψ(r') d³r'
//! ```
//!
//! through the outgoing Green's function `G(ρ) = -e^(ikρ)/(4πρ)`. Writing
//! `V = (Q²/4π)·v(r)` collects every constant into the coupling
//! `λ = -mQ²/(2ħ²)`, leaving the bare profile `v` (`1/r` for Coulomb) inside
//! the kernel.
//!
//! Two one-dimensional wave functions for the scenario `k = 1` on `[1, 5]`
//! are available in closed form ([`psi_coulomb_closed`],
//! [`psi_podolsky_closed`]); [`reduced_kernel`] builds 1D kernels that can be
//! fed to the numerical solvers for comparison.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fredholm::{check_grid, KernelSpec, SampledFunction};
use crate::quadrature::Interval;
use crate::special::{e1, plane_wave};

/// Electrostatic potential of a point charge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialSpec {
    /// `V = Q²/(4πr)`
    Coulomb { charge: f64 },
    /// `V = (Q²/4π)(1 - e^(-r/a))/r`; finite at the origin for `a > 0`.
    Podolsky { charge: f64, a: f64 },
}

impl PotentialSpec {
    pub fn coulomb(charge: f64) -> Result<Self> {
        check_charge(charge)?;
        Ok(Self::Coulomb { charge })
    }

    pub fn podolsky(charge: f64, a: f64) -> Result<Self> {
        check_charge(charge)?;
        check_length(a)?;
        Ok(Self::Podolsky { charge, a })
    }

    pub fn charge(&self) -> f64 {
        match *self {
            Self::Coulomb { charge } | Self::Podolsky { charge, .. } => charge,
        }
    }

    /// `V(r)`.
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        let q = self.charge();
        Ok(q * q / (4.0 * PI) * self.profile(r)?)
    }

    /// `4π V(r)/Q²`: the shape of the potential without its coupling constant.
    pub fn profile(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "distance must be finite and non-negative, got {r}"
            )));
        }
        match *self {
            Self::Podolsky { a, .. } if a > 0.0 => {
                if r == 0.0 {
                    Ok(1.0 / a)
                } else {
                    Ok(-(-r / a).exp_m1() / r)
                }
            }
            _ => {
                if r == 0.0 {
                    Err(Error::SingularPoint(
                        "the Coulomb potential diverges at r = 0".into(),
                    ))
                } else {
                    Ok(1.0 / r)
                }
            }
        }
    }

    /// True when the potential diverges at the origin.
    pub fn is_singular_at_origin(&self) -> bool {
        match *self {
            Self::Coulomb { .. } => true,
            Self::Podolsky { a, .. } => a == 0.0,
        }
    }
}

fn check_charge(charge: f64) -> Result<()> {
    if charge.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "charge must be finite, got {charge}"
        )))
    }
}

fn check_length(a: f64) -> Result<()> {
    if a.is_finite() && a >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "Podolsky length must be finite and non-negative, got {a}"
        )))
    }
}

/// `Q²/(4πr)`; [`Error::SingularPoint`] for `r ≤ 0`.
pub fn coulomb_potential(r: f64, charge: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::SingularPoint(format!(
            "Coulomb potential is singular at r = {r}"
        )));
    }
    PotentialSpec::coulomb(charge)?.evaluate(r)
}

/// `(Q²/4π)(1 - e^(-r/a))/r`, with the removable limit `Q²/(4πa)` at `r = 0`
/// and the Coulomb potential at `a = 0`.
pub fn podolsky_potential(r: f64, charge: f64, a: f64) -> Result<f64> {
    if a == 0.0 {
        return coulomb_potential(r, charge);
    }
    PotentialSpec::podolsky(charge, a)?.evaluate(r)
}

/// Outgoing free-space Green's function of `∇² + k²`:
/// `G(ρ) = -e^(ikρ)/(4πρ)`.
pub fn greens_function(rho: f64, k: f64) -> Result<Complex64> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::SingularPoint(format!(
            "Green's function is singular at rho = {rho}"
        )));
    }
    Ok(-plane_wave(rho, k) / (4.0 * PI * rho))
}

/// Mass, action, energy and charge, with the derived wave number and
/// coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub mass: f64,
    pub hbar: f64,
    pub energy: f64,
    pub charge: f64,
    /// `sqrt(2mE)/ħ`
    pub k: f64,
    /// `-mQ²/(2ħ²)`
    pub lambda: f64,
}

impl Default for PhysicalParams {
    /// `m = 2, ħ = 1, E = 1/4, Q = 1`, giving `k = 1` and `λ = -1`.
    fn default() -> Self {
        derive_params(2.0, 1.0, 0.25, 1.0).expect("default parameters are valid")
    }
}

pub fn derive_params(mass: f64, hbar: f64, energy: f64, charge: f64) -> Result<PhysicalParams> {
    for (name, v) in [("mass", mass), ("hbar", hbar), ("energy", energy)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "{name} must be positive and finite, got {v}"
            )));
        }
    }
    check_charge(charge)?;
    Ok(PhysicalParams {
        mass,
        hbar,
        energy,
        charge,
        k: (2.0 * mass * energy).sqrt() / hbar,
        lambda: -mass * charge * charge / (2.0 * hbar * hbar),
    })
}

/// Which closed-form wave function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveKind {
    Coulomb,
    /// Podolsky with screening parameter `a ≥ 0`.
    Podolsky {
        a: f64,
    },
}

/// Closed-form one-dimensional wave function
///
/// ```text
/// ψ(x) = e^(ix) + (c/x) · λ / (1 + λ D)
/// ```
///
/// with, for Coulomb, `c = e^(6i) sin 4` and `D = E1(i) - E1(5i)`, and for
/// Podolsky `c = e^(2i-5a)(e^(4a) - e^(8i))/(a - 2i)` and
/// `D = E1(i-a) - E1(5i-a)`. Both belong to the `k = 1`, `[1, 5]` scenario.
/// The `x`-independent factor is computed once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormWave {
    kind: WaveKind,
    lambda: f64,
    scattered: Complex64,
}

impl ClosedFormWave {
    pub fn new(kind: WaveKind, lambda: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "coupling must be finite, got {lambda}"
            )));
        }
        let i = Complex64::i();
        let (coefficient, difference) = match kind {
            WaveKind::Coulomb => ((6.0 * i).exp() * 4f64.sin(), e1(i)? - e1(5.0 * i)?),
            WaveKind::Podolsky { a } => {
                check_length(a)?;
                // e^(2i-5a)(e^(4a) - e^(8i)) expanded so e^(4a) cannot overflow
                let numerator = (2.0 * i - a).exp() - (10.0 * i - 5.0 * a).exp();
                (numerator / (a - 2.0 * i), e1(i - a)? - e1(5.0 * i - a)?)
            }
        };
        let denominator = 1.0 + lambda * difference;
        let scattered = coefficient * lambda / denominator;
        if !(scattered.re.is_finite() && scattered.im.is_finite()) {
            return Err(Error::SingularPoint(format!(
                "closed-form denominator vanishes for {kind:?}, lambda = {lambda}"
            )));
        }
        Ok(Self {
            kind,
            lambda,
            scattered,
        })
    }

    pub fn kind(&self) -> WaveKind {
        self.kind
    }

    /// Amplitude `C` of the scattered part `C/x`.
    pub fn scattered_amplitude(&self) -> Complex64 {
        self.scattered
    }

    pub fn eval(&self, x: f64) -> Result<Complex64> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::SingularPoint(format!(
                "closed-form wave function is undefined at x = {x}"
            )));
        }
        Ok(plane_wave(x, 1.0) + self.scattered / x)
    }
}

/// Coulomb closed form at `x > 0`.
pub fn psi_coulomb_closed(x: f64, lambda: f64) -> Result<Complex64> {
    ClosedFormWave::new(WaveKind::Coulomb, lambda)?.eval(x)
}

/// Podolsky closed form at `x > 0`; coincides with the Coulomb one at `a = 0`.
pub fn psi_podolsky_closed(x: f64, a: f64, lambda: f64) -> Result<Complex64> {
    ClosedFormWave::new(WaveKind::Podolsky { a }, lambda)?.eval(x)
}

/// Closed-form wave function on a grid of positive abscissae, using the
/// coupling from `params`.
pub fn sample_wavefunction(
    kind: WaveKind,
    grid: &[f64],
    params: &PhysicalParams,
) -> Result<SampledFunction> {
    check_grid(grid)?;
    let wave = ClosedFormWave::new(kind, params.lambda)?;
    let values = grid
        .iter()
        .map(|&x| wave.eval(x))
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(grid.to_vec(), values)
}

/// `max |ψ| - min |ψ|` over the samples.
pub fn amplitude_range(samples: &SampledFunction) -> f64 {
    let (lo, hi) = samples
        .values()
        .iter()
        .map(|z| z.norm())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), m| {
            (lo.min(m), hi.max(m))
        });
    if samples.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

/// How to reduce the 3D integral equation to a 1D kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReducedKernelChoice {
    /// Use the closed forms only; no kernel.
    ClosedFormOnly,
    /// `K(x,t) = e^(ik s)/s · v(t)`, `s = sqrt((x-t)² + ε²)`.
    RegularizedGreen { epsilon: f64 },
    /// `K(x,t) = g(x) h(t)`, `g(x) = e^(ikx)/x`, `h(t) = e^(-ikt) v(t)`.
    SeparableFarField,
}

impl ReducedKernelChoice {
    pub const DEFAULT_EPSILON: f64 = 0.05;
}

/// One-dimensional kernel for `potential`, to be used with coupling
/// `params.lambda`. The kernel carries the bare profile `v = 4πV/Q²`.
pub fn reduced_kernel(
    potential: PotentialSpec,
    params: &PhysicalParams,
    interval: Interval,
    choice: ReducedKernelChoice,
) -> Result<KernelSpec> {
    if interval.lower() < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "radial interval must start at r >= 0, got {}",
            interval.lower()
        )));
    }
    let touches_origin = interval.lower() == 0.0;
    let k = params.k;
    match choice {
        ReducedKernelChoice::ClosedFormOnly => Err(Error::InvalidArgument(
            "ClosedFormOnly has no kernel; evaluate the closed forms instead".into(),
        )),
        ReducedKernelChoice::RegularizedGreen { epsilon } => {
            if !(epsilon > 0.0 && epsilon.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "regularization epsilon must be positive, got {epsilon}"
                )));
            }
            if touches_origin && potential.is_singular_at_origin() {
                return Err(Error::SingularPoint(
                    "interval touches the Coulomb singularity at r = 0".into(),
                ));
            }
            Ok(KernelSpec::general(interval, move |x, t| {
                let s = ((x - t) * (x - t) + epsilon * epsilon).sqrt();
                let v = potential.profile(t).unwrap_or(f64::NAN);
                plane_wave(s, k) * (v / s)
            }))
        }
        ReducedKernelChoice::SeparableFarField => {
            if touches_origin {
                return Err(Error::SingularPoint(
                    "far-field factor e^(ikx)/x is singular at x = 0".into(),
                ));
            }
            Ok(KernelSpec::separable(
                interval,
                move |x| plane_wave(x, k) / x,
                move |t| plane_wave(t, -k) * potential.profile(t).unwrap_or(f64::NAN),
            ))
        }
    }
}
