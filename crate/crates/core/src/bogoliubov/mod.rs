//! Closed-form Bogoliubov coefficients between the 'in' modes and the
//! out / hor modes of the collapse, and the R/L mode combinations.
//!
//! α is evaluated from its closed form; β, γ and δ are derived from α so
//! their mutual relations hold to round-off. The free phase of the in-mode
//! expansion is fixed to zero.

mod log_gamma;

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

pub use log_gamma::complex_log_gamma;

use crate::collapse_state::squeezing_parameter;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseGeometry {
    m: f64,
    v_h: f64,
}

impl CollapseGeometry {
    /// `v_h` is the null coordinate of the last ray reaching future null
    /// infinity, `v_0 - 4m`.
    pub fn new(m: f64, v_h: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::Domain(format!("mass must be positive, got {m}")));
        }
        if !v_h.is_finite() {
            return Err(Error::Domain(format!("v_H must be finite, got {v_h}")));
        }
        Ok(Self { m, v_h })
    }

    /// Geometry from the shell's null coordinate `v_0`.
    pub fn from_shell(m: f64, v0: f64) -> Result<Self> {
        Self::new(m, v0 - 4.0 * m)
    }

    pub fn mass(&self) -> f64 {
        self.m
    }

    pub fn v_h(&self) -> f64 {
        self.v_h
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BogoKind {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoCoefficient {
    pub kind: BogoKind,
    pub omega: f64,
    pub capital_omega: f64,
    pub value: Complex64,
}

fn check_frequencies(omega: f64, capital_omega: f64) -> Result<()> {
    for (name, f) in [("omega", omega), ("Omega", capital_omega)] {
        if !(f.is_finite() && f > 0.0) {
            return Err(Error::Domain(format!("{name} must be positive, got {f}")));
        }
    }
    Ok(())
}

/// α_{ωΩ} = -(2π)^{-1} √(Ω/ω) (4m)^{-4imω} e^{-i(ω-Ω)v_H} (-iΩ)^{-1-4imω} Γ(1+4imω),
/// with `(-iΩ)^z = exp(z (ln Ω - iπ/2))`.
pub fn alpha(omega: f64, capital_omega: f64, geom: &CollapseGeometry) -> Result<BogoCoefficient> {
    check_frequencies(omega, capital_omega)?;
    let m = geom.m;
    let k = 4.0 * m * omega;
    let i = Complex64::i();
    let power = Complex64::new(-1.0, -k);
    let ln_minus_i_omega = Complex64::new(capital_omega.ln(), -FRAC_PI_2);
    let log = Complex64::new(-(2.0 * PI).ln() + 0.5 * (capital_omega / omega).ln(), 0.0)
        - i * k * (4.0 * m).ln()
        - i * (omega - capital_omega) * geom.v_h
        + power * ln_minus_i_omega
        + complex_log_gamma(Complex64::new(1.0, k))?;
    Ok(BogoCoefficient {
        kind: BogoKind::Alpha,
        omega,
        capital_omega,
        value: -log.exp(),
    })
}

/// `|α|² = m e^{-4πmω} / (π Ω sinh 4πmω)`.
pub fn alpha_modulus_squared(omega: f64, capital_omega: f64, geom: &CollapseGeometry) -> f64 {
    let x = 4.0 * PI * geom.m * omega;
    // e^{-x}/sinh x = 2/(e^{2x} - 1)
    geom.m * 2.0 / (PI * capital_omega * (2.0 * x).exp_m1())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovSet {
    pub alpha: BogoCoefficient,
    pub beta: BogoCoefficient,
    pub gamma: BogoCoefficient,
    pub delta: BogoCoefficient,
    /// `tanh r_ω = e^{-4πmω}` at the in-frequency.
    pub tanh_r_omega: f64,
}

/// β = -tanh r_ω e^{-2iΩv_H} α, γ = e^{-2iΩv_H} α, δ = -tanh r_ω α*.
pub fn beta_gamma_delta(
    omega: f64,
    capital_omega: f64,
    geom: &CollapseGeometry,
) -> Result<BogoliubovSet> {
    let alpha = alpha(omega, capital_omega, geom)?;
    let tanh_r_omega = squeezing_parameter(geom.m * omega)?.tanh_r();
    let phase = Complex64::from_polar(1.0, -2.0 * capital_omega * geom.v_h);
    let gamma = phase * alpha.value;
    let with = |kind, value| BogoCoefficient {
        kind,
        omega,
        capital_omega,
        value,
    };
    Ok(BogoliubovSet {
        alpha,
        beta: with(BogoKind::Beta, -tanh_r_omega * gamma),
        gamma: with(BogoKind::Gamma, gamma),
        delta: with(BogoKind::Delta, -tanh_r_omega * alpha.value.conj()),
        tanh_r_omega,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    R,
    L,
}

/// Coefficient of an R or L mode on the in-mode of frequency ω.
///
/// `value` is the bracket `cosh r_Ω α + sinh r_Ω δ` (R) or
/// `cosh r_Ω γ + sinh r_Ω β` (L); the in-mode expansion weight is its
/// complex conjugate, [`RlCoefficient::expansion_weight`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RlCoefficient {
    pub side: Side,
    pub value: Complex64,
}

impl RlCoefficient {
    pub fn expansion_weight(&self) -> Complex64 {
        self.value.conj()
    }
}

pub fn rl_mode_coefficient(
    omega: f64,
    capital_omega: f64,
    geom: &CollapseGeometry,
    side: Side,
) -> Result<RlCoefficient> {
    let set = beta_gamma_delta(omega, capital_omega, geom)?;
    let s = squeezing_parameter(geom.m * capital_omega)?;
    let (c, sh) = (s.cosh_r(), s.sinh_r());
    let value = match side {
        Side::R => c * set.alpha.value + sh * set.delta.value,
        Side::L => c * set.gamma.value + sh * set.beta.value,
    };
    Ok(RlCoefficient { side, value })
}

/// One row of identity residuals, all relative to |α|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticRow {
    pub omega: f64,
    pub capital_omega: f64,
    pub abs_alpha: f64,
    pub arg_alpha: f64,
    pub arg_gamma: f64,
    pub beta_residual: f64,
    pub gamma_residual: f64,
    pub delta_residual: f64,
    /// `| |α|² / closed form - 1 |`.
    pub modulus_residual: f64,
    pub r_coefficient: Complex64,
    pub l_coefficient: Complex64,
}

impl DiagnosticRow {
    pub fn max_residual(&self) -> f64 {
        self.beta_residual
            .max(self.gamma_residual)
            .max(self.delta_residual)
            .max(self.modulus_residual)
    }
}

pub fn diagnostic_row(
    omega: f64,
    capital_omega: f64,
    geom: &CollapseGeometry,
) -> Result<DiagnosticRow> {
    let set = beta_gamma_delta(omega, capital_omega, geom)?;
    let a = set.alpha.value;
    let scale = a.norm();
    let phase = Complex64::from_polar(1.0, -2.0 * capital_omega * geom.v_h);
    let t = set.tanh_r_omega;
    let rel = |z: Complex64| if scale > 0.0 { z.norm() / scale } else { z.norm() };
    Ok(DiagnosticRow {
        omega,
        capital_omega,
        abs_alpha: scale,
        arg_alpha: a.arg(),
        arg_gamma: set.gamma.value.arg(),
        beta_residual: rel(set.beta.value + t * phase * a),
        gamma_residual: rel(set.gamma.value - phase * a),
        delta_residual: rel(set.delta.value + t * a.conj()),
        modulus_residual: (a.norm_sqr() / alpha_modulus_squared(omega, capital_omega, geom) - 1.0).abs(),
        r_coefficient: rl_mode_coefficient(omega, capital_omega, geom, Side::R)?.value,
        l_coefficient: rl_mode_coefficient(omega, capital_omega, geom, Side::L)?.value,
    })
}

/// `(ω, Ω)` pairs for mω ∈ {0.01, 0.1, 0.5, 1, 2} and Ω/ω ∈ {0.5, 1, 2}.
pub fn default_diagnostic_grid(geom: &CollapseGeometry) -> Vec<(f64, f64)> {
    let mut grid = Vec::with_capacity(15);
    for m_omega in [0.01, 0.1, 0.5, 1.0, 2.0] {
        let omega = m_omega / geom.m;
        for ratio in [0.5, 1.0, 2.0] {
            grid.push((omega, ratio * omega));
        }
    }
    grid
}
