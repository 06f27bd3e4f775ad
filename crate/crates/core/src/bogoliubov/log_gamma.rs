use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `B_{2k} / (2k (2k-1))`, k = 1..=8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Recurrence shift target for the Stirling series.
const SHIFT_RE: f64 = 20.0;

/// `ln Γ(z)` on the branch that is real on the positive real axis and
/// continuous in the right half-plane.
///
/// For `Re z < 1/2` the reflection formula is used; the result is then a
/// logarithm of Γ(z) whose imaginary part may differ from the continuous
/// branch by a multiple of 2π.
pub fn complex_log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("log-Gamma of non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::GammaPole(z.re));
    }
    if z.re < 0.5 {
        // Γ(z) Γ(1-z) = π / sin(πz)
        let sin = (z * PI).sin();
        return Ok(Complex64::new(PI.ln(), 0.0) - sin.ln() - right_half_plane(1.0 - z));
    }
    Ok(right_half_plane(z))
}

fn right_half_plane(mut z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < SHIFT_RE {
        shift += z.ln();
        z += 1.0;
    }
    let ln_z = z.ln();
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * ln_z - z + 0.5 * (2.0 * PI).ln() + series - shift
}
