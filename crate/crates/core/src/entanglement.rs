//! Negativity of the reduced Alice ⊗ Bob-mode states.
//!
//! Dense path: partial transpose on Alice's index, full symmetric spectrum,
//! sum of the negative part. For `q_L = 0` on the out channel the partial
//! transpose is block diagonal in 2×2 blocks and the spectrum is closed form.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::collapse_state::{
    psi_tail_bound, reduced_state, squeezing_parameter, Channel, DensityMatrix, ModeSplit,
    SqueezingParams,
};
use crate::error::{Error, Result};
use crate::fock_space::{Space, Truncation};

/// Eigenvalues above `-EIG_FLOOR` count as zero.
pub const EIG_FLOOR: f64 = 1e-12;

/// Symmetry tolerance accepted by [`symmetric_eigenvalues`].
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Entries below `PRUNE_REL * max|m|` are zeroed before diagonalisation.
/// The solver squares entries internally and yields 0/0 near 1e-300; by
/// Weyl the pruning moves each eigenvalue by at most `dim * PRUNE_REL * max|m|`.
const PRUNE_REL: f64 = 1e-100;

fn pruned(m: &DMatrix<f64>) -> DMatrix<f64> {
    let cut = m.amax() * PRUNE_REL;
    m.map(|v| if v.abs() < cut { 0.0 } else { v })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rung {
    pub n_max: usize,
    pub value: f64,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NegativityResult {
    pub value: f64,
    pub n_max_used: usize,
    pub tail_bound: f64,
    /// For a single evaluation this is always `true`; for
    /// [`converged_negativity`] it reports whether the truncation study settled.
    pub converged: bool,
    /// Per-truncation values in evaluation order.
    pub ladder: Vec<Rung>,
}

impl NegativityResult {
    fn single(value: f64, n_max: usize, tail_bound: f64) -> Self {
        Self {
            value,
            n_max_used: n_max,
            tail_bound,
            converged: true,
            ladder: vec![Rung {
                n_max,
                value,
                tail_bound,
            }],
        }
    }
}

/// Transpose on Alice's index: `out[(a,n),(a',n')] = in[(a',n),(a,n')]`.
///
/// With Alice outermost this swaps the two off-diagonal half-blocks.
pub fn partial_transpose_alice_matrix(m: &DMatrix<f64>, t: Truncation) -> Result<DMatrix<f64>> {
    let dim = t.dimension(Space::Bipartite);
    if m.nrows() != dim || m.ncols() != dim {
        return Err(Error::Shape {
            expected: dim,
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let l = t.levels();
    let mut out = m.clone();
    out.view_mut((0, l), (l, l)).copy_from(&m.view((l, 0), (l, l)));
    out.view_mut((l, 0), (l, l)).copy_from(&m.view((0, l), (l, l)));
    Ok(out)
}

pub fn partial_transpose_alice(rho: &DensityMatrix) -> Result<DMatrix<f64>> {
    partial_transpose_alice_matrix(rho.entries(), rho.truncation())
}

fn validate_symmetric(m: &DMatrix<f64>) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Shape {
            expected: m.nrows(),
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let n = m.nrows();
    for i in 0..n {
        for j in 0..=i {
            let (a, b) = (m[(i, j)], m[(j, i)]);
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
            let deviation = (a - b).abs();
            if deviation > SYMMETRY_TOL {
                return Err(Error::NotSymmetric {
                    row: i,
                    col: j,
                    deviation,
                });
            }
        }
    }
    Ok(())
}

/// Full spectrum of a real symmetric matrix, ascending.
///
/// `tol` bounds the trace defect: `|Σλ - tr m| <= tol * dim`.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>, tol: f64) -> Result<Vec<f64>> {
    validate_symmetric(m)?;
    let dim = m.nrows();
    let mut values: Vec<f64> = pruned(m).symmetric_eigenvalues().iter().copied().collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("eigensolver produced a non-finite eigenvalue".into()));
    }
    values.sort_by(f64::total_cmp);
    let defect = (values.iter().sum::<f64>() - m.trace()).abs();
    if defect > tol * dim.max(1) as f64 {
        return Err(Error::Domain(format!(
            "eigensolver trace defect {defect:e} exceeds {tol:e} * {dim}"
        )));
    }
    Ok(values)
}

/// Eigenvalues with eigenvectors, for callers that need the reconstruction.
pub fn symmetric_eigen(m: &DMatrix<f64>) -> Result<SymmetricEigen<f64, nalgebra::Dyn>> {
    validate_symmetric(m)?;
    SymmetricEigen::try_new(pruned(m), f64::EPSILON, 0)
        .ok_or_else(|| Error::Domain("symmetric eigensolver did not converge".into()))
}

fn negative_part(eigenvalues: impl IntoIterator<Item = f64>) -> f64 {
    eigenvalues
        .into_iter()
        .filter(|&l| l < -EIG_FLOOR)
        .map(f64::abs)
        .sum::<f64>()
        + 0.0 // an empty float sum is -0.0
}

/// Negativity `Σ |λ|` over eigenvalues of ρ^{T_A} below `-EIG_FLOOR`.
pub fn negativity(rho: &DensityMatrix) -> Result<NegativityResult> {
    let pt = partial_transpose_alice(rho)?;
    let spectrum = symmetric_eigenvalues(&pt, 1e-10)?;
    Ok(NegativityResult::single(
        negative_part(spectrum),
        rho.truncation().n_max(),
        rho.tail_bound(),
    ))
}

/// Smaller eigenvalue of `[[d1, c], [c, d2]]`, evaluated without cancellation.
fn lower_eigenvalue(d1: f64, d2: f64, c: f64) -> f64 {
    let upper = 0.5 * (d1 + d2 + ((d1 - d2).powi(2) + 4.0 * c * c).sqrt());
    if upper == 0.0 {
        0.0
    } else {
        (d1 * d2 - c * c) / upper
    }
}

/// Negativity of ρ_{A-out} at `q_R = 1` from its 2×2 blocks.
///
/// Block `n` spans `{|0,n+1⟩, |1,n⟩}` for `n < n_max` with
/// `d1 = T^{2(n+1)}/(2C²)`, `d2 = n T^{2(n-1)}/(2C⁴)`, `c = √(n+1) T^{2n}/(2C³)`.
/// The remaining states `|0,0⟩` and `|1,n_max⟩` are non-negative singletons.
pub fn negativity_blockwise_qr1(s: &SqueezingParams, t: Truncation) -> Result<NegativityResult> {
    if s.is_singular() {
        return Err(Error::SingularLimit);
    }
    let x = s.tanh_r() * s.tanh_r();
    let c2 = s.sech2_r();
    let c3 = c2 / s.cosh_r();
    let c4 = c2 * c2;

    let mut value = 0.0;
    let mut x_n = 1.0; // x^n
    let mut x_nm1 = 0.0; // x^{n-1}, unused at n = 0
    for n in 0..t.n_max() {
        let nf = n as f64;
        let d1 = 0.5 * x_n * x * c2;
        let d2 = if n == 0 { 0.0 } else { 0.5 * nf * x_nm1 * c4 };
        let c = 0.5 * (nf + 1.0).sqrt() * x_n * c3;
        let lambda = lower_eigenvalue(d1, d2, c);
        if lambda < -EIG_FLOOR {
            value -= lambda;
        }
        x_nm1 = x_n;
        x_n *= x;
    }
    Ok(NegativityResult::single(
        value,
        t.n_max(),
        psi_tail_bound(s, t),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergencePolicy {
    pub start_n_max: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub tail_tol: f64,
    pub n_max_cap: usize,
}

impl Default for ConvergencePolicy {
    fn default() -> Self {
        Self {
            start_n_max: 8,
            rel_tol: 1e-8,
            abs_tol: 1e-10,
            tail_tol: 1e-10,
            n_max_cap: 512,
        }
    }
}

fn negativity_at(
    s: &SqueezingParams,
    q: ModeSplit,
    channel: Channel,
    t: Truncation,
) -> Result<NegativityResult> {
    let single_mode_out = match channel {
        Channel::AOut => q.q_l() == 0.0,
        Channel::AHor => q.q_r() == 0.0,
    };
    if single_mode_out {
        negativity_blockwise_qr1(s, t)
    } else {
        negativity(&reduced_state(s, q, t, channel)?)
    }
}

/// Negativity at `m_omega` with the truncation doubled until two successive
/// rungs agree and the dropped weight is below `policy.tail_tol`.
///
/// `m_omega = 0` returns the analytic singular limit, zero. Hitting the cap
/// returns the last rung with `converged = false`.
pub fn converged_negativity(
    m_omega: f64,
    q: ModeSplit,
    channel: Channel,
    policy: &ConvergencePolicy,
) -> Result<NegativityResult> {
    let s = squeezing_parameter(m_omega)?;
    if s.is_singular() {
        return Ok(NegativityResult {
            value: 0.0,
            n_max_used: 0,
            tail_bound: 0.0,
            converged: true,
            ladder: Vec::new(),
        });
    }

    let mut n_max = policy.start_n_max.clamp(1, policy.n_max_cap.max(1));
    let mut ladder = Vec::new();
    let first = negativity_at(&s, q, channel, Truncation::new(n_max))?;
    let mut prev = first.value;
    let mut tail = first.tail_bound;
    ladder.push(Rung {
        n_max,
        value: prev,
        tail_bound: tail,
    });

    loop {
        let next = n_max * 2;
        if next > policy.n_max_cap {
            return Ok(NegativityResult {
                value: prev,
                n_max_used: n_max,
                tail_bound: tail,
                converged: false,
                ladder,
            });
        }
        let r = negativity_at(&s, q, channel, Truncation::new(next))?;
        ladder.push(Rung {
            n_max: next,
            value: r.value,
            tail_bound: r.tail_bound,
        });
        let settled = (r.value - prev).abs() < policy.rel_tol * r.value + policy.abs_tol;
        n_max = next;
        prev = r.value;
        tail = r.tail_bound;
        if settled && tail < policy.tail_tol {
            return Ok(NegativityResult {
                value: prev,
                n_max_used: n_max,
                tail_bound: tail,
                converged: true,
                ladder,
            });
        }
    }
}
