//! The squeezed 'in' vacuum, the entangled state |Ψ⟩ in the out/hor basis,
//! and its reductions to Alice ⊗ out and Alice ⊗ hor.
//!
//! Everything here is real: the phases of the Bogoliubov coefficients never
//! reach the Fock-space amplitudes, so matrices are stored as real symmetric.
//! Truncated series are never renormalized. Each builder records the exact
//! analytic weight it dropped as `tail_bound`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::fock_space::{bi, tri, Space, Truncation};

/// Two-mode squeezing between the out and hor modes at one frequency,
/// set by `tanh r = exp(-4π mΩ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingParams {
    m_omega: f64,
    r: f64,
    tanh_r: f64,
    cosh_r: f64,
    /// 1 - tanh²r = 1/cosh²r, kept separately for accuracy near tanh r → 1.
    sech2_r: f64,
}

/// Squeezing for the dimensionless product `m_omega` (mass × frequency).
///
/// `m_omega = 0` yields the singular-limit value (`is_singular()`), which
/// every state builder refuses.
pub fn squeezing_parameter(m_omega: f64) -> Result<SqueezingParams> {
    if !m_omega.is_finite() || m_omega < 0.0 {
        return Err(Error::Domain(format!(
            "m*Omega must be finite and non-negative, got {m_omega}"
        )));
    }
    let tanh_r = (-4.0 * PI * m_omega).exp();
    let sech2_r = -(-8.0 * PI * m_omega).exp_m1();
    Ok(SqueezingParams {
        m_omega,
        r: tanh_r.atanh(),
        tanh_r,
        cosh_r: sech2_r.sqrt().recip(),
        sech2_r,
    })
}

impl SqueezingParams {
    /// Squeezing specified directly through `tanh r` in `[0, 1]`.
    pub fn from_tanh(tanh_r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&tanh_r) {
            return Err(Error::Domain(format!(
                "tanh r must lie in [0, 1], got {tanh_r}"
            )));
        }
        let sech2_r = (1.0 - tanh_r) * (1.0 + tanh_r);
        Ok(Self {
            m_omega: -tanh_r.ln() / (4.0 * PI),
            r: tanh_r.atanh(),
            tanh_r,
            cosh_r: sech2_r.sqrt().recip(),
            sech2_r,
        })
    }

    pub fn m_omega(&self) -> f64 {
        self.m_omega
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn tanh_r(&self) -> f64 {
        self.tanh_r
    }

    pub fn cosh_r(&self) -> f64 {
        self.cosh_r
    }

    pub fn sinh_r(&self) -> f64 {
        self.tanh_r * self.cosh_r
    }

    /// `1/cosh²r`.
    pub fn sech2_r(&self) -> f64 {
        self.sech2_r
    }

    /// `tanh r = 1`, infinite squeezing.
    pub fn is_singular(&self) -> bool {
        self.sech2_r == 0.0
    }

    fn require_regular(&self) -> Result<()> {
        if self.is_singular() {
            Err(Error::SingularLimit)
        } else {
            Ok(())
        }
    }
}

/// Weights of the R and L modes in Bob's excitation operator.
///
/// Constructed through [`ModeSplit::new`] the pair satisfies
/// `2^{-1/2} <= q_r <= 1`, `q_l = sqrt(1 - q_r²)`. [`ModeSplit::swapped`]
/// exchanges the two weights and so leaves that range; it exists for the
/// out/hor exchange symmetry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSplit {
    q_r: f64,
    q_l: f64,
}

pub const Q_R_MIN: f64 = FRAC_1_SQRT_2;

impl ModeSplit {
    pub fn new(q_r: f64) -> Result<Self> {
        // one ulp of slack so that 1/sqrt(2) written out in decimal is accepted
        if !q_r.is_finite() || q_r < Q_R_MIN * (1.0 - f64::EPSILON) || q_r > 1.0 {
            return Err(Error::Domain(format!(
                "q_R = {q_r} violates 2^(-1/2) <= q_R <= 1"
            )));
        }
        Ok(Self {
            q_r,
            q_l: ((1.0 - q_r) * (1.0 + q_r)).sqrt(),
        })
    }

    /// `q_R = 1`, Bob's excitation entirely in the R mode.
    pub fn single_mode() -> Self {
        Self { q_r: 1.0, q_l: 0.0 }
    }

    pub fn q_r(&self) -> f64 {
        self.q_r
    }

    pub fn q_l(&self) -> f64 {
        self.q_l
    }

    pub fn swapped(self) -> Self {
        Self {
            q_r: self.q_l,
            q_l: self.q_r,
        }
    }
}

/// Which of Bob's modes survives the partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    /// Alice ⊗ out, hor traced.
    AOut,
    /// Alice ⊗ hor, out traced.
    AHor,
}

impl Channel {
    pub fn label(self) -> &'static str {
        match self {
            Channel::AOut => "A-out",
            Channel::AHor => "A-hor",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Squared norm of the truncated geometric-series tails of |Ψ⟩ beyond `n_max`.
///
/// With `x = tanh²r`, the Alice-0 branch drops `½ x^{N+1}` and the Alice-1
/// branch drops `½ (1-x)² Σ_{n≥N} (n+1) x^n = ½ x^N ((N+1)(1-x) + x)`.
pub fn psi_tail_bound(s: &SqueezingParams, t: Truncation) -> f64 {
    let x = s.tanh_r * s.tanh_r;
    let n = t.n_max() as i32;
    let x_n = x.powi(n);
    0.5 * x_n * x + 0.5 * x_n * ((n as f64 + 1.0) * s.sech2_r + x)
}

/// `amp[n] = tanh^n r / cosh r` for `n = 0..=n_max`.
pub fn squeezed_vacuum_amplitudes(s: &SqueezingParams, t: Truncation) -> Result<Vec<f64>> {
    s.require_regular()?;
    let inv_cosh = s.cosh_r.recip();
    Ok(powers(s.tanh_r, t.n_max())
        .into_iter()
        .map(|p| p * inv_cosh)
        .collect())
}

fn powers(base: f64, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut acc = 1.0;
    for _ in 0..=n_max {
        out.push(acc);
        acc *= base;
    }
    out
}

/// Coefficients of |Ψ⟩ on the truncated Alice ⊗ out ⊗ hor basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TripartiteAmplitudes {
    trunc: Truncation,
    squeezing: SqueezingParams,
    split: ModeSplit,
    amps: Vec<f64>,
    tail_bound: f64,
}

impl TripartiteAmplitudes {
    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amps
    }

    pub fn get(&self, alice: usize, out_n: usize, hor_n: usize) -> f64 {
        self.amps[tri(self.trunc, alice, out_n, hor_n)]
    }

    /// `1 - ⟨Ψ|Ψ⟩` of the truncated vector, in closed form.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn squared_norm(&self) -> f64 {
        self.amps.iter().map(|a| a * a).sum()
    }
}

pub fn psi_amplitudes(
    s: &SqueezingParams,
    q: ModeSplit,
    t: Truncation,
) -> Result<TripartiteAmplitudes> {
    s.require_regular()?;
    let n_max = t.n_max();
    let tanh_n = powers(s.tanh_r, n_max);
    let vac = FRAC_1_SQRT_2 / s.cosh_r;
    let exc = FRAC_1_SQRT_2 * s.sech2_r;

    let mut amps = vec![0.0; t.dimension(Space::Tripartite)];
    for n in 0..=n_max {
        amps[tri(t, 0, n, n)] = vac * tanh_n[n];
        if n < n_max {
            let a = exc * ((n + 1) as f64).sqrt() * tanh_n[n];
            amps[tri(t, 1, n + 1, n)] = q.q_r * a;
            amps[tri(t, 1, n, n + 1)] = q.q_l * a;
        }
    }
    Ok(TripartiteAmplitudes {
        trunc: t,
        squeezing: *s,
        split: q,
        amps,
        tail_bound: psi_tail_bound(s, t),
    })
}

/// Reduced state of Alice and one of Bob's modes.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    trunc: Truncation,
    entries: DMatrix<f64>,
    which: Channel,
    tail_bound: f64,
}

impl DensityMatrix {
    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<f64> {
        self.entries
    }

    pub fn channel(&self) -> Channel {
        self.which
    }

    /// `1 - tr ρ`.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace()
    }

    pub fn get(&self, alice: usize, mode_n: usize, alice2: usize, mode_n2: usize) -> f64 {
        self.entries[(bi(self.trunc, alice, mode_n), bi(self.trunc, alice2, mode_n2))]
    }
}

/// Closed-form partial trace of |Ψ⟩⟨Ψ| keeping one of Bob's modes.
///
/// `kept` is the weight of the operator that excites the surviving mode
/// directly (q_R for out, q_L for hor); `traced` the other one. Terms are
/// included exactly when every tripartite component they come from fits in
/// the truncation, so the result equals the explicit partial trace of the
/// truncated vector.
fn reduced_closed_form(s: &SqueezingParams, t: Truncation, kept: f64, traced: f64) -> DMatrix<f64> {
    let n_max = t.n_max();
    let dim = t.dimension(Space::Bipartite);
    let tanh = s.tanh_r;
    let x_n = powers(tanh * tanh, n_max);
    let c2 = s.sech2_r; // 1/C²
    let c3 = c2 * s.cosh_r.recip();
    let c4 = c2 * c2;

    let mut rho = DMatrix::zeros(dim, dim);
    for n in 0..=n_max {
        rho[(bi(t, 0, n), bi(t, 0, n))] = 0.5 * x_n[n] * c2;
    }
    for n in 0..n_max {
        let nf = (n + 1) as f64;
        let diag = 0.5 * nf * x_n[n] * c4;
        rho[(bi(t, 1, n + 1), bi(t, 1, n + 1))] += kept * kept * diag;
        rho[(bi(t, 1, n), bi(t, 1, n))] += traced * traced * diag;

        // Alice coherence, kept branch: ⟨hor n| links |0,n,n⟩ and |1,n+1,n⟩.
        let coh_kept = 0.5 * nf.sqrt() * x_n[n] * c3 * kept;
        set_sym(&mut rho, bi(t, 0, n), bi(t, 1, n + 1), coh_kept);
        // traced branch: ⟨hor n+1| links |0,n+1,n+1⟩ and |1,n,n+1⟩.
        let coh_traced = 0.5 * nf.sqrt() * x_n[n] * tanh * c3 * traced;
        set_sym(&mut rho, bi(t, 0, n + 1), bi(t, 1, n), coh_traced);

        if n + 2 <= n_max {
            let cross = 0.5 * (nf * (nf + 1.0)).sqrt() * x_n[n] * tanh * c4 * kept * traced;
            set_sym(&mut rho, bi(t, 1, n), bi(t, 1, n + 2), cross);
        }
    }
    rho
}

fn set_sym(m: &mut DMatrix<f64>, i: usize, j: usize, v: f64) {
    m[(i, j)] = v;
    m[(j, i)] = v;
}

fn check_consistent(psi: &TripartiteAmplitudes, s: &SqueezingParams, q: ModeSplit) -> Result<()> {
    if psi.squeezing != *s || psi.split != q {
        return Err(Error::Domain(
            "state was built with different squeezing or mode split".into(),
        ));
    }
    Ok(())
}

/// ρ_{A-out} = tr_hor |Ψ⟩⟨Ψ| on the truncation of `psi`.
pub fn reduce_to_a_out(
    psi: &TripartiteAmplitudes,
    s: &SqueezingParams,
    q: ModeSplit,
) -> Result<DensityMatrix> {
    check_consistent(psi, s, q)?;
    Ok(DensityMatrix {
        trunc: psi.trunc,
        entries: reduced_closed_form(s, psi.trunc, q.q_r, q.q_l),
        which: Channel::AOut,
        tail_bound: psi.tail_bound,
    })
}

/// ρ_{A-hor} = tr_out |Ψ⟩⟨Ψ|. Identical to ρ_{A-out} with q_R and q_L exchanged.
pub fn reduce_to_a_hor(
    psi: &TripartiteAmplitudes,
    s: &SqueezingParams,
    q: ModeSplit,
) -> Result<DensityMatrix> {
    check_consistent(psi, s, q)?;
    Ok(DensityMatrix {
        trunc: psi.trunc,
        entries: reduced_closed_form(s, psi.trunc, q.q_l, q.q_r),
        which: Channel::AHor,
        tail_bound: psi.tail_bound,
    })
}

/// Build |Ψ⟩ and reduce it onto `channel` in one step.
pub fn reduced_state(
    s: &SqueezingParams,
    q: ModeSplit,
    t: Truncation,
    channel: Channel,
) -> Result<DensityMatrix> {
    let psi = psi_amplitudes(s, q, t)?;
    match channel {
        Channel::AOut => reduce_to_a_out(&psi, s, q),
        Channel::AHor => reduce_to_a_hor(&psi, s, q),
    }
}

/// Single-mode thermal state tr_hor |0_in⟩⟨0_in| truncated at `n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalState {
    trunc: Truncation,
    populations: Vec<f64>,
    x: f64,
    tail_bound: f64,
}

impl ThermalState {
    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    /// Diagonal `tanh^{2n} r / cosh² r`.
    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    /// Dropped population `tanh^{2(N+1)} r`.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.populations))
    }

    pub fn mean_occupation(&self) -> f64 {
        self.populations
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum()
    }

    /// Mean occupation of the untruncated state, `sinh²r = 1/(exp(8π mΩ) - 1)`.
    pub fn exact_mean_occupation(&self) -> f64 {
        self.x / (1.0 - self.x)
    }

    /// `Σ_{n>N} n p_n = x^{N+1} ((N+1) + x/(1-x))`.
    pub fn mean_occupation_tail(&self) -> f64 {
        let m = (self.trunc.n_max() + 1) as f64;
        self.tail_bound * (m + self.exact_mean_occupation())
    }
}

pub fn thermal_reduction(s: &SqueezingParams, t: Truncation) -> Result<ThermalState> {
    s.require_regular()?;
    let x = s.tanh_r * s.tanh_r;
    let populations = powers(x, t.n_max())
        .into_iter()
        .map(|p| p * s.sech2_r)
        .collect();
    Ok(ThermalState {
        trunc: t,
        populations,
        x,
        tail_bound: x.powi(t.n_max() as i32 + 1),
    })
}

/// `T_H = 1/(8π m)`.
pub fn hawking_temperature(m: f64) -> Result<f64> {
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::Domain(format!("mass must be positive, got {m}")));
    }
    Ok((8.0 * PI * m).recip())
}
