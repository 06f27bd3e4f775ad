//! Oracles shared by the integration tests. Nothing here calls the
//! library's reduction code.

#![allow(dead_code)]

use nalgebra::DMatrix;
use vaidya_negativity::collapse_state::TripartiteAmplitudes;
use vaidya_negativity::Channel;

/// |Ψ⟩⟨Ψ| on the full tripartite space, then an explicit sum over the traced index.
pub fn brute_force_reduce(psi: &TripartiteAmplitudes, channel: Channel) -> DMatrix<f64> {
    let l = psi.truncation().levels();
    let dim = 2 * l * l;
    let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
    let full = &v * v.transpose();
    assert_eq!(full.nrows(), dim);
    let idx = |a: usize, o: usize, h: usize| (a * l + o) * l + h;
    let mut rho = DMatrix::zeros(2 * l, 2 * l);
    for a in 0..2 {
        for k in 0..l {
            for b in 0..2 {
                for k2 in 0..l {
                    let mut acc = 0.0;
                    for tr in 0..l {
                        acc += match channel {
                            Channel::AOut => full[(idx(a, k, tr), idx(b, k2, tr))],
                            Channel::AHor => full[(idx(a, tr, k), idx(b, tr, k2))],
                        };
                    }
                    rho[(a * l + k, b * l + k2)] = acc;
                }
            }
        }
    }
    rho
}

/// ρ^{T_A}_{A-out} written term by term from its displayed expansion, with
/// the q_R coherence weight `√(n+1) T^{2n} / (2C³)` that the partial trace
/// of |Ψ⟩ produces. Terms are kept when their tripartite sources fit
/// inside `n_max`.
pub fn displayed_pt_a_out(tanh_r: f64, q_r: f64, q_l: f64, n_max: usize) -> DMatrix<f64> {
    let l = n_max + 1;
    let t = tanh_r;
    let c = 1.0 / (1.0 - t * t).sqrt();
    let mut m = DMatrix::zeros(2 * l, 2 * l);
    let k = |a: usize, n: usize| a * l + n;
    for n in 0..=n_max {
        m[(k(0, n), k(0, n))] += t.powi(2 * n as i32) / (2.0 * c * c);
    }
    for n in 0..n_max {
        let nf = n as f64;
        let w = (nf + 1.0) * t.powi(2 * n as i32) / (2.0 * c.powi(4));
        m[(k(1, n + 1), k(1, n + 1))] += q_r * q_r * w;
        m[(k(1, n), k(1, n))] += q_l * q_l * w;
        let coh_r = (nf + 1.0).sqrt() * t.powi(2 * n as i32) / (2.0 * c.powi(3)) * q_r;
        m[(k(1, n), k(0, n + 1))] += coh_r;
        m[(k(0, n + 1), k(1, n))] += coh_r;
        let coh_l = (nf + 1.0).sqrt() * t.powi(2 * n as i32 + 1) / (2.0 * c.powi(3)) * q_l;
        m[(k(1, n + 1), k(0, n))] += coh_l;
        m[(k(0, n), k(1, n + 1))] += coh_l;
        if n + 2 <= n_max {
            let x = ((nf + 1.0) * (nf + 2.0)).sqrt() * t.powi(2 * n as i32 + 1) / (2.0 * c.powi(4)) * q_r * q_l;
            m[(k(1, n), k(1, n + 2))] += x;
            m[(k(1, n + 2), k(1, n))] += x;
        }
    }
    m
}

/// Negativity from a plain symmetric matrix via an independent dense
/// eigensolve (nalgebra with eigenvectors), floor 1e-12.
pub fn dense_negativity_of_pt(pt: &DMatrix<f64>) -> f64 {
    let eig = nalgebra::SymmetricEigen::new(pt.clone());
    eig.eigenvalues.iter().filter(|&&v| v < -1e-12).map(|v| -v).sum()
}

/// Alice partial transpose by explicit element rule.
pub fn explicit_partial_transpose(m: &DMatrix<f64>) -> DMatrix<f64> {
    let l = m.nrows() / 2;
    DMatrix::from_fn(2 * l, 2 * l, |i, j| {
        let (a, n) = (i / l, i % l);
        let (b, n2) = (j / l, j % l);
        m[(b * l + n, a * l + n2)]
    })
}
