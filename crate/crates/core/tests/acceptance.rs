//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails.
//!
//! Run with `cargo test -p vaidya-negativity --test acceptance -- --nocapture`.

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::OnceLock;
use std::time::Instant;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vaidya_negativity::bogoliubov::{default_diagnostic_grid, diagnostic_row, CollapseGeometry};
use vaidya_negativity::collapse_state::{
    hawking_temperature, psi_amplitudes, reduce_to_a_out, reduced_state, squeezing_parameter,
    thermal_reduction,
};
use vaidya_negativity::entanglement::{
    converged_negativity, negativity, negativity_blockwise_qr1, partial_transpose_alice,
    ConvergencePolicy,
};
use vaidya_negativity::sweep::{emit_csv, run_sweep, SweepConfig, SweepResult, DEFAULT_Q_R};
use vaidya_negativity::{Channel, ModeSplit, SqueezingParams, Truncation};

type Outcome = Result<String, String>;

const SINGULAR_GRID: [f64; 4] = [0.05, 0.02, 0.01, 0.005];
const SINGULAR_THRESHOLD: f64 = 0.02;
const SINGULAR_RUNTIME_S: f64 = 60.0;
const PLATEAU_TOL: f64 = 1e-6;
const R0_TOL: f64 = 1e-10;
const SWAP_TOL: f64 = 1e-9;
const ORACLE_MATRIX_TOL: f64 = 1e-14;
const ORACLE_NEG_TOL: f64 = 1e-12;
const BLOCK_TOL: f64 = 1e-10;
const BOGO_TOL: f64 = 1e-10;

fn default_sweep() -> &'static SweepResult {
    static CELL: OnceLock<SweepResult> = OnceLock::new();
    CELL.get_or_init(|| run_sweep(&SweepConfig::default()).expect("default sweep"))
}

fn singular_limit_degradation() -> Outcome {
    let start = Instant::now();
    let policy = ConvergencePolicy::default();
    let mut problems = Vec::new();
    let mut summary = Vec::new();
    for &q_r in &DEFAULT_Q_R {
        let split = ModeSplit::new(q_r).unwrap();
        for channel in [Channel::AOut, Channel::AHor] {
            let values: Vec<f64> = SINGULAR_GRID
                .iter()
                .map(|&m| {
                    let r = converged_negativity(m, split, channel, &policy).unwrap();
                    assert!(r.converged);
                    r.value
                })
                .collect();
            let last = values[values.len() - 1];
            let label = format!("{channel} q_R={q_r:.4}");
            if last >= SINGULAR_THRESHOLD {
                problems.push(format!("{label}: N(0.005) = {last:.6} >= {SINGULAR_THRESHOLD}"));
            }
            if !values.windows(2).all(|w| w[1] < w[0]) {
                problems.push(format!("{label}: not strictly decreasing {values:?}"));
            }
            summary.push(format!("{label}: {last:.4e}"));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= SINGULAR_RUNTIME_S {
        problems.push(format!("runtime {elapsed:.1}s >= {SINGULAR_RUNTIME_S}s"));
    }
    if problems.is_empty() {
        Ok(format!("{} in {elapsed:.2}s", summary.join("; ")))
    } else {
        Err(problems.join("; "))
    }
}

fn maximal_entanglement_plateau() -> Outcome {
    let r = converged_negativity(2.0, ModeSplit::single_mode(), Channel::AOut, &ConvergencePolicy::default())
        .map_err(|e| e.to_string())?;
    let dev = (r.value - 0.5).abs();
    if r.converged && dev < PLATEAU_TOL {
        Ok(format!("N = {:.12} (|N - 0.5| = {dev:.2e}, n_max {})", r.value, r.n_max_used))
    } else {
        Err(format!("N = {:.12}, converged = {}", r.value, r.converged))
    }
}

/// ½[(|00⟩ + q_R|11⟩)(h.c.) + q_L²|10⟩⟨10|] on the 2×2 basis {|0,0⟩,|0,1⟩,|1,0⟩,|1,1⟩}.
fn hand_traced_r0(q_r: f64, q_l: f64) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(4, 4);
    m[(0, 0)] = 0.5;
    m[(0, 3)] = 0.5 * q_r;
    m[(3, 0)] = 0.5 * q_r;
    m[(3, 3)] = 0.5 * q_r * q_r;
    m[(2, 2)] = 0.5 * q_l * q_l;
    m
}

fn unsqueezed_analytic_family() -> Outcome {
    let s = SqueezingParams::from_tanh(0.0).unwrap();
    let mut parts = Vec::new();
    for &q_r in &DEFAULT_Q_R {
        let q = ModeSplit::new(q_r).unwrap();
        let q_l = q.q_l();
        let expected = ((q_l.powi(4) + 4.0 * q_r * q_r).sqrt() - q_l * q_l) / 4.0;

        let hand = hand_traced_r0(q_r, q_l);
        let lib = reduced_state(&s, q, Truncation::new(1), Channel::AOut).unwrap();
        let diff = (lib.entries() - &hand).amax();
        if diff > 1e-15 {
            return Err(format!("q_R={q_r}: library r=0 matrix differs from hand trace by {diff:e}"));
        }
        let hand_neg = common::dense_negativity_of_pt(&common::explicit_partial_transpose(&hand));
        for n_max in [1, 4, 16] {
            let lib = negativity(&reduced_state(&s, q, Truncation::new(n_max), Channel::AOut).unwrap())
                .unwrap()
                .value;
            if (lib - expected).abs() > R0_TOL || (hand_neg - expected).abs() > R0_TOL {
                return Err(format!("q_R={q_r} n_max={n_max}: lib {lib}, oracle {hand_neg}, formula {expected}"));
            }
        }
        parts.push(format!("q_R={q_r:.4}: {expected:.6}"));
    }
    Ok(parts.join("; "))
}

fn swap_symmetry_default_grid() -> Outcome {
    let res = default_sweep();
    let policy = SweepConfig::default().policy;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for row in res.rows.iter().filter(|r| r.channel == Channel::AHor) {
        let swapped = ModeSplit::new(row.q_r).unwrap().swapped();
        let out = converged_negativity(row.m_omega, swapped, Channel::AOut, &policy).unwrap();
        let d = (out.value - row.negativity).abs();
        worst = worst.max(d);
        count += 1;
        if d > SWAP_TOL {
            return Err(format!(
                "mΩ={} q_R={}: A-hor {} vs A-out(q_L) {}",
                row.m_omega, row.q_r, row.negativity, out.value
            ));
        }
    }
    if !res.swap_violations(SWAP_TOL).is_empty() {
        return Err("in-sweep swap check failed at q_R = 2^-1/2".into());
    }
    // large-mass trade-off: A-out(q_R) + A-hor(q_R) pairs with q_R² + q_L² = 1
    let mut tradeoff = Vec::new();
    for &q_r in &DEFAULT_Q_R {
        let out = res.find(Channel::AOut, q_r, 2.0).unwrap().negativity;
        let hor = res.find(Channel::AHor, q_r, 2.0).unwrap().negativity;
        tradeoff.push(format!("{q_r:.3}: {out:.4}/{hor:.4}"));
    }
    Ok(format!(
        "{count} points, max |diff| = {worst:.2e}; mΩ=2 out/hor {}",
        tradeoff.join(", ")
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst_m: f64 = 0.0;
    let mut worst_n: f64 = 0.0;
    for draw in 0..20 {
        let tanh = rng.gen_range(0.0..0.99);
        let q_r = rng.gen_range(FRAC_1_SQRT_2..=1.0);
        let n_max = rng.gen_range(0..=6);
        let s = SqueezingParams::from_tanh(tanh).unwrap();
        let q = ModeSplit::new(q_r).unwrap();
        let psi = psi_amplitudes(&s, q, Truncation::new(n_max)).unwrap();
        let rho = reduce_to_a_out(&psi, &s, q).unwrap();
        let oracle = common::brute_force_reduce(&psi, Channel::AOut);
        let dm = (rho.entries() - &oracle).amax();
        let lib_n = negativity(&rho).unwrap().value;
        let oracle_n = common::dense_negativity_of_pt(&common::explicit_partial_transpose(&oracle));
        let dn = (lib_n - oracle_n).abs();
        if !(dm <= ORACLE_MATRIX_TOL) || !(dn <= ORACLE_NEG_TOL) {
            return Err(format!("draw {draw} (tanh {tanh}, q_R {q_r}, n_max {n_max}): matrix {dm:e}, negativity {dn:e}"));
        }
        // the transposed matrix must also match the displayed expansion
        let disp = common::displayed_pt_a_out(tanh, q.q_r(), q.q_l(), n_max);
        let dp = (partial_transpose_alice(&rho).unwrap() - disp).amax();
        if dp > ORACLE_MATRIX_TOL {
            return Err(format!("draw {draw}: partial transpose vs displayed form {dp:e}"));
        }
        worst_m = worst_m.max(dm);
        worst_n = worst_n.max(dn);
    }
    Ok(format!("20 draws, max matrix diff {worst_m:.1e}, max negativity diff {worst_n:.1e}"))
}

fn block_dense_agreement() -> Outcome {
    let mut parts = Vec::new();
    for tanh in [0.0, 0.2, 0.5, 0.8, 0.95] {
        let s = SqueezingParams::from_tanh(tanh).unwrap();
        let t = Truncation::new(160);
        let dense = negativity(&reduced_state(&s, ModeSplit::single_mode(), t, Channel::AOut).unwrap())
            .unwrap()
            .value;
        let block = negativity_blockwise_qr1(&s, t).unwrap().value;
        let d = (dense - block).abs();
        if d > BLOCK_TOL {
            return Err(format!("tanh r = {tanh}: dense {dense} vs block {block}"));
        }
        parts.push(format!("{tanh}: {block:.6} ({d:.0e})"));
    }
    Ok(parts.join("; "))
}

fn thermal_consistency() -> Outcome {
    let m = 1.0;
    let t_h = hawking_temperature(m).unwrap();
    let mut parts = Vec::new();
    for m_omega in [0.05, 0.1, 0.5] {
        let s = squeezing_parameter(m_omega).unwrap();
        let omega = m_omega / m;
        let boltzmann = (-omega / t_h).exp();
        let x = s.tanh_r() * s.tanh_r();
        if (boltzmann - x).abs() > 1e-15 {
            return Err(format!("mΩ={m_omega}: exp(-ω/T_H) = {boltzmann} but tanh²r = {x}"));
        }
        let exact = 1.0 / (8.0 * PI * m_omega).exp_m1();
        let mut last_gap = f64::INFINITY;
        for n_max in [4, 16, 64, 256, 512] {
            let th = thermal_reduction(&s, Truncation::new(n_max)).unwrap();
            if (th.exact_mean_occupation() - exact).abs() > 1e-12 * exact {
                return Err(format!("mΩ={m_omega}: closed-form mean {} vs {exact}", th.exact_mean_occupation()));
            }
            let gap = exact - th.mean_occupation();
            if gap < -1e-14 || gap > th.mean_occupation_tail() + 1e-14 {
                return Err(format!("mΩ={m_omega} n_max={n_max}: gap {gap:e} outside tail {:e}", th.mean_occupation_tail()));
            }
            last_gap = gap;
        }
        if last_gap > 1e-10 {
            return Err(format!("mΩ={m_omega}: truncated mean did not converge ({last_gap:e})"));
        }
        parts.push(format!("mΩ={m_omega}: ⟨n⟩ = {exact:.6}"));
    }
    Ok(format!("T_H(m=1) = {t_h:.7}; {}", parts.join("; ")))
}

fn bogoliubov_identities() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut rows = 0;
    for v_h in [0.0, 1.0] {
        let geom = CollapseGeometry::new(1.0, v_h).unwrap();
        for (w, big) in default_diagnostic_grid(&geom) {
            let row = diagnostic_row(w, big, &geom).map_err(|e| e.to_string())?;
            worst = worst.max(row.max_residual());
            rows += 1;
            if !(row.max_residual() < BOGO_TOL) {
                return Err(format!("ω={w} Ω={big} v_H={v_h}: {row:?}"));
            }
        }
    }
    Ok(format!("{rows} rows, max residual {worst:.2e}"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    emit_csv(default_sweep(), &a).map_err(|e| e.to_string())?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let second = pool.install(|| run_sweep(&SweepConfig::default())).map_err(|e| e.to_string())?;
    emit_csv(&second, &b).map_err(|e| e.to_string())?;
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    if x == y {
        Ok(format!("{} bytes, {} rows, identical", x.len(), second.rows.len()))
    } else {
        Err("CSV files differ".into())
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("singular-limit degradation", singular_limit_degradation),
        ("maximal-entanglement plateau", maximal_entanglement_plateau),
        ("r = 0 analytic family", unsqueezed_analytic_family),
        ("swap symmetry", swap_symmetry_default_grid),
        ("oracle equivalence", oracle_equivalence),
        ("block/dense agreement", block_dense_agreement),
        ("thermal consistency", thermal_consistency),
        ("Bogoliubov identities", bogoliubov_identities),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                println!("FAIL {name}: {detail}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
