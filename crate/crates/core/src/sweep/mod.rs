//! Parallel (mΩ, q_R, channel) sweeps and their CSV outputs.

mod config;
mod output;

use rayon::prelude::*;

pub use config::{parse_config, parse_grid, validate, ConfigError, SweepConfig, DEFAULT_Q_R};
pub use output::{
    emit_bogo_diagnostics, emit_csv, write_bogo_diagnostics, write_csv, OutputError,
    BOGO_HEADER, CSV_HEADER,
};

use crate::collapse_state::{Channel, ModeSplit};
use crate::entanglement::converged_negativity;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub m_omega: f64,
    pub q_r: f64,
    pub channel: Channel,
    pub negativity: f64,
    pub n_max_used: usize,
    pub tail_bound: f64,
    pub converged: bool,
}

/// Rows sorted by `(channel, q_r, m_omega)`, A-out before A-hor.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn all_converged(&self) -> bool {
        self.rows.iter().all(|r| r.converged)
    }

    pub fn non_converged(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| !r.converged)
    }

    pub fn find(&self, channel: Channel, q_r: f64, m_omega: f64) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.channel == channel && r.q_r == q_r && r.m_omega == m_omega)
    }

    /// Pairs `(A-hor at q_R, A-out at q_L)` present in the result whose
    /// negativities differ by more than `tol`.
    pub fn swap_violations(&self, tol: f64) -> Vec<(&SweepRow, &SweepRow)> {
        let mut out = Vec::new();
        for hor in self.rows.iter().filter(|r| r.channel == Channel::AHor) {
            let Ok(split) = ModeSplit::new(hor.q_r) else {
                continue;
            };
            let q_l = split.q_l();
            let partner = self.rows.iter().find(|r| {
                r.channel == Channel::AOut
                    && r.m_omega == hor.m_omega
                    && (r.q_r - q_l).abs() <= 4.0 * f64::EPSILON
            });
            if let Some(out_row) = partner {
                if (out_row.negativity - hor.negativity).abs() > tol {
                    out.push((hor, out_row));
                }
            }
        }
        out
    }
}

fn sort_rows(rows: &mut [SweepRow]) {
    rows.sort_by(|a, b| {
        a.channel
            .cmp(&b.channel)
            .then(a.q_r.total_cmp(&b.q_r))
            .then(a.m_omega.total_cmp(&b.m_omega))
    });
}

/// Evaluate every grid point with [`converged_negativity`] in parallel.
///
/// Non-converged points are kept and flagged.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    let mut points = Vec::new();
    for &channel in &cfg.channels {
        for &q_r in &cfg.q_r_values {
            let split = ModeSplit::new(q_r)?;
            for &m_omega in &cfg.m_omega_grid {
                points.push((channel, q_r, split, m_omega));
            }
        }
    }
    let mut rows = points
        .into_par_iter()
        .map(|(channel, q_r, split, m_omega)| {
            let n = converged_negativity(m_omega, split, channel, &cfg.policy)?;
            Ok(SweepRow {
                m_omega,
                q_r,
                channel,
                negativity: n.value,
                n_max_used: n.n_max_used,
                tail_bound: n.tail_bound,
                converged: n.converged,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    sort_rows(&mut rows);
    Ok(SweepResult { rows })
}
