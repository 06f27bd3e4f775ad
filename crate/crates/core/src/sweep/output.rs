//! CSV writers. Floats are written with 17 significant digits in
//! scientific notation; every line, the last included, ends in `\n`.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::SweepResult;
use crate::bogoliubov::{diagnostic_row, CollapseGeometry};
use crate::error::Error;

pub const CSV_HEADER: &str = "m_omega,q_r,channel,negativity,n_max_used,tail_bound,converged";

pub const BOGO_HEADER: &str = "omega,capital_omega,abs_alpha,arg_alpha,arg_gamma,\
beta_residual,gamma_residual,delta_residual,alpha_modulus_residual,\
r_coefficient_re,r_coefficient_im,l_coefficient_re,l_coefficient_im";

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Numeric(#[from] Error),
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn sweep_csv(res: &SweepResult) -> String {
    let mut s = String::with_capacity(64 * (res.rows.len() + 1));
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in &res.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            num(r.m_omega),
            num(r.q_r),
            r.channel,
            num(r.negativity),
            r.n_max_used,
            num(r.tail_bound),
            r.converged
        );
    }
    s
}

pub fn write_csv<W: Write>(res: &SweepResult, mut w: W) -> io::Result<()> {
    w.write_all(sweep_csv(res).as_bytes())
}

pub fn emit_csv(res: &SweepResult, path: &Path) -> Result<(), OutputError> {
    fs::write(path, sweep_csv(res)).map_err(|source| OutputError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn bogo_csv(geom: &CollapseGeometry, grid: &[(f64, f64)]) -> Result<String, Error> {
    let mut s = String::new();
    s.push_str(BOGO_HEADER);
    s.push('\n');
    for &(omega, capital_omega) in grid {
        let d = diagnostic_row(omega, capital_omega, geom)?;
        let fields = [
            d.omega,
            d.capital_omega,
            d.abs_alpha,
            d.arg_alpha,
            d.arg_gamma,
            d.beta_residual,
            d.gamma_residual,
            d.delta_residual,
            d.modulus_residual,
            d.r_coefficient.re,
            d.r_coefficient.im,
            d.l_coefficient.re,
            d.l_coefficient.im,
        ];
        let line: Vec<String> = fields.iter().map(|v| num(*v)).collect();
        s.push_str(&line.join(","));
        s.push('\n');
    }
    Ok(s)
}

pub fn write_bogo_diagnostics<W: Write>(
    geom: &CollapseGeometry,
    grid: &[(f64, f64)],
    mut w: W,
) -> Result<(), OutputError> {
    let text = bogo_csv(geom, grid)?;
    w.write_all(text.as_bytes()).map_err(|source| OutputError::Io {
        path: PathBuf::from("<writer>"),
        source,
    })
}

/// Identity residuals of the Bogoliubov coefficients over `(ω, Ω)` pairs.
///
/// `r_coefficient` / `l_coefficient` are the bracketed combinations, not
/// their conjugates.
pub fn emit_bogo_diagnostics(
    geom: &CollapseGeometry,
    grid: &[(f64, f64)],
    path: &Path,
) -> Result<(), OutputError> {
    let text = bogo_csv(geom, grid)?;
    fs::write(path, text).map_err(|source| OutputError::Io {
        path: path.to_path_buf(),
        source,
    })
}
