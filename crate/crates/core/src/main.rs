use std::io;
use std::process::ExitCode;

use vaidya_negativity::bogoliubov::default_diagnostic_grid;
use vaidya_negativity::sweep::{
    emit_bogo_diagnostics, emit_csv, parse_config, run_sweep, write_csv, ConfigError,
};

fn main() -> ExitCode {
    let cfg = match parse_config(std::env::args_os()) {
        Ok(cfg) => cfg,
        Err(ConfigError::Cli(e)) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };

    if let Some(path) = &cfg.bogo_diagnostics {
        let grid = default_diagnostic_grid(&cfg.bogo_geometry);
        if let Err(e) = emit_bogo_diagnostics(&cfg.bogo_geometry, &grid, path) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
        eprintln!("wrote Bogoliubov diagnostics to {}", path.display());
        if cfg.output_path.is_none() {
            return ExitCode::SUCCESS;
        }
    }

    let result = match run_sweep(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };

    let written = match &cfg.output_path {
        Some(path) => emit_csv(&result, path).map_err(|e| e.to_string()),
        None => write_csv(&result, io::stdout().lock()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }

    let failed: Vec<_> = result.non_converged().collect();
    if failed.is_empty() {
        return ExitCode::SUCCESS;
    }
    for r in &failed {
        eprintln!(
            "not converged: {} q_R={} m*Omega={} at n_max cap {} (tail bound {:e})",
            r.channel, r.q_r, r.m_omega, r.n_max_used, r.tail_bound
        );
    }
    ExitCode::from(2)
}
