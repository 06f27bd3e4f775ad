//! Command-line and config-file parsing for sweeps.
//!
//! The config file is flat `key = value` text; keys are the long flag names
//! without the leading dashes, `#` starts a comment. Flags given on the
//! command line override the file.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fs;
use std::path::PathBuf;

use clap::Parser;
use thiserror::Error;

use crate::bogoliubov::CollapseGeometry;
use crate::collapse_state::{Channel, ModeSplit};
use crate::entanglement::ConvergencePolicy;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error(transparent)]
    Cli(#[from] clap::Error),

    #[error("{origin}: cannot parse {what} {text:?}: {reason}")]
    Parse {
        /// Flag name or `path:line`.
        origin: String,
        /// Which part of the value failed, e.g. "element 2".
        what: String,
        text: String,
        reason: String,
    },

    #[error("{0}")]
    Invalid(String),

    #[error("cannot read config file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Parser, Default)]
#[command(
    name = "vaidya-sweep",
    about = "Negativity sweeps over m*Omega and q_R for a Vaidya collapse"
)]
struct Cli {
    /// Single value, comma list, or `min:max:count[:log|:lin]`.
    #[arg(long = "m-omega", allow_hyphen_values = true)]
    m_omega: Option<String>,
    /// Comma-separated q_R values in [2^-1/2, 1].
    #[arg(long = "q-r", allow_hyphen_values = true)]
    q_r: Option<String>,
    /// A-out, A-hor or both.
    #[arg(long)]
    channel: Option<String>,
    /// Relative agreement between successive truncations (default 1e-8)
    #[arg(long = "rel-tol", allow_hyphen_values = true)]
    rel_tol: Option<String>,
    /// Absolute agreement between successive truncations (default 1e-10)
    #[arg(long = "abs-tol", allow_hyphen_values = true)]
    abs_tol: Option<String>,
    /// Largest accepted discarded weight of the state (default 1e-10)
    #[arg(long = "tail-tol", allow_hyphen_values = true)]
    tail_tol: Option<String>,
    /// Largest occupation cutoff tried before giving up (default 512)
    #[arg(long = "n-max-cap", allow_hyphen_values = true)]
    n_max_cap: Option<String>,
    /// Sweep CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<String>,
    /// Write the Bogoliubov identity diagnostics CSV here.
    #[arg(long = "bogo-diagnostics")]
    bogo_diagnostics: Option<String>,
    /// Black-hole mass for the diagnostics grid (default 1).
    #[arg(long = "bogo-mass", allow_hyphen_values = true)]
    bogo_mass: Option<String>,
    /// Horizon null coordinate v_H for the diagnostics (default 0).
    #[arg(long = "bogo-v-h", allow_hyphen_values = true)]
    bogo_v_h: Option<String>,
    /// Flat key = value file with the same keys as the flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

const KEYS: [&str; 11] = [
    "m-omega",
    "q-r",
    "channel",
    "rel-tol",
    "abs-tol",
    "tail-tol",
    "n-max-cap",
    "out",
    "bogo-diagnostics",
    "bogo-mass",
    "bogo-v-h",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub m_omega_grid: Vec<f64>,
    pub q_r_values: Vec<f64>,
    pub channels: Vec<Channel>,
    pub policy: ConvergencePolicy,
    pub output_path: Option<PathBuf>,
    pub bogo_diagnostics: Option<PathBuf>,
    pub bogo_geometry: CollapseGeometry,
}

pub const DEFAULT_M_OMEGA: &str = "0.005:2:60:log";
pub const DEFAULT_Q_R: [f64; 4] = [1.0, 0.9, 0.8, FRAC_1_SQRT_2];

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            m_omega_grid: parse_grid(DEFAULT_M_OMEGA, "default").expect("default grid"),
            q_r_values: DEFAULT_Q_R.to_vec(),
            channels: vec![Channel::AOut, Channel::AHor],
            policy: ConvergencePolicy::default(),
            output_path: None,
            bogo_diagnostics: None,
            bogo_geometry: CollapseGeometry::new(1.0, 0.0).expect("unit mass"),
        }
    }
}

/// A value plus where it came from, for error messages.
struct Sourced {
    text: String,
    origin: String,
}

fn parse_f64(text: &str, origin: &str, what: &str) -> Result<f64, ConfigError> {
    text.trim().parse::<f64>().map_err(|e| ConfigError::Parse {
        origin: origin.to_string(),
        what: what.to_string(),
        text: text.to_string(),
        reason: e.to_string(),
    })
}

fn parse_list(text: &str, origin: &str) -> Result<Vec<f64>, ConfigError> {
    text.split(',')
        .enumerate()
        .map(|(i, item)| parse_f64(item, origin, &format!("element {}", i + 1)))
        .collect()
}

/// `v`, `v1,v2,...`, or `min:max:count[:log|:lin]`.
pub fn parse_grid(text: &str, origin: &str) -> Result<Vec<f64>, ConfigError> {
    if !text.contains(':') {
        return parse_list(text, origin);
    }
    let parts: Vec<&str> = text.split(':').collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(ConfigError::Parse {
            origin: origin.to_string(),
            what: "range".into(),
            text: text.to_string(),
            reason: "expected min:max:count[:log]".into(),
        });
    }
    let min = parse_f64(parts[0], origin, "range field 1 (min)")?;
    let max = parse_f64(parts[1], origin, "range field 2 (max)")?;
    let count: usize = parts[2].trim().parse().map_err(|e: std::num::ParseIntError| {
        ConfigError::Parse {
            origin: origin.to_string(),
            what: "range field 3 (count)".into(),
            text: parts[2].to_string(),
            reason: e.to_string(),
        }
    })?;
    let log = match parts.get(3).map(|s| s.trim()) {
        None | Some("lin") => false,
        Some("log") => true,
        Some(other) => {
            return Err(ConfigError::Parse {
                origin: origin.to_string(),
                what: "range field 4 (spacing)".into(),
                text: other.to_string(),
                reason: "expected `log` or `lin`".into(),
            })
        }
    };
    if count == 0 {
        return Err(ConfigError::Invalid(format!("{origin}: range count must be positive")));
    }
    if max < min {
        return Err(ConfigError::Invalid(format!("{origin}: range max {max} below min {min}")));
    }
    if log && min <= 0.0 {
        return Err(ConfigError::Invalid(format!(
            "{origin}: log spacing needs min > 0, got {min}"
        )));
    }
    if count == 1 {
        return Ok(vec![min]);
    }
    let last = (count - 1) as f64;
    let mut grid: Vec<f64> = (0..count)
        .map(|i| {
            let f = i as f64 / last;
            if log {
                (min.ln() + f * (max.ln() - min.ln())).exp()
            } else {
                min + f * (max - min)
            }
        })
        .collect();
    grid[0] = min;
    grid[count - 1] = max;
    Ok(grid)
}

fn parse_channels(text: &str, origin: &str) -> Result<Vec<Channel>, ConfigError> {
    match text.trim() {
        "A-out" => Ok(vec![Channel::AOut]),
        "A-hor" => Ok(vec![Channel::AHor]),
        "both" => Ok(vec![Channel::AOut, Channel::AHor]),
        other => Err(ConfigError::Parse {
            origin: origin.to_string(),
            what: "channel".into(),
            text: other.to_string(),
            reason: "expected A-out, A-hor or both".into(),
        }),
    }
}

fn read_config_file(path: &PathBuf) -> Result<BTreeMap<String, Sourced>, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.clone(),
        source,
    })?;
    parse_config_text(&text, &path.display().to_string())
}

/// Parse flat `key = value` text; `name` labels error positions.
fn parse_config_text(text: &str, name: &str) -> Result<BTreeMap<String, Sourced>, ConfigError> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let origin = format!("{name}:{}", lineno + 1);
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::Parse {
                origin,
                what: "line".into(),
                text: raw.to_string(),
                reason: "expected `key = value`".into(),
            });
        };
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(ConfigError::Invalid(format!("{origin}: unknown key {key:?}")));
        }
        out.insert(
            key.to_string(),
            Sourced {
                text: value.trim().to_string(),
                origin,
            },
        );
    }
    Ok(out)
}

/// Build a sweep configuration from `argv` (including the program name).
pub fn parse_config<I, T>(args: I) -> Result<SweepConfig, ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;

    let mut values = match &cli.config {
        Some(path) => read_config_file(path)?,
        None => BTreeMap::new(),
    };
    let flags = [
        ("m-omega", &cli.m_omega),
        ("q-r", &cli.q_r),
        ("channel", &cli.channel),
        ("rel-tol", &cli.rel_tol),
        ("abs-tol", &cli.abs_tol),
        ("tail-tol", &cli.tail_tol),
        ("n-max-cap", &cli.n_max_cap),
        ("out", &cli.out),
        ("bogo-diagnostics", &cli.bogo_diagnostics),
        ("bogo-mass", &cli.bogo_mass),
        ("bogo-v-h", &cli.bogo_v_h),
    ];
    for (key, value) in flags {
        if let Some(text) = value {
            values.insert(
                key.to_string(),
                Sourced {
                    text: text.clone(),
                    origin: format!("--{key}"),
                },
            );
        }
    }
    build(&values)
}

fn build(values: &BTreeMap<String, Sourced>) -> Result<SweepConfig, ConfigError> {
    let mut cfg = SweepConfig::default();
    let get = |k: &str| values.get(k);

    if let Some(v) = get("m-omega") {
        cfg.m_omega_grid = parse_grid(&v.text, &v.origin)?;
    }
    if let Some(v) = get("q-r") {
        cfg.q_r_values = parse_list(&v.text, &v.origin)?;
    }
    if let Some(v) = get("channel") {
        cfg.channels = parse_channels(&v.text, &v.origin)?;
    }
    for (key, slot) in [
        ("rel-tol", &mut cfg.policy.rel_tol),
        ("abs-tol", &mut cfg.policy.abs_tol),
        ("tail-tol", &mut cfg.policy.tail_tol),
    ] {
        if let Some(v) = get(key) {
            *slot = parse_f64(&v.text, &v.origin, key)?;
        }
    }
    if let Some(v) = get("n-max-cap") {
        cfg.policy.n_max_cap = v.text.trim().parse().map_err(|e: std::num::ParseIntError| {
            ConfigError::Parse {
                origin: v.origin.clone(),
                what: "n-max-cap".into(),
                text: v.text.clone(),
                reason: e.to_string(),
            }
        })?;
    }
    cfg.output_path = get("out").map(|v| PathBuf::from(&v.text));
    cfg.bogo_diagnostics = get("bogo-diagnostics").map(|v| PathBuf::from(&v.text));

    let mut mass = cfg.bogo_geometry.mass();
    let mut v_h = cfg.bogo_geometry.v_h();
    if let Some(v) = get("bogo-mass") {
        mass = parse_f64(&v.text, &v.origin, "bogo-mass")?;
    }
    if let Some(v) = get("bogo-v-h") {
        v_h = parse_f64(&v.text, &v.origin, "bogo-v-h")?;
    }
    cfg.bogo_geometry =
        CollapseGeometry::new(mass, v_h).map_err(|e| ConfigError::Invalid(e.to_string()))?;

    validate(&cfg)?;
    Ok(cfg)
}

pub fn validate(cfg: &SweepConfig) -> Result<(), ConfigError> {
    if cfg.m_omega_grid.is_empty() || cfg.q_r_values.is_empty() || cfg.channels.is_empty() {
        return Err(ConfigError::Invalid("sweep grids must be non-empty".into()));
    }
    if let Some(bad) = cfg.m_omega_grid.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(ConfigError::Invalid(format!(
            "m*Omega values must be finite and >= 0, got {bad}"
        )));
    }
    for &q in &cfg.q_r_values {
        ModeSplit::new(q).map_err(|_| {
            ConfigError::Invalid(format!(
                "q_R = {q} is outside the mode-superposition range 2^(-1/2) <= q_R <= 1"
            ))
        })?;
    }
    let p = &cfg.policy;
    for (name, v) in [("rel-tol", p.rel_tol), ("abs-tol", p.abs_tol), ("tail-tol", p.tail_tol)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(ConfigError::Invalid(format!("{name} must be positive, got {v}")));
        }
    }
    if p.n_max_cap == 0 {
        return Err(ConfigError::Invalid("n-max-cap must be at least 1".into()));
    }
    Ok(())
}
