use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use darwin_core::analysis::PipTable;
use darwin_core::attractor::Parity;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::run::{Diagnostics, Outcome};
use crate::CliError;

pub const PIP_HEADER: &str = "L,f,H_S,H_E,H_SE,I,ratio";

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row per fragment size; `ratio` is empty when the system has no classical entropy.
pub fn pip_csv(t: &PipTable) -> String {
    let mut s = String::from(PIP_HEADER);
    s.push('\n');
    for r in &t.rows {
        let ratio = r.ratio.map(float).unwrap_or_default();
        let _ = writeln!(s, "{},{},{},{},{},{},{ratio}", r.l, float(r.f), float(r.h_s), float(r.h_e), float(r.h_se), float(r.i));
    }
    s
}

/// SHA-256 of the compact JSON form of the configuration.
pub fn config_hash(c: &ExperimentConfig) -> String {
    let json = serde_json::to_string(c).expect("configuration serializes");
    Sha256::digest(json.as_bytes()).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Serialize)]
pub struct Summary<'a> {
    pub version: &'static str,
    pub config_hash: String,
    pub config: &'a ExperimentConfig,
    pub model: &'static str,
    pub parity: Option<Parity>,
    pub regime: Option<&'static str>,
    /// `[d+, d-]`.
    pub attractor_dims: Option<(usize, usize)>,
    pub h_s_class: f64,
    pub delta: f64,
    pub f_star: Option<f64>,
    #[serde(rename = "R")]
    pub r: Option<f64>,
    pub plateau_found: bool,
    pub diagnostics: Diagnostics,
}

impl<'a> Summary<'a> {
    pub fn new(config: &'a ExperimentConfig, o: &Outcome) -> Self {
        Summary {
            version: env!("CARGO_PKG_VERSION"),
            config_hash: config_hash(config),
            config,
            model: config.model.name(),
            parity: o.table.parity,
            regime: o.regime,
            attractor_dims: o.attractor_dims,
            h_s_class: o.table.h_s_class,
            delta: o.redundancy.delta,
            f_star: o.redundancy.f_star,
            r: o.redundancy.r,
            plateau_found: o.redundancy.plateau_found,
            diagnostics: o.diagnostics,
        }
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn write_run(out: &Path, config: &ExperimentConfig, o: &Outcome) -> Result<(), CliError> {
    std::fs::create_dir_all(out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    write_atomic(&out.join("pip.csv"), &pip_csv(&o.table))?;
    let mut json = serde_json::to_string_pretty(&Summary::new(config, o)).expect("summary serializes");
    json.push('\n');
    write_atomic(&out.join("summary.json"), &json)
}

#[cfg(test)]
mod tests {
    use super::*;
    use darwin_core::analysis::{PipRow, TraceOrder};

    #[test]
    fn csv_layout() {
        let t = PipTable {
            h_s_class: 0.0,
            trace_order: TraceOrder::RightToLeft,
            parity: None,
            model: String::new(),
            rows: vec![PipRow { l: 1, f: 0.5, h_s: 0.0, h_e: 0.0, h_se: 0.0, i: 0.0, ratio: None }],
        };
        let s = pip_csv(&t);
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some(PIP_HEADER));
        assert_eq!(lines.next(), Some("1,5.0000000000000000e-1,0.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0,"));
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, std::f64::consts::PI, 1e-300] {
            assert_eq!(float(x).parse::<f64>().unwrap(), x);
        }
    }
}
