//! Pinned datasets for the published figures.

use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use darwin_core::analysis::{
    all_ones, leading_one, mutual_information, AmplitudeRegistry, EnvSpec, MutualInformation, WeightedRegistry,
    H_CLASS_FLOOR,
};
use darwin_core::qstate::{partial_trace, pointer_shannon_entropy};
use darwin_core::C64;
use serde::Deserialize;

use crate::config::{ExperimentConfig, Validated};
use crate::output::{pip_csv, write_atomic};
use crate::run::{evolve, execute};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig1,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

impl Figure {
    pub fn source(self) -> &'static str {
        match self {
            Figure::Fig1 => include_str!("../figures/fig1.toml"),
            Figure::Fig4 => include_str!("../figures/fig4.toml"),
            Figure::Fig5 => include_str!("../figures/fig5.toml"),
            Figure::Fig6 => include_str!("../figures/fig6.toml"),
            Figure::Fig7 => include_str!("../figures/fig7.toml"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// One PIP table per curve.
    Pip,
    /// `I(S : E_n) / H(S_class)` against `n`.
    FinalRatio,
}

/// Environment states whose registry indices depend on `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvPreset {
    /// `|0_n>`.
    Zero,
    /// `|1_n>`.
    Ones,
    /// `(|0_n><0_n| + |1_n><1_n|) / 2`.
    Pair,
    /// `(|0_n><0_n| + |1 0_{n-1}><1 0_{n-1}|) / 2`.
    LeadingPair,
    /// `2^-n I`.
    Mixed,
    /// `(|0_n> + |1_n>) / sqrt 2`.
    Ghz,
}

impl EnvPreset {
    pub fn spec(self, n: usize) -> EnvSpec {
        let mix = |y| EnvSpec::MixtureOfRegistries {
            terms: vec![WeightedRegistry { weight: 0.5, y: 0 }, WeightedRegistry { weight: 0.5, y }],
        };
        match self {
            EnvPreset::Zero => EnvSpec::Registry { y: 0 },
            EnvPreset::Ones => EnvSpec::Registry { y: all_ones(n) },
            EnvPreset::Pair => mix(all_ones(n)),
            EnvPreset::LeadingPair => mix(leading_one(n)),
            EnvPreset::Mixed => EnvSpec::MaximallyMixed,
            EnvPreset::Ghz => {
                let amp = C64::new(0.5f64.sqrt(), 0.0);
                EnvSpec::SuperpositionOfRegistries {
                    terms: vec![AmplitudeRegistry { amp, y: 0 }, AmplitudeRegistry { amp, y: all_ones(n) }],
                }
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FigureFile {
    pub kind: Kind,
    pub description: String,
    pub run: Vec<FigureRun>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FigureRun {
    pub curve: String,
    /// Environment sizes swept by a `final_ratio` curve.
    #[serde(default)]
    pub n_values: Vec<usize>,
    /// Fills `input.e_spec` for every `n`.
    #[serde(default)]
    pub env: Option<EnvPreset>,
    /// An experiment configuration; `n` and `input.e_spec` may be left to the sweep and preset.
    pub config: toml::Table,
}

impl FigureRun {
    pub fn config_for(&self, n: Option<usize>) -> Result<ExperimentConfig, CliError> {
        let mut t = self.config.clone();
        if let Some(n) = n {
            t.insert("n".into(), toml::Value::Integer(n as i64));
        }
        if let Some(env) = self.env {
            let n = t.get("n").and_then(|v| v.as_integer()).ok_or_else(|| self.err("no `n` for the preset"))? as usize;
            let spec = toml::Value::try_from(env.spec(n)).map_err(|e| self.err(e))?;
            let input = t.entry("input").or_insert_with(|| toml::Value::Table(toml::Table::new()));
            input.as_table_mut().ok_or_else(|| self.err("`input` is not a table"))?.insert("e_spec".into(), spec);
        }
        toml::Value::Table(t).try_into().map_err(|e| self.err(e))
    }

    fn err(&self, e: impl std::fmt::Display) -> CliError {
        CliError::Config(format!("curve `{}`: {e}", self.curve))
    }
}

pub fn load(fig: Figure) -> Result<FigureFile, CliError> {
    toml::from_str(fig.source()).map_err(|e| CliError::Config(format!("{fig:?}: {e}")))
}

pub const FINAL_RATIO_HEADER: &str = "n,H_S,H_E,H_SE,I,ratio";

fn final_ratio_row(c: &ExperimentConfig, max_qubits: usize) -> Result<String, CliError> {
    let v = c.validate(max_qubits)?;
    let out = execute_final(&v, max_qubits)?;
    let f = |x: f64| format!("{x:.16e}");
    let ratio = out.1.map(f).unwrap_or_default();
    let mi = out.0;
    Ok(format!("{},{},{},{},{},{ratio}", c.n, f(mi.h_s), f(mi.h_e), f(mi.h_se), f(mi.i)))
}

fn execute_final(v: &Validated, max_qubits: usize) -> Result<(MutualInformation, Option<f64>), CliError> {
    let state = evolve(v, max_qubits)?.0;
    let s: Vec<usize> = (0..v.layout.k()).collect();
    let h_class = pointer_shannon_entropy(&partial_trace(&state, &s)?);
    let mi = mutual_information(&state, v.layout.n(), &v.config.trace_order)?;
    let ratio = (h_class > H_CLASS_FLOOR).then(|| mi.i / h_class);
    Ok((mi, ratio))
}

/// Writes `<curve>.csv` for every curve of the figure; returns the file names.
pub fn reproduce(fig: Figure, out: &Path, max_qubits: usize) -> Result<Vec<String>, CliError> {
    let file = load(fig)?;
    std::fs::create_dir_all(out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    eprintln!("{fig:?}: {}", file.description);
    let mut names = Vec::new();
    for run in &file.run {
        let body = match file.kind {
            Kind::Pip => {
                let c = run.config_for(None)?;
                let v = c.validate(max_qubits)?;
                pip_csv(&execute(&v, max_qubits)?.table)
            }
            Kind::FinalRatio => {
                if run.n_values.is_empty() {
                    return Err(run.err("`n_values` is empty"));
                }
                let mut s = String::from(FINAL_RATIO_HEADER);
                s.push('\n');
                for &n in &run.n_values {
                    let _ = writeln!(s, "{}", final_ratio_row(&run.config_for(Some(n))?, max_qubits)?);
                }
                s
            }
        };
        let name = format!("{}.csv", run.curve);
        write_atomic(&out.join(&name), &body)?;
        eprintln!("{fig:?}: wrote {name}");
        names.push(name);
    }
    Ok(names)
}
