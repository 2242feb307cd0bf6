//! Experiment configuration files.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;

use darwin_core::analysis::{EnvSpec, InputStateSpec, TraceOrder, DEFAULT_DELTA};
use darwin_core::attractor::Parity;
use darwin_core::channels::ChannelSpec;
use darwin_core::digraph::{Edge, InteractionDigraph};
use darwin_core::qstate::RegisterLayout;
use darwin_core::C64;
use serde::{de::IgnoredAny, Deserialize, Deserializer, Serialize};

use crate::CliError;

pub const DEFAULT_MAX_QUBITS: usize = 14;
pub const MAX_QUBITS_ENV: &str = "DARWIN_MAX_QUBITS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Zurek,
    RandomUnitaryIterate,
    RandomUnitaryAsymptotic,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Zurek => "zurek",
            Model::RandomUnitaryIterate => "random_unitary_iterate",
            Model::RandomUnitaryAsymptotic => "random_unitary_asymptotic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    Koenig,
    CompleteEnv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitDigraph {
    /// `[control, target]` qubit pairs.
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probabilities: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DigraphConfig {
    Preset(Preset),
    Explicit(ExplicitDigraph),
}

/// A real number or a `[re, im]` pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Real(f64),
    Complex(C64),
}

impl Amplitude {
    pub fn value(self) -> C64 {
        match self {
            Amplitude::Real(x) => C64::new(x, 0.0),
            Amplitude::Complex(z) => z,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputConfig {
    pub s_amplitudes: Vec<Amplitude>,
    pub e_spec: EnvSpec,
}

/// Present in a file only to be rejected: the channels are deterministic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reserved;

impl<'de> Deserialize<'de> for Reserved {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        IgnoredAny::deserialize(d).map(|_| Reserved)
    }
}

fn default_phi() -> f64 {
    FRAC_PI_2
}

fn default_delta() -> f64 {
    DEFAULT_DELTA
}

fn is_default_order(t: &TraceOrder) -> bool {
    *t == TraceOrder::RightToLeft
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: Model,
    pub k: usize,
    pub n: usize,
    #[serde(default = "default_phi")]
    pub phi: f64,
    /// Step count; iterate model only.
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digraph: Option<DigraphConfig>,
    pub input: InputConfig,
    #[serde(default, skip_serializing_if = "is_default_order")]
    pub trace_order: TraceOrder,
    /// Asymptotic model only; defaults to even.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default, skip_serializing)]
    pub seed: Option<Reserved>,
}

/// A configuration checked against the model and the qubit cap.
#[derive(Clone, Debug)]
pub struct Validated {
    pub config: ExperimentConfig,
    pub input: InputStateSpec,
    pub layout: RegisterLayout,
    pub channel: Option<ChannelSpec>,
    pub parity: Option<Parity>,
}

fn invalid(field: &str, reason: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("invalid `{field}`: {reason}"))
}

impl ExperimentConfig {
    /// Parses TOML, or JSON when the file name ends in `.json`.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        if path.extension().is_some_and(|x| x == "json") {
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
        } else {
            Self::from_toml(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn validate(&self, max_qubits: usize) -> Result<Validated, CliError> {
        if self.seed.is_some() {
            return Err(invalid("seed", "the channels are deterministic; remove the key"));
        }
        if !(0.0..=PI).contains(&self.phi) {
            return Err(invalid("phi", format!("{} is outside [0, pi]", self.phi)));
        }
        if !(self.delta > 0.0 && self.delta < 0.5) {
            return Err(invalid("delta", format!("{} is outside (0, 0.5)", self.delta)));
        }
        let layout = RegisterLayout::with_cap(self.k, self.n, max_qubits)?;
        let amps = self.input.s_amplitudes.iter().map(|a| a.value()).collect();
        let input = InputStateSpec::new(self.k, self.n, amps, self.input.e_spec.clone())?;
        self.trace_order.validate(self.n)?;

        let (channel, parity) = match self.model {
            Model::Zurek => {
                if self.steps.is_some() {
                    return Err(invalid("N", "the zurek model has no step count"));
                }
                if self.digraph.is_some() {
                    return Err(invalid("digraph", "the zurek model uses the fixed CNOT assignment"));
                }
                if self.parity.is_some() {
                    return Err(invalid("parity", "only the asymptotic model takes a parity"));
                }
                (None, None)
            }
            Model::RandomUnitaryIterate => {
                let Some(steps) = self.steps else {
                    return Err(invalid("N", "the iterate model needs a step count"));
                };
                if self.parity.is_some() {
                    return Err(invalid("parity", "the iterate model takes its parity from N"));
                }
                (Some(ChannelSpec::new(self.build_digraph(layout)?, self.phi, steps)?), Some(Parity::of(steps)))
            }
            Model::RandomUnitaryAsymptotic => {
                if self.steps.is_some() {
                    return Err(invalid("N", "the asymptotic model has no step count; set parity instead"));
                }
                let parity = self.parity.unwrap_or(Parity::Even);
                (Some(ChannelSpec::new(self.build_digraph(layout)?, self.phi, 0)?), Some(parity))
            }
        };
        Ok(Validated { config: self.clone(), input, layout, channel, parity })
    }

    fn build_digraph(&self, layout: RegisterLayout) -> Result<InteractionDigraph, CliError> {
        Ok(match self.digraph.as_ref().unwrap_or(&DigraphConfig::Preset(Preset::Koenig)) {
            DigraphConfig::Preset(Preset::Koenig) => InteractionDigraph::koenig(layout)?,
            DigraphConfig::Preset(Preset::CompleteEnv) => InteractionDigraph::complete_env(layout)?,
            DigraphConfig::Explicit(g) => {
                let edges = g.edges.iter().map(|&[c, t]| Edge::new(c, t)).collect();
                InteractionDigraph::new(layout, edges, g.probabilities.clone())?
            }
        })
    }
}

/// Flag, then environment variable, then [`DEFAULT_MAX_QUBITS`].
pub fn resolve_cap(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(MAX_QUBITS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| invalid(MAX_QUBITS_ENV, format!("`{v}` is not a qubit count"))),
        Err(_) => Ok(DEFAULT_MAX_QUBITS),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"
model = "random_unitary_asymptotic"
k = 1
n = 3
digraph = "koenig"

[input]
s_amplitudes = [0.6, [0.0, 0.8]]
e_spec = { kind = "registry", y = 0 }
"#;

    #[test]
    fn defaults() {
        let c = ExperimentConfig::from_toml(BASIC).unwrap();
        assert_eq!(c.phi, FRAC_PI_2);
        assert_eq!(c.delta, DEFAULT_DELTA);
        assert_eq!(c.trace_order, TraceOrder::RightToLeft);
        let v = c.validate(14).unwrap();
        assert_eq!(v.parity, Some(Parity::Even));
        assert_eq!(v.input.s_amplitudes[1], C64::new(0.0, 0.8));
    }

    #[test]
    fn json_round_trip() {
        let c = ExperimentConfig::from_toml(BASIC).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: ExperimentConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn explicit_digraph() {
        let text = BASIC.replace(
            "digraph = \"koenig\"",
            "digraph = { edges = [[0, 1], [0, 2], [0, 3], [1, 2]], probabilities = [0.25, 0.25, 0.25, 0.25] }",
        );
        let c = ExperimentConfig::from_toml(&text).unwrap();
        let v = c.validate(14).unwrap();
        assert_eq!(v.channel.unwrap().digraph.edges().len(), 4);
    }

    #[test]
    fn rejections() {
        let bad = [
            BASIC.replace("n = 3", "n = 3\nphi = 4.0"),
            BASIC.replace("n = 3", "n = 3\nN = 10"),
            BASIC.replace("n = 3", "n = 3\nseed = 7"),
            BASIC.replace("n = 3", "n = 3\ndelta = 0.7"),
            BASIC.replace("0.6, [0.0, 0.8]", "0.6, 0.6"),
            BASIC.replace("n = 3", "n = 20"),
        ];
        for text in &bad {
            let c = ExperimentConfig::from_toml(text).unwrap();
            assert!(c.validate(14).is_err(), "{text}");
        }
        assert!(ExperimentConfig::from_toml(&BASIC.replace("n = 3", "n = 3\ncolor = 1")).is_err());
    }
}
