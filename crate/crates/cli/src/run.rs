use darwin_core::analysis::{pip, redundancy, PipTable, RedundancyReport};
use darwin_core::attractor::{asymptotic_project, attractor_space_for, Parity, NUMERIC_MAX_QUBITS};
use darwin_core::channels::{iterate_channel, zurek_evolve, IterateOptions, ZurekAssignment};
use darwin_core::qstate::DensityMatrix;
use serde::Serialize;

use crate::config::{Model, Validated};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    /// `|tr rho - 1|` of the output state.
    pub trace_error: f64,
    /// `max |rho - rho^dagger|` of the output state.
    pub hermiticity_error: f64,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub table: PipTable,
    pub redundancy: RedundancyReport,
    /// How the attractor space was obtained; asymptotic model only.
    pub regime: Option<&'static str>,
    pub attractor_dims: Option<(usize, usize)>,
    pub diagnostics: Diagnostics,
}

/// The output state, with the attractor label and dimensions when a projection was used.
pub fn evolve(
    v: &Validated,
    max_qubits: usize,
) -> Result<(DensityMatrix, Option<&'static str>, Option<(usize, usize)>), CliError> {
    let rho = v.input.density(max_qubits)?;
    Ok(match (v.config.model, &v.channel) {
        (Model::Zurek, _) => (zurek_evolve(&rho, &ZurekAssignment::contiguous(v.layout)?)?, None, None),
        (Model::RandomUnitaryIterate, Some(spec)) => {
            (iterate_channel(&rho, spec, IterateOptions::default())?.state, None, None)
        }
        (Model::RandomUnitaryAsymptotic, Some(spec)) => {
            let space = attractor_space_for(&spec.digraph, spec.phi, max_qubits.min(NUMERIC_MAX_QUBITS))?;
            let out = asymptotic_project(&rho, space.as_ref(), v.parity.unwrap_or(Parity::Even))?;
            (out, Some(space.label()), Some(space.dims()))
        }
        _ => unreachable!("validation attaches a channel to every random-unitary model"),
    })
}

/// Evolves the configured input and tabulates the partial information plot.
pub fn execute(v: &Validated, max_qubits: usize) -> Result<Outcome, CliError> {
    let (state, regime, attractor_dims) = evolve(v, max_qubits)?;
    let mut table = pip(&state, &v.config.trace_order)?;
    table.parity = v.parity;
    table.model = v.config.model.name().to_string();
    let redundancy = redundancy(&table, v.config.delta)?;
    let diagnostics = Diagnostics {
        trace_error: (state.trace().re - 1.0).abs(),
        hermiticity_error: state.hermiticity_error(),
    };
    Ok(Outcome { table, redundancy, regime, attractor_dims, diagnostics })
}
