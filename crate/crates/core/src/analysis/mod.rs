//! Input states, mutual information, partial information plots and the
//! checks built on them.

mod catalogue;
mod input;
mod limits;
mod pip;
mod probe;
mod symmetry;

pub use catalogue::{catalogue_zurek, CatalogueEntry, ExpectedEntropies};
pub use input::{all_ones, leading_one, AmplitudeRegistry, EnvSpec, InputStateSpec, WeightedRegistry};
pub use limits::{asymptotic_ratio, limit_form, limit_form_check, LimitCase, LimitReport};
pub use pip::{
    mutual_information, pip, plateau_condition, redundancy, MutualInformation, PipRow, PipTable, PlateauMargin,
    PlateauReport, RedundancyReport, TraceOrder, DEFAULT_DELTA, DEFAULT_PLATEAU_SLACK, H_CLASS_FLOOR,
};
pub use probe::{ideal_correlation_probe, probe_state, ProbeReport};
pub use symmetry::{
    phi_grid, symmetry_sweep, symmetry_sweep_literal, two_record_check, two_record_state, BranchReport, SymmetryGap,
};
