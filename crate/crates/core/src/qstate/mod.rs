//! Dense linear algebra on labeled qubit registers.

mod density;
mod layout;
mod matrix;
mod spectrum;

pub use density::{
    hs_inner_product, partial_trace, partial_trace_sequential, tensor_product, trace_distance,
    DensityMatrix, StateVector, HERMITIAN_TOL, NORM_TOL, PSD_TOL, TRACE_TOL,
};
pub use layout::{RegisterLayout, DEFAULT_MAX_QUBITS};
pub use matrix::Matrix;
pub use spectrum::{
    operator_spectrum, pointer_shannon_entropy, shannon_entropy, spectrum, von_neumann_entropy,
    Spectrum, CLAMP_TOL,
};
