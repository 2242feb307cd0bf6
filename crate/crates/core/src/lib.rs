//! Dense density-matrix simulation of quantum Darwinism.
//!
//! A system register S of `k` qubits decoheres through controlled-U gates
//! into an environment of `n` qubits. Two dynamics are provided: the one-pass
//! CNOT model ([`channels::zurek_evolve`]) and the iterated random-unitary
//! channel ([`channels::iterate_channel`]), whose `N -> infinity` limit is
//! computed exactly by projecting onto the attractor space
//! ([`attractor::asymptotic_project`]). [`analysis::pip`] turns an output
//! state into a partial information plot.
//!
//! Qubit 0 is the most significant bit of a basis index. System qubits come
//! first, so basis index `y` of an environment register reads as the bit
//! string of `E_1 ... E_n`.

pub mod analysis;
pub mod attractor;
pub mod channels;
pub mod digraph;
mod error;
pub mod qstate;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
