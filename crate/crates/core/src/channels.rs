//! Controlled-U gates, the one-pass CNOT model and the random-unitary channel.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64 as C64;

use crate::digraph::InteractionDigraph;
use crate::qstate::{trace_distance, DensityMatrix, Matrix, RegisterLayout};
use crate::{Error, Result};

pub const DEFAULT_REHERMITIZE_EVERY: usize = 64;

/// `|0><0| (x) I + |1><1| (x) u`, with `u = sigma_z cos(phi) + sigma_x sin(phi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ControlledUGate {
    control: usize,
    target: usize,
    phi: f64,
    u: [[f64; 2]; 2],
}

pub fn check_phi(phi: f64) -> Result<()> {
    if (0.0..=PI).contains(&phi) {
        Ok(())
    } else {
        Err(Error::invalid("phi", format!("{phi} is outside [0, pi]")))
    }
}

impl ControlledUGate {
    pub fn new(control: usize, target: usize, phi: f64, layout: RegisterLayout) -> Result<Self> {
        layout.check_qubit(control)?;
        layout.check_qubit(target)?;
        if control == target {
            return Err(Error::invalid("target", "control and target coincide"));
        }
        check_phi(phi)?;
        let (s, c) = phi.sin_cos();
        // cos(pi/2) is not exactly zero in floating point.
        let c = if phi == FRAC_PI_2 { 0.0 } else { c };
        Ok(ControlledUGate { control, target, phi, u: [[c, s], [s, -c]] })
    }

    pub fn cnot(control: usize, target: usize, layout: RegisterLayout) -> Result<Self> {
        Self::new(control, target, FRAC_PI_2, layout)
    }

    pub fn control(&self) -> usize {
        self.control
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// The single-qubit block `u` acting on the target.
    pub fn u(&self) -> [[f64; 2]; 2] {
        self.u
    }

    /// Index pairs `(i, i | target bit)` with the control bit set.
    pub(crate) fn pairs(&self, nq: usize) -> impl Iterator<Item = (usize, usize)> {
        let cm = 1usize << (nq - 1 - self.control);
        let tm = 1usize << (nq - 1 - self.target);
        (0..1usize << nq).filter(move |i| i & cm != 0 && i & tm == 0).map(move |i| (i, i | tm))
    }

    /// `M -> U M U^dagger`, in place. `M` must act on `nq` qubits.
    pub fn conjugate(&self, m: &mut Matrix, nq: usize) {
        let d = m.rows();
        debug_assert_eq!(d, 1 << nq);
        let [[a, b], [c, e]] = self.u;
        let pairs: Vec<(usize, usize)> = self.pairs(nq).collect();
        let data = m.as_mut_slice();
        for &(r0, r1) in &pairs {
            for col in 0..d {
                let x0 = data[r0 * d + col];
                let x1 = data[r1 * d + col];
                data[r0 * d + col] = x0 * a + x1 * b;
                data[r1 * d + col] = x0 * c + x1 * e;
            }
        }
        for row in data.chunks_exact_mut(d) {
            for &(c0, c1) in &pairs {
                let x0 = row[c0];
                let x1 = row[c1];
                row[c0] = x0 * a + x1 * b;
                row[c1] = x0 * c + x1 * e;
            }
        }
    }

    /// `U psi`, in place.
    pub fn apply(&self, psi: &mut [C64], nq: usize) {
        let [[a, b], [c, e]] = self.u;
        for (i0, i1) in self.pairs(nq) {
            let (x0, x1) = (psi[i0], psi[i1]);
            psi[i0] = x0 * a + x1 * b;
            psi[i1] = x0 * c + x1 * e;
        }
    }

    /// Dense unitary on the whole register.
    pub fn unitary(&self, nq: usize) -> Matrix {
        let d = 1usize << nq;
        let mut m = Matrix::identity(d);
        // U = U I U^dagger U, but the row pass of `conjugate` alone gives U I.
        let [[a, b], [c, e]] = self.u;
        for (r0, r1) in self.pairs(nq) {
            m.set(r0, r0, C64::new(a, 0.0));
            m.set(r0, r1, C64::new(b, 0.0));
            m.set(r1, r0, C64::new(c, 0.0));
            m.set(r1, r1, C64::new(e, 0.0));
        }
        m
    }
}

/// Full-register unitary of the controlled-U gate on `(i, j)`.
pub fn controlled_u(i: usize, j: usize, phi: f64, layout: RegisterLayout) -> Result<Matrix> {
    Ok(ControlledUGate::new(i, j, phi, layout)?.unitary(layout.qubits()))
}

/// Which environment qubits each system qubit imprints on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZurekAssignment {
    blocks: Vec<Vec<usize>>,
}

impl ZurekAssignment {
    /// `blocks[s]` lists environment positions (0-based) for system qubit `s`.
    pub fn new(layout: RegisterLayout, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.len() != layout.k() {
            return Err(Error::invalid(
                "assignment",
                format!("{} blocks for {} system qubits", blocks.len(), layout.k()),
            ));
        }
        let mut seen = vec![false; layout.n()];
        for &j in blocks.iter().flatten() {
            if j >= layout.n() {
                return Err(Error::invalid("assignment", format!("environment qubit {j} out of range")));
            }
            if seen[j] {
                return Err(Error::invalid("assignment", format!("environment qubit {j} assigned twice")));
            }
            seen[j] = true;
        }
        if let Some(j) = seen.iter().position(|&s| !s) {
            return Err(Error::invalid("assignment", format!("environment qubit {j} unassigned")));
        }
        Ok(ZurekAssignment { blocks })
    }

    /// Contiguous blocks in order; leading blocks take the remainder when `k` does not divide `n`.
    pub fn contiguous(layout: RegisterLayout) -> Result<Self> {
        let (k, n) = (layout.k(), layout.n());
        let mut blocks = Vec::with_capacity(k);
        let mut start = 0;
        for s in 0..k {
            let len = n / k + usize::from(s < n % k);
            blocks.push((start..start + len).collect());
            start += len;
        }
        Self::new(layout, blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    fn gates(&self, layout: RegisterLayout) -> Result<Vec<ControlledUGate>> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(s, b)| b.iter().map(move |&j| (s, j)))
            .map(|(s, j)| ControlledUGate::cnot(s, layout.env_qubit(j), layout))
            .collect()
    }
}

/// One CNOT from each system qubit to each environment qubit of its block.
pub fn zurek_evolve(rho: &DensityMatrix, assignment: &ZurekAssignment) -> Result<DensityMatrix> {
    let layout = rho.layout();
    if assignment.blocks.len() != layout.k() {
        return Err(Error::DimensionMismatch("assignment does not match the register".into()));
    }
    let mut m = rho.matrix().clone();
    for g in assignment.gates(layout)? {
        g.conjugate(&mut m, layout.qubits());
    }
    Ok(DensityMatrix::from_parts(layout, m))
}

/// Same as [`zurek_evolve`] on a pure state.
pub fn zurek_evolve_pure(psi: &[C64], layout: RegisterLayout, assignment: &ZurekAssignment) -> Result<Vec<C64>> {
    let mut out = psi.to_vec();
    for g in assignment.gates(layout)? {
        g.apply(&mut out, layout.qubits());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChannelSpec {
    pub digraph: InteractionDigraph,
    pub phi: f64,
    pub steps: usize,
}

impl ChannelSpec {
    pub fn new(digraph: InteractionDigraph, phi: f64, steps: usize) -> Result<Self> {
        check_phi(phi)?;
        Ok(ChannelSpec { digraph, phi, steps })
    }

    pub fn gates(&self) -> Result<Vec<(ControlledUGate, f64)>> {
        let l = self.digraph.layout();
        self.digraph
            .edges()
            .iter()
            .zip(self.digraph.probabilities())
            .map(|(e, &p)| Ok((ControlledUGate::new(e.control, e.target, self.phi, l)?, p)))
            .collect()
    }
}

fn step_matrix(m: &Matrix, gates: &[(ControlledUGate, f64)], nq: usize) -> Matrix {
    let mut acc = Matrix::zeros(m.rows(), m.cols());
    let mut tmp = m.clone();
    for (g, p) in gates {
        tmp.as_mut_slice().copy_from_slice(m.as_slice());
        g.conjugate(&mut tmp, nq);
        acc.axpy(C64::new(*p, 0.0), &tmp);
    }
    acc
}

/// `rho -> sum_e p_e U_e rho U_e^dagger`.
pub fn channel_step(rho: &DensityMatrix, spec: &ChannelSpec) -> Result<DensityMatrix> {
    let layout = rho.layout();
    if layout != spec.digraph.layout() {
        return Err(Error::DimensionMismatch("state and digraph registers differ".into()));
    }
    let m = step_matrix(rho.matrix(), &spec.gates()?, layout.qubits());
    Ok(DensityMatrix::from_parts(layout, m))
}

/// Applies the channel to an arbitrary operator on the digraph's register.
pub fn channel_apply_operator(x: &Matrix, spec: &ChannelSpec) -> Result<Matrix> {
    let l = spec.digraph.layout();
    if x.rows() != l.dim() || x.cols() != l.dim() {
        return Err(Error::DimensionMismatch("operator does not act on the digraph register".into()));
    }
    Ok(step_matrix(x, &spec.gates()?, l.qubits()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IterateOptions {
    pub rehermitize_every: usize,
    /// Record the trace distance between consecutive iterates.
    pub diagnostics: bool,
}

impl Default for IterateOptions {
    fn default() -> Self {
        IterateOptions { rehermitize_every: DEFAULT_REHERMITIZE_EVERY, diagnostics: false }
    }
}

#[derive(Clone, Debug)]
pub struct Iteration {
    pub state: DensityMatrix,
    pub step_distances: Vec<f64>,
}

/// `spec.steps` applications of [`channel_step`].
pub fn iterate_channel(rho: &DensityMatrix, spec: &ChannelSpec, opts: IterateOptions) -> Result<Iteration> {
    let layout = rho.layout();
    if layout != spec.digraph.layout() {
        return Err(Error::DimensionMismatch("state and digraph registers differ".into()));
    }
    if opts.rehermitize_every == 0 {
        return Err(Error::invalid("rehermitize_every", "cadence must be positive"));
    }
    let gates = spec.gates()?;
    let nq = layout.qubits();
    let mut m = rho.matrix().clone();
    let mut step_distances = Vec::new();
    for step in 1..=spec.steps {
        let next = step_matrix(&m, &gates, nq);
        if !next.is_finite() {
            return Err(Error::NonFinite { step });
        }
        if opts.diagnostics {
            step_distances.push(trace_distance(&next, &m)?);
        }
        m = next;
        if step % opts.rehermitize_every == 0 {
            m.hermitize();
        }
    }
    Ok(Iteration { state: DensityMatrix::from_parts(layout, m), step_distances })
}
