use num_complex::Complex64 as C64;

use super::{Matrix, RegisterLayout};
use crate::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-10;
pub const NORM_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    layout: RegisterLayout,
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(layout: RegisterLayout, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for dimension {}",
                amplitudes.len(),
                layout.dim()
            )));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::invalid("amplitudes", format!("squared norm is {norm}")));
        }
        Ok(StateVector { layout, amplitudes })
    }

    pub fn basis(layout: RegisterLayout, index: usize) -> Result<Self> {
        if index >= layout.dim() {
            return Err(Error::invalid("index", format!("{index} >= {}", layout.dim())));
        }
        let mut amps = vec![C64::new(0.0, 0.0); layout.dim()];
        amps[index] = C64::new(1.0, 0.0);
        Ok(StateVector { layout, amplitudes: amps })
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_parts(self.layout, Matrix::outer(&self.amplitudes, &self.amplitudes))
    }
}

/// Hermitian, unit-trace, positive semidefinite operator on a register.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    layout: RegisterLayout,
    m: Matrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity.
    pub fn new(layout: RegisterLayout, m: Matrix) -> Result<Self> {
        let rho = Self::checked_shape(layout, m)?;
        let herm = rho.m.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::NotDensity(format!("Hermiticity error {herm:e}")));
        }
        let tr = rho.m.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::NotDensity(format!("trace {tr}")));
        }
        let min = rho.m.hermitian_eigenvalues()?[0];
        if min < -PSD_TOL {
            return Err(Error::PsdViolation { min_eigenvalue: min });
        }
        Ok(rho)
    }

    fn checked_shape(layout: RegisterLayout, m: Matrix) -> Result<Self> {
        if m.rows() != layout.dim() || m.cols() != layout.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix on a {}-qubit register",
                m.rows(),
                m.cols(),
                layout.qubits()
            )));
        }
        Ok(DensityMatrix { layout, m })
    }

    /// Wraps a matrix produced by a trace-preserving operation without re-validating it.
    pub(crate) fn from_parts(layout: RegisterLayout, m: Matrix) -> Self {
        debug_assert_eq!(m.rows(), layout.dim());
        DensityMatrix { layout, m }
    }

    pub fn maximally_mixed(layout: RegisterLayout) -> Self {
        let mut m = Matrix::identity(layout.dim());
        m.scale(C64::new(1.0 / layout.dim() as f64, 0.0));
        Self::from_parts(layout, m)
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix {
        self.m
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn hermiticity_error(&self) -> f64 {
        self.m.hermiticity_error()
    }

    /// Same entries on a different layout of equal dimension.
    pub fn relabel(self, layout: RegisterLayout) -> Result<Self> {
        Self::checked_shape(layout, self.m)
    }
}

/// Kronecker product; the result keeps `a`'s qubits first.
///
/// The system qubits of the result must stay leftmost, so `b` may only
/// contribute system qubits when `a` has no environment qubits.
pub fn tensor_product(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let (la, lb) = (a.layout, b.layout);
    if la.n() > 0 && lb.k() > 0 {
        return Err(Error::invalid(
            "tensor_product",
            "system qubits of the second factor would follow environment qubits",
        ));
    }
    let cap = la.max_qubits().max(lb.max_qubits());
    let layout = RegisterLayout::marginal(la.k() + lb.k(), la.n() + lb.n(), cap)?;
    Ok(DensityMatrix::from_parts(layout, a.m.kron(&b.m)))
}

/// Reduced state on the qubits in `keep`, in register order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let layout = rho.layout;
    let nq = layout.qubits();
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() {
        return Err(Error::invalid("keep", "duplicate qubit index"));
    }
    for &q in &kept {
        layout.check_qubit(q)?;
    }
    if kept.is_empty() {
        return Err(Error::invalid("keep", "cannot trace out the whole register"));
    }
    if kept.len() == nq {
        return Ok(rho.clone());
    }
    let traced: Vec<usize> = (0..nq).filter(|q| !kept.contains(q)).collect();
    let offsets = |qs: &[usize]| -> Vec<usize> {
        (0..1usize << qs.len())
            .map(|v| {
                qs.iter().enumerate().fold(0, |acc, (pos, &q)| {
                    let bit = (v >> (qs.len() - 1 - pos)) & 1;
                    acc | (bit << layout.shift(q))
                })
            })
            .collect()
    };
    let ko = offsets(&kept);
    let to = offsets(&traced);
    let dk = ko.len();
    let m = &rho.m;
    let mut out = Matrix::zeros(dk, dk);
    for r in 0..dk {
        for c in 0..dk {
            let mut acc = C64::new(0.0, 0.0);
            for &t in &to {
                acc += m.get(ko[r] | t, ko[c] | t);
            }
            out.set(r, c, acc);
        }
    }
    let ks = kept.iter().filter(|&&q| layout.is_system(q)).count();
    let sub = RegisterLayout::marginal(ks, kept.len() - ks, layout.max_qubits())?;
    Ok(DensityMatrix::from_parts(sub, out))
}

/// Traces out qubits one at a time in the given order.
///
/// Indices in `discard` refer to the original register. Gives the same
/// result as [`partial_trace`] for the complementary keep set.
pub fn partial_trace_sequential(rho: &DensityMatrix, discard: &[usize]) -> Result<DensityMatrix> {
    let mut remaining: Vec<usize> = (0..rho.layout.qubits()).collect();
    let mut cur = rho.clone();
    for &q in discard {
        let pos = remaining
            .iter()
            .position(|&r| r == q)
            .ok_or_else(|| Error::invalid("discard", format!("qubit {q} absent or repeated")))?;
        let keep: Vec<usize> = (0..remaining.len()).filter(|&p| p != pos).collect();
        cur = partial_trace(&cur, &keep)?;
        remaining.remove(pos);
    }
    Ok(cur)
}

/// `Tr[X Y^dagger]`.
pub fn hs_inner_product(x: &Matrix, y: &Matrix) -> Result<C64> {
    if x.rows() != y.rows() || x.cols() != y.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    Ok(x.hs(y))
}

/// `||a - b||_1 / 2` for Hermitian operators of equal shape.
pub fn trace_distance(a: &Matrix, b: &Matrix) -> Result<f64> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch("trace distance operands".into()));
    }
    let ev = a.sub(b).hermitian_eigenvalues()?;
    Ok(0.5 * ev.iter().map(|x| x.abs()).sum::<f64>())
}
