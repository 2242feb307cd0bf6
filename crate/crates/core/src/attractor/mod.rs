//! Attractor spaces of the random-unitary channel and the exact `N -> infinity` state.
//!
//! An attractor state satisfies `U_e X U_e^dagger = lambda X` for every edge;
//! for this gate family only `lambda = +1` and `lambda = -1` occur. The state
//! after `N` steps converges to
//! `sum_lambda lambda^N sum_i <rho, X_{lambda,i}> X_{lambda,i}`.

mod analytic;
mod formula;
mod numeric;
mod outputs;
mod structured;

use serde::{Deserialize, Serialize};

use crate::digraph::{ClassTag, InteractionDigraph};
use crate::qstate::{DensityMatrix, Matrix, RegisterLayout};
use crate::{Error, Result, C64};

pub use analytic::{analytic_basis_max, analytic_basis_min, gram_schmidt, EXPLICIT_MAX_QUBITS};
pub use formula::{derived_max_dims, dimension_formula};
pub use numeric::{numeric_attractor_basis, ConditioningReport, NumericAttractor, NUMERIC_MAX_QUBITS};
pub use outputs::{analytic_output_operator, analytic_output_state, AnalyticCase};
pub use structured::StructuredSpace;

const ORTHONORMAL_TOL: f64 = 1e-8;
const PROJECTED_TRACE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Lambda {
    Plus,
    Minus,
}

impl Lambda {
    pub fn value(self) -> f64 {
        match self {
            Lambda::Plus => 1.0,
            Lambda::Minus => -1.0,
        }
    }
}

/// Which power `lambda^N` to apply to the `lambda = -1` part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
    /// Mean of `Even` and `Odd`: drops the `lambda = -1` part. Not a limit of the iteration itself.
    TimeAveraged,
}

impl Parity {
    pub fn of(steps: usize) -> Self {
        if steps % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub(crate) fn minus_weight(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
            Parity::TimeAveraged => 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    MaxKoenig,
    MinStrong,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Numeric,
    AnalyticMax,
    AnalyticMin,
}

/// `|s_c1> = c1|0> + c2|1>` and `|s_c2> = c2|0> - c1|1>`, the eigenvectors of `u`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetryStates {
    pub c1: f64,
    pub c2: f64,
}

impl SymmetryStates {
    pub fn from_phi(phi: f64) -> Self {
        let (c2, c1) = (phi / 2.0).sin_cos();
        SymmetryStates { c1, c2 }
    }

    pub fn from_c1(c1: f64) -> Result<Self> {
        if !(c1 > 0.0 && c1 < 1.0) {
            return Err(Error::invalid("c1", format!("{c1} is outside (0, 1)")));
        }
        Ok(SymmetryStates { c1, c2: (1.0 - c1 * c1).sqrt() })
    }

    pub fn s1(&self) -> [f64; 2] {
        [self.c1, self.c2]
    }

    pub fn s2(&self) -> [f64; 2] {
        [self.c2, -self.c1]
    }

    pub fn s1_n(&self, n: usize) -> Vec<C64> {
        product_ket(self.s1(), n)
    }

    pub fn s2_n(&self, n: usize) -> Vec<C64> {
        product_ket(self.s2(), n)
    }
}

/// `|v>^{(x) n}` for a real single-qubit `v`.
pub fn product_ket(v: [f64; 2], n: usize) -> Vec<C64> {
    (0..1usize << n)
        .map(|y| {
            let p: f64 = (0..n).map(|q| v[(y >> q) & 1]).product();
            C64::new(p, 0.0)
        })
        .collect()
}

pub fn basis_ket(y: usize, n: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); 1 << n];
    v[y] = C64::new(1.0, 0.0);
    v
}

/// Orthonormal operator family for one eigenvalue.
#[derive(Clone, Debug)]
pub struct AttractorBasis {
    pub lambda: Lambda,
    pub states: Vec<Matrix>,
    pub provenance: Provenance,
}

impl AttractorBasis {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    /// `max |<X_i, X_j> - delta_ij|`.
    pub fn gram_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for (i, a) in self.states.iter().enumerate() {
            for (j, b) in self.states.iter().enumerate().skip(i) {
                let want = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((a.hs(b) - C64::new(want, 0.0)).norm());
            }
        }
        dev
    }
}

/// Anything that can evaluate the asymptotic projection on a register.
pub trait AttractorSpace {
    fn layout(&self) -> RegisterLayout;

    /// `(dim lambda=+1, dim lambda=-1)`.
    fn dims(&self) -> (usize, usize);

    /// `sum_lambda w_lambda sum_i <X, X_{lambda,i}> X_{lambda,i}` with `w_-` set by parity.
    fn project_operator(&self, x: &Matrix, parity: Parity) -> Result<Matrix>;

    /// Short tag naming how the space was obtained.
    fn label(&self) -> &'static str;
}

/// Explicit bases for both eigenvalues.
#[derive(Clone, Debug)]
pub struct AttractorBases {
    layout: RegisterLayout,
    pub plus: AttractorBasis,
    pub minus: AttractorBasis,
}

impl AttractorBases {
    /// Rejects bases whose Gram matrix deviates from the identity by more than `1e-8`.
    pub fn new(layout: RegisterLayout, plus: AttractorBasis, minus: AttractorBasis) -> Result<Self> {
        let d = layout.dim();
        for b in [&plus, &minus] {
            if b.states.iter().any(|x| x.rows() != d || x.cols() != d) {
                return Err(Error::DimensionMismatch("attractor state on a different register".into()));
            }
            let dev = b.gram_deviation();
            if dev > ORTHONORMAL_TOL {
                return Err(Error::NotOrthonormal { deviation: dev });
            }
        }
        let cross = plus
            .states
            .iter()
            .flat_map(|a| minus.states.iter().map(move |b| a.hs(b).norm()))
            .fold(0.0, f64::max);
        if cross > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal { deviation: cross });
        }
        Ok(AttractorBases { layout, plus, minus })
    }

    pub fn get(&self, lambda: Lambda) -> &AttractorBasis {
        match lambda {
            Lambda::Plus => &self.plus,
            Lambda::Minus => &self.minus,
        }
    }

    /// Largest `||U_e X U_e^dagger - lambda X||_HS` over all states and edges.
    pub fn max_residual(&self, g: &InteractionDigraph, phi: f64) -> Result<f64> {
        let spec = crate::channels::ChannelSpec::new(g.clone(), phi, 1)?;
        let nq = self.layout.qubits();
        let mut worst: f64 = 0.0;
        for (gate, _) in spec.gates()? {
            for b in [&self.plus, &self.minus] {
                for x in &b.states {
                    let mut y = x.clone();
                    gate.conjugate(&mut y, nq);
                    y.axpy(C64::new(-b.lambda.value(), 0.0), x);
                    worst = worst.max(y.frobenius_norm());
                }
            }
        }
        Ok(worst)
    }
}

impl AttractorSpace for AttractorBases {
    fn layout(&self) -> RegisterLayout {
        self.layout
    }

    fn label(&self) -> &'static str {
        match self.plus.provenance {
            Provenance::Numeric => "numeric",
            Provenance::AnalyticMax => "analytic_max",
            Provenance::AnalyticMin => "analytic_min",
        }
    }

    fn dims(&self) -> (usize, usize) {
        (self.plus.dim(), self.minus.dim())
    }

    fn project_operator(&self, x: &Matrix, parity: Parity) -> Result<Matrix> {
        let d = self.layout.dim();
        if x.rows() != d || x.cols() != d {
            return Err(Error::DimensionMismatch("operator and attractor register differ".into()));
        }
        let mut out = Matrix::zeros(d, d);
        for (b, w) in [(&self.plus, 1.0), (&self.minus, parity.minus_weight())] {
            if w == 0.0 {
                continue;
            }
            for s in &b.states {
                out.axpy(x.hs(s) * w, s);
            }
        }
        Ok(out)
    }
}

/// The exact asymptotic state for `N` of the given parity.
pub fn asymptotic_project(rho: &DensityMatrix, space: &dyn AttractorSpace, parity: Parity) -> Result<DensityMatrix> {
    if rho.layout() != space.layout() {
        return Err(Error::DimensionMismatch("state and attractor register differ".into()));
    }
    let mut m = space.project_operator(rho.matrix(), parity)?;
    m.hermitize();
    let tr = m.trace();
    if (tr - C64::new(1.0, 0.0)).norm() > PROJECTED_TRACE_TOL {
        return Err(Error::NotDensity(format!("projected trace {tr}")));
    }
    Ok(DensityMatrix::from_parts(rho.layout(), m))
}

/// Picks the cheapest exact attractor space for a digraph.
///
/// Full Koenig digraphs and digraphs whose environment is strongly connected
/// (with every system qubit controlling every environment qubit, `n >= max(k, 2)`)
/// use the closed-form block structure; everything else goes to the numeric
/// solver, bounded by `numeric_cap` qubits.
pub fn attractor_space_for(g: &InteractionDigraph, phi: f64, numeric_cap: usize) -> Result<Box<dyn AttractorSpace>> {
    let l = g.layout();
    let full = g.has_full_system_fanout();
    match g.classify().tag {
        ClassTag::Koenig if full => Ok(Box::new(StructuredSpace::new(l, Regime::MaxKoenig, phi)?)),
        ClassTag::EnvStronglyConnected if full && l.n() >= 2 && l.n() >= l.k() => {
            Ok(Box::new(StructuredSpace::new(l, Regime::MinStrong, phi)?))
        }
        _ => {
            if l.qubits() > numeric_cap.min(NUMERIC_MAX_QUBITS) {
                return Err(Error::Unsupported(format!(
                    "numeric attractor solver is limited to {} qubits, digraph has {}",
                    numeric_cap.min(NUMERIC_MAX_QUBITS),
                    l.qubits()
                )));
            }
            Ok(Box::new(numeric_attractor_basis(g, phi)?.bases))
        }
    }
}
