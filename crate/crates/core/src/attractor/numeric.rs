//! Attractor spaces by successive eigenspace intersection.
//!
//! Every edge superoperator `X -> U_e X U_e^dagger` is a real involution, so
//! the computation runs on real operators; the complex attractor space is the
//! complexification of the real one.

use faer::{Mat, Side};

use super::{AttractorBases, AttractorBasis, Lambda, Provenance};
use crate::channels::{ChannelSpec, ControlledUGate};
use crate::digraph::InteractionDigraph;
use crate::qstate::Matrix;
use crate::{Error, Result, C64};

/// Largest register the vectorized solver accepts (`4^6` entries per operator).
pub const NUMERIC_MAX_QUBITS: usize = 6;

const RANK_TOL: f64 = 1e-9;
const BAND: (f64, f64) = (1e-11, 1e-7);
const EIGENVALUE_TOL: f64 = 1e-9;
const GRAM_TOL: f64 = 1e-10;

/// Singular values seen while deciding ranks.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConditioningReport {
    /// Largest singular value treated as zero.
    pub max_null_sigma: f64,
    /// Smallest singular value treated as nonzero.
    pub min_kept_sigma: f64,
    /// `(edge index, lambda, sigma)` for every singular value inside `[1e-11, 1e-7]`.
    pub band_hits: Vec<(usize, Lambda, f64)>,
}

impl ConditioningReport {
    pub fn is_clean(&self) -> bool {
        self.band_hits.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct NumericAttractor {
    pub bases: AttractorBases,
    pub conditioning: ConditioningReport,
}

/// `X -> U X U` for a real column holding a row-major `d x d` operator.
fn conjugate_real(x: &mut [f64], d: usize, pairs: &[(usize, usize)], u: [[f64; 2]; 2]) {
    let [[a, b], [c, e]] = u;
    for &(r0, r1) in pairs {
        for col in 0..d {
            let (x0, x1) = (x[r0 * d + col], x[r1 * d + col]);
            x[r0 * d + col] = a * x0 + b * x1;
            x[r1 * d + col] = c * x0 + e * x1;
        }
    }
    for row in x.chunks_exact_mut(d) {
        for &(c0, c1) in pairs {
            let (x0, x1) = (row[c0], row[c1]);
            row[c0] = a * x0 + b * x1;
            row[c1] = c * x0 + e * x1;
        }
    }
}

/// Orthonormal basis of the `lambda` eigenspace of the first edge superoperator.
fn first_edge_space(gate: &ControlledUGate, nq: usize, lambda: Lambda) -> Result<Mat<f64>> {
    let d = 1usize << nq;
    let u = gate.unitary(nq);
    let real = Mat::<f64>::from_fn(d, d, |i, j| u.get(i, j).re);
    let evd = real.selfadjoint_eigendecomposition(Side::Lower);
    let s = evd.s().column_vector();
    let v = evd.u();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for i in 0..d {
        let mu = s.read(i);
        if (mu - 1.0).abs() < EIGENVALUE_TOL {
            plus.push(i);
        } else if (mu + 1.0).abs() < EIGENVALUE_TOL {
            minus.push(i);
        } else {
            return Err(Error::UnexpectedEigenvalue(mu));
        }
    }
    let mut pairs = Vec::new();
    for (sa, sb) in [(&plus, &plus), (&minus, &minus), (&plus, &minus), (&minus, &plus)] {
        let same = std::ptr::eq(sa, sb);
        if same != (lambda == Lambda::Plus) {
            continue;
        }
        for &a in sa.iter() {
            for &b in sb.iter() {
                pairs.push((a, b));
            }
        }
    }
    Ok(Mat::<f64>::from_fn(d * d, pairs.len(), |row, col| {
        let (a, b) = pairs[col];
        v.read(row / d, a) * v.read(row % d, b)
    }))
}

fn refine(
    q: Mat<f64>,
    gate: &ControlledUGate,
    nq: usize,
    lambda: Lambda,
    edge: usize,
    report: &mut ConditioningReport,
) -> Result<Mat<f64>> {
    let (dd, r) = (q.nrows(), q.ncols());
    if r == 0 {
        return Ok(q);
    }
    let d = 1usize << nq;
    let pairs: Vec<(usize, usize)> = gate.pairs(nq).collect();
    let lv = lambda.value();
    let mut tq = Mat::<f64>::zeros(dd, r);
    let mut col = vec![0.0; dd];
    for j in 0..r {
        for (i, c) in col.iter_mut().enumerate() {
            *c = q.read(i, j);
        }
        conjugate_real(&mut col, d, &pairs, gate.u());
        for (i, c) in col.iter().enumerate() {
            tq.write(i, j, *c);
        }
    }
    // Right singular vectors of (T - lambda) Q are the eigenvectors of Q^T T Q.
    // faer's SVD of these highly degenerate matrices can return a
    // non-orthonormal V, so the symmetric eigensolver is used instead and each
    // singular value is measured directly as |(T - lambda) Q v|.
    let mut a = q.transpose() * &tq;
    for i in 0..r {
        for j in 0..i {
            let m = 0.5 * (a.read(i, j) + a.read(j, i));
            a.write(i, j, m);
            a.write(j, i, m);
        }
    }
    let v = a.selfadjoint_eigendecomposition(Side::Lower).u().to_owned();
    let mut m = tq;
    for j in 0..r {
        for i in 0..dd {
            m.write(i, j, m.read(i, j) - lv * q.read(i, j));
        }
    }
    let mv = &m * &v;
    let mut null = Vec::new();
    for i in 0..r {
        let s = (0..dd).map(|row| mv.read(row, i).powi(2)).sum::<f64>().sqrt();
        if s >= BAND.0 && s <= BAND.1 {
            report.band_hits.push((edge, lambda, s));
        }
        if s < RANK_TOL {
            null.push(i);
            report.max_null_sigma = report.max_null_sigma.max(s);
        } else {
            report.min_kept_sigma = report.min_kept_sigma.min(s);
        }
    }
    let v0 = Mat::<f64>::from_fn(r, null.len(), |i, j| v.read(i, null[j]));
    let out = &q * &v0;
    let gram = out.transpose() * &out;
    let mut dev: f64 = 0.0;
    for i in 0..gram.nrows() {
        for j in 0..gram.ncols() {
            dev = dev.max((gram.read(i, j) - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    if dev > GRAM_TOL {
        return Err(Error::NotOrthonormal { deviation: dev });
    }
    Ok(out)
}

/// Intersects the `lambda = +1` and `lambda = -1` eigenspaces of every edge.
pub fn numeric_attractor_basis(g: &InteractionDigraph, phi: f64) -> Result<NumericAttractor> {
    let layout = g.layout();
    let nq = layout.qubits();
    if nq > NUMERIC_MAX_QUBITS {
        return Err(Error::TooManyQubits { qubits: nq, cap: NUMERIC_MAX_QUBITS });
    }
    let gates: Vec<ControlledUGate> = ChannelSpec::new(g.clone(), phi, 1)?.gates()?.into_iter().map(|(g, _)| g).collect();
    let d = layout.dim();
    let mut report = ConditioningReport { max_null_sigma: 0.0, min_kept_sigma: f64::INFINITY, band_hits: Vec::new() };
    let mut out = Vec::new();
    for lambda in [Lambda::Plus, Lambda::Minus] {
        let mut q = first_edge_space(&gates[0], nq, lambda)?;
        for (e, gate) in gates.iter().enumerate().skip(1) {
            q = refine(q, gate, nq, lambda, e, &mut report)?;
        }
        let states = (0..q.ncols())
            .map(|j| Matrix::from_fn(d, d, |a, b| C64::new(q.read(a * d + b, j), 0.0)))
            .collect();
        out.push(AttractorBasis { lambda, states, provenance: Provenance::Numeric });
    }
    let minus = out.pop().expect("two eigenvalues");
    let plus = out.pop().expect("two eigenvalues");
    Ok(NumericAttractor { bases: AttractorBases::new(layout, plus, minus)?, conditioning: report })
}
