use serde::{Deserialize, Serialize};

use super::pip::mutual_information;
use super::TraceOrder;
use crate::attractor::{product_ket, SymmetryStates};
use crate::channels::check_phi;
use crate::qstate::{shannon_entropy, DensityMatrix, Matrix, RegisterLayout};
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryGap {
    pub phi: f64,
    pub h_e: f64,
    pub h_se: f64,
    /// `H_SE - H_E`; zero is required for a plateau.
    pub gap: f64,
}

/// `points` angles `i pi / (points + 1)`, `i = 1..=points`.
pub fn phi_grid(points: usize) -> Vec<f64> {
    let step = std::f64::consts::PI / (points + 1) as f64;
    (1..=points).map(|i| i as f64 * step).collect()
}

fn ket(v: [f64; 2]) -> Vec<C64> {
    product_ket(v, 1)
}

/// `|a|^2 |0><0| (x) |e0><e0| + |b|^2 |1><1| (x) |e1><e1|` on one system and one environment qubit.
fn branch_state(a: C64, b: C64, e0: [f64; 2], e1: [f64; 2]) -> Result<DensityMatrix> {
    if ((a.norm_sqr() + b.norm_sqr()) - 1.0).abs() > 1e-12 {
        return Err(Error::invalid("amplitudes", "|a|^2 + |b|^2 must be 1"));
    }
    let p0 = Matrix::outer(&ket([1.0, 0.0]), &ket([1.0, 0.0]));
    let p1 = Matrix::outer(&ket([0.0, 1.0]), &ket([0.0, 1.0]));
    let mut m = p0.kron(&Matrix::outer(&ket(e0), &ket(e0))).scaled(C64::new(a.norm_sqr(), 0.0));
    m.axpy(C64::new(b.norm_sqr(), 0.0), &p1.kron(&Matrix::outer(&ket(e1), &ket(e1))));
    DensityMatrix::new(RegisterLayout::new(1, 1)?, m)
}

fn gap(phi: f64, rho: &DensityMatrix) -> Result<SymmetryGap> {
    let mi = mutual_information(rho, 1, &TraceOrder::RightToLeft)?;
    Ok(SymmetryGap { phi, h_e: mi.h_e, h_se: mi.h_se, gap: mi.h_se - mi.h_e })
}

/// Entropy gap at `L = n = 1` of the decohered branch state over a grid of gate angles.
///
/// The environment records are `|s_c1> = c1|0> + c2|1>` and `c1|0> - c2|1>`,
/// whose overlap `c1^2 - c2^2 = cos phi` gives the environment eigenvalues
/// `1/2 +- sqrt(1/4 - 4 c1^2 c2^2 |a|^2 |b|^2)`. The gap vanishes only where the
/// records are orthogonal, at `phi = pi/2`.
pub fn symmetry_sweep(phis: &[f64], a: C64, b: C64) -> Result<Vec<SymmetryGap>> {
    phis.iter()
        .map(|&phi| {
            check_phi(phi)?;
            let s = SymmetryStates::from_phi(phi);
            gap(phi, &branch_state(a, b, s.s1(), [s.c1, -s.c2])?)
        })
        .collect()
}

/// Same sweep with the records `|s_c1>` and `|s_c2>` taken literally.
///
/// These are orthogonal for every angle, so the gap is zero across the grid.
pub fn symmetry_sweep_literal(phis: &[f64], a: C64, b: C64) -> Result<Vec<SymmetryGap>> {
    phis.iter()
        .map(|&phi| {
            check_phi(phi)?;
            let s = SymmetryStates::from_phi(phi);
            gap(phi, &branch_state(a, b, s.s1(), s.s2())?)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchReport {
    pub h_class: f64,
    pub h_e: f64,
    pub h_se: f64,
}

/// `k`-qubit generalization: the lower half of the pointer states is recorded
/// as `|s1^L>`, the upper half as `|s2^L>`, at `phi = pi/2`.
pub fn two_record_state(probabilities: &[f64], l: usize) -> Result<DensityMatrix> {
    let pk = probabilities.len();
    if pk < 2 || !pk.is_power_of_two() {
        return Err(Error::invalid("probabilities", "length must be 2^k with k >= 1"));
    }
    if probabilities.iter().any(|&p| !(p > 0.0 && p < 1.0)) || (probabilities.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
        return Err(Error::invalid("probabilities", "must lie in (0, 1) and sum to 1"));
    }
    let k = pk.trailing_zeros() as usize;
    let sym = SymmetryStates::from_phi(std::f64::consts::FRAC_PI_2);
    let r1 = Matrix::outer(&sym.s1_n(l), &sym.s1_n(l));
    let r2 = Matrix::outer(&sym.s2_n(l), &sym.s2_n(l));
    let mut m = Matrix::zeros(pk << l, pk << l);
    for (i, &p) in probabilities.iter().enumerate() {
        let mut s = Matrix::zeros(pk, pk);
        s.set(i, i, C64::new(p, 0.0));
        m.axpy(C64::new(1.0, 0.0), &s.kron(if i < pk / 2 { &r1 } else { &r2 }));
    }
    DensityMatrix::new(RegisterLayout::new(k, l)?, m)
}

/// Entropies of [`two_record_state`] with all pointer states equally likely.
pub fn two_record_check(k: usize, l: usize) -> Result<BranchReport> {
    let pk = 1usize << k;
    let probs = vec![1.0 / pk as f64; pk];
    let rho = two_record_state(&probs, l)?;
    let mi = mutual_information(&rho, l, &TraceOrder::RightToLeft)?;
    Ok(BranchReport { h_class: shannon_entropy(&probs), h_e: mi.h_e, h_se: mi.h_se })
}
