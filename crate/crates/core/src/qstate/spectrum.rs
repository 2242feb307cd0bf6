use super::{DensityMatrix, Matrix};
use crate::{Error, Result};

pub const CLAMP_TOL: f64 = 1e-10;
const RESIDUAL_TOL: f64 = 1e-8;

/// Eigenvalues of a density matrix, descending.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Clamps small negative values and rejects anything below `-CLAMP_TOL`.
    pub fn from_eigenvalues(mut values: Vec<f64>) -> Result<Self> {
        for v in &mut values {
            if !v.is_finite() {
                return Err(Error::Decomposition { residual: f64::NAN });
            }
            if *v < -CLAMP_TOL {
                return Err(Error::PsdViolation { min_eigenvalue: *v });
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Spectrum(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entropy in bits.
    pub fn entropy(&self) -> f64 {
        shannon_entropy(&self.0)
    }
}

pub fn spectrum(rho: &DensityMatrix) -> Result<Spectrum> {
    operator_spectrum(rho.matrix())
}

/// Spectrum of a Hermitian, unit-trace operator that is not wrapped as a [`DensityMatrix`].
pub fn operator_spectrum(m: &Matrix) -> Result<Spectrum> {
    let ev = m.hermitian_eigenvalues()?;
    let residual = (ev.iter().sum::<f64>() - m.trace().re).abs();
    if residual > RESIDUAL_TOL * (1.0 + m.trace().re.abs()) {
        return Err(Error::Decomposition { residual });
    }
    Spectrum::from_eigenvalues(ev)
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(spectrum(rho)?.entropy())
}

/// `-sum p log2 p` with `0 log 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

/// Shannon entropy of the computational-basis populations.
pub fn pointer_shannon_entropy(rho_s: &DensityMatrix) -> f64 {
    let p: Vec<f64> = rho_s.matrix().diag().iter().map(|z| z.re.max(0.0)).collect();
    shannon_entropy(&p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{RegisterLayout, StateVector};
    use num_complex::Complex64 as C64;

    #[test]
    fn pure_state_spectrum() {
        let l = RegisterLayout::new(1, 1).unwrap();
        let s = 0.5f64.sqrt();
        let psi = StateVector::new(l, vec![C64::new(s, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, s)])
            .unwrap();
        let sp = spectrum(&psi.to_density()).unwrap();
        assert!((sp.values()[0] - 1.0).abs() < 1e-12);
        assert!(sp.values()[1..].iter().all(|&v| v.abs() < 1e-12));
        assert!(von_neumann_entropy(&psi.to_density()).unwrap().abs() < 1e-10);
    }

    #[test]
    fn maximally_mixed_entropy() {
        let l = RegisterLayout::new(1, 2).unwrap();
        let rho = DensityMatrix::maximally_mixed(l);
        let sp = spectrum(&rho).unwrap();
        assert!(sp.values().iter().all(|&v| (v - 0.125).abs() < 1e-14));
        assert!((sp.entropy() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn pointer_entropy() {
        let l = RegisterLayout::new(1, 0).unwrap();
        let h = DensityMatrix::maximally_mixed(l);
        assert!((pointer_shannon_entropy(&h) - 1.0).abs() < 1e-15);
        let z = StateVector::basis(l, 0).unwrap().to_density();
        assert_eq!(pointer_shannon_entropy(&z), 0.0);
        let l2 = RegisterLayout::new(3, 0).unwrap();
        assert!((pointer_shannon_entropy(&DensityMatrix::maximally_mixed(l2)) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn clamping() {
        let s = Spectrum::from_eigenvalues(vec![-5e-11, 1.0]).unwrap();
        assert_eq!(s.values(), &[1.0, 0.0]);
        assert!(matches!(
            Spectrum::from_eigenvalues(vec![-1e-6, 1.0]),
            Err(Error::PsdViolation { .. })
        ));
    }
}
