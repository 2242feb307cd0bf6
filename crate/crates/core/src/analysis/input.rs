use serde::{Deserialize, Serialize};

use crate::attractor::SymmetryStates;
use crate::qstate::{DensityMatrix, Matrix, RegisterLayout, StateVector, DEFAULT_MAX_QUBITS, NORM_TOL};
use crate::{Error, Result, C64};

const WEIGHT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedRegistry {
    pub weight: f64,
    pub y: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmplitudeRegistry {
    pub amp: C64,
    pub y: usize,
}

/// Initial environment. Registry indices are read with the first environment
/// qubit as the most significant bit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EnvSpec {
    Registry { y: usize },
    MixtureOfRegistries { terms: Vec<WeightedRegistry> },
    SuperpositionOfRegistries { terms: Vec<AmplitudeRegistry> },
    MaximallyMixed,
    /// `a|0> (x) |s_c1^n> + b|1> (x) |s_c2^n>` with `(a, b)` taken from the system amplitudes; `k = 1` only.
    SymmetryEntangled { c1: f64 },
}

/// A product input `|psi_S><psi_S| (x) rho_E`, or the joint symmetry-entangled state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputStateSpec {
    pub k: usize,
    pub n: usize,
    pub s_amplitudes: Vec<C64>,
    pub e_spec: EnvSpec,
}

impl InputStateSpec {
    pub fn new(k: usize, n: usize, s_amplitudes: Vec<C64>, e_spec: EnvSpec) -> Result<Self> {
        let spec = InputStateSpec { k, n, s_amplitudes, e_spec };
        spec.validate()?;
        Ok(spec)
    }

    /// `k = 1` with real amplitudes `(a, b)`.
    pub fn qubit(n: usize, a: f64, b: f64, e_spec: EnvSpec) -> Result<Self> {
        Self::new(1, n, vec![C64::new(a, 0.0), C64::new(b, 0.0)], e_spec)
    }

    /// All `2^k` system amplitudes equal.
    pub fn uniform(k: usize, n: usize, e_spec: EnvSpec) -> Result<Self> {
        let a = (1.0 / (1u64 << k) as f64).sqrt();
        Self::new(k, n, vec![C64::new(a, 0.0); 1 << k], e_spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::invalid("k", "at least one system qubit is required"));
        }
        if self.n == 0 {
            return Err(Error::invalid("n", "at least one environment qubit is required"));
        }
        if self.k + self.n > 62 {
            return Err(Error::invalid("n", "register too large"));
        }
        if self.s_amplitudes.len() != 1 << self.k {
            return Err(Error::invalid(
                "s_amplitudes",
                format!("{} amplitudes for k = {}", self.s_amplitudes.len(), self.k),
            ));
        }
        check_norm("s_amplitudes", self.s_amplitudes.iter().map(|a| a.norm_sqr()))?;
        let ne = 1usize << self.n;
        let check_y = |y: usize| {
            if y < ne {
                Ok(())
            } else {
                Err(Error::invalid("e_spec", format!("registry index {y} is not below 2^{}", self.n)))
            }
        };
        match &self.e_spec {
            EnvSpec::Registry { y } => check_y(*y)?,
            EnvSpec::MixtureOfRegistries { terms } => {
                if terms.is_empty() {
                    return Err(Error::invalid("e_spec", "empty mixture"));
                }
                for t in terms {
                    check_y(t.y)?;
                    if !(t.weight > 0.0) || !t.weight.is_finite() {
                        return Err(Error::invalid("e_spec", "mixture weights must be positive"));
                    }
                }
                let s: f64 = terms.iter().map(|t| t.weight).sum();
                if (s - 1.0).abs() > WEIGHT_TOL {
                    return Err(Error::invalid("e_spec", format!("mixture weights sum to {s}")));
                }
            }
            EnvSpec::SuperpositionOfRegistries { terms } => {
                for t in terms {
                    check_y(t.y)?;
                }
                for (i, t) in terms.iter().enumerate() {
                    if terms[..i].iter().any(|u| u.y == t.y) {
                        return Err(Error::invalid("e_spec", format!("registry {} listed twice", t.y)));
                    }
                }
                check_norm("e_spec", terms.iter().map(|t| t.amp.norm_sqr()))?;
            }
            EnvSpec::MaximallyMixed => {}
            EnvSpec::SymmetryEntangled { c1 } => {
                if self.k != 1 {
                    return Err(Error::invalid("e_spec", "the symmetry-entangled input needs k = 1"));
                }
                SymmetryStates::from_c1(*c1)?;
            }
        }
        Ok(())
    }

    pub fn layout(&self, max_qubits: usize) -> Result<RegisterLayout> {
        RegisterLayout::with_cap(self.k, self.n, max_qubits)
    }

    /// The environment state on its own; `None` for the joint symmetry-entangled input.
    pub fn env_density(&self) -> Result<Option<Matrix>> {
        let ne = 1usize << self.n;
        let one = C64::new(1.0, 0.0);
        Ok(match &self.e_spec {
            EnvSpec::Registry { y } => {
                let mut m = Matrix::zeros(ne, ne);
                m.set(*y, *y, one);
                Some(m)
            }
            EnvSpec::MixtureOfRegistries { terms } => {
                let mut m = Matrix::zeros(ne, ne);
                for t in terms {
                    m.add_at(t.y, t.y, C64::new(t.weight, 0.0));
                }
                Some(m)
            }
            EnvSpec::SuperpositionOfRegistries { terms } => {
                let mut v = vec![C64::new(0.0, 0.0); ne];
                for t in terms {
                    v[t.y] = t.amp;
                }
                Some(Matrix::outer(&v, &v))
            }
            EnvSpec::MaximallyMixed => Some(Matrix::identity(ne).scaled(C64::new(1.0 / ne as f64, 0.0))),
            EnvSpec::SymmetryEntangled { .. } => None,
        })
    }

    /// Full initial state on `S (x) E`.
    pub fn density(&self, max_qubits: usize) -> Result<DensityMatrix> {
        self.validate()?;
        let layout = self.layout(max_qubits)?;
        let m = match self.env_density()? {
            Some(e) => Matrix::outer(&self.s_amplitudes, &self.s_amplitudes).kron(&e),
            None => {
                let EnvSpec::SymmetryEntangled { c1 } = self.e_spec else { unreachable!() };
                let sym = SymmetryStates::from_c1(c1)?;
                let (a, b) = (self.s_amplitudes[0], self.s_amplitudes[1]);
                let mut psi: Vec<C64> = sym.s1_n(self.n).into_iter().map(|x| x * a).collect();
                psi.extend(sym.s2_n(self.n).into_iter().map(|x| x * b));
                return Ok(StateVector::new(layout, psi)?.to_density());
            }
        };
        DensityMatrix::new(layout, m)
    }

    pub fn density_default_cap(&self) -> Result<DensityMatrix> {
        self.density(DEFAULT_MAX_QUBITS)
    }
}

fn check_norm(field: &'static str, sq: impl Iterator<Item = f64>) -> Result<()> {
    let s: f64 = sq.sum();
    if (s - 1.0).abs() > NORM_TOL {
        return Err(Error::invalid(field, format!("squared norm is {s}")));
    }
    Ok(())
}

/// `|1_n>` as a registry index.
pub fn all_ones(n: usize) -> usize {
    (1usize << n) - 1
}

/// `|1 0_{n-1}>`: only the first environment qubit set.
pub fn leading_one(n: usize) -> usize {
    1usize << (n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_input() {
        let h = 0.5f64.sqrt();
        let s = InputStateSpec::qubit(2, h, h, EnvSpec::Registry { y: 0 }).unwrap();
        let rho = s.density_default_cap().unwrap();
        assert_eq!(rho.dim(), 8);
        assert!((rho.matrix().get(0, 4).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        let h = 0.5f64.sqrt();
        assert!(InputStateSpec::qubit(2, h, 0.7, EnvSpec::Registry { y: 0 }).is_err());
        assert!(InputStateSpec::qubit(2, h, h, EnvSpec::Registry { y: 4 }).is_err());
        let bad = EnvSpec::MixtureOfRegistries {
            terms: vec![WeightedRegistry { weight: 0.5, y: 0 }, WeightedRegistry { weight: 0.4, y: 3 }],
        };
        assert!(InputStateSpec::qubit(2, h, h, bad).is_err());
        assert!(InputStateSpec::uniform(2, 2, EnvSpec::SymmetryEntangled { c1: h }).is_err());
    }

    #[test]
    fn symmetry_entangled_is_pure() {
        let h = 0.5f64.sqrt();
        let s = InputStateSpec::qubit(3, 0.6, 0.8, EnvSpec::SymmetryEntangled { c1: h }).unwrap();
        let rho = s.density_default_cap().unwrap();
        let p = rho.matrix().matmul(rho.matrix());
        assert!(p.max_abs_diff(rho.matrix()) < 1e-12);
    }

    #[test]
    fn serde_shape() {
        let s = InputStateSpec::uniform(1, 2, EnvSpec::Registry { y: 3 }).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("\"kind\":\"registry\""));
        let back: InputStateSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
