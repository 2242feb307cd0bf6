use serde::{Deserialize, Serialize};

use super::input::{all_ones, EnvSpec, InputStateSpec, WeightedRegistry};
use crate::attractor::{analytic_output_operator, Parity, Regime};
use crate::qstate::{partial_trace, spectrum, DensityMatrix, RegisterLayout};
use crate::{Error, Result, C64};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub h_se: f64,
    pub h_e: f64,
    /// `H_SE - H_E` at `L = n`.
    pub gap: f64,
    /// Nonzero eigenvalues of the joint state, descending.
    pub spectrum_se: Vec<f64>,
    /// Nonzero eigenvalues of the environment marginal, descending.
    pub spectrum_e: Vec<f64>,
}

/// Koenig asymptotic output for `k = 1`, environment `(|0_n><0_n| + |1_n><1_n|)/2`,
/// even step count, with its system coherences replaced by `c`.
///
/// In the `|0><1|` block, rows `|0_n>` and `|1_n>` carry `c` at every column of
/// Hamming weight parity `(-1)^n`; the `|1><0|` block holds the adjoint.
pub fn probe_state(a0: C64, a1: C64, n: usize, c: C64) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(Error::invalid("n", "the probe needs at least two environment qubits"));
    }
    let e = EnvSpec::MixtureOfRegistries {
        terms: vec![WeightedRegistry { weight: 0.5, y: 0 }, WeightedRegistry { weight: 0.5, y: all_ones(n) }],
    };
    let input = InputStateSpec::new(1, n, vec![a0, a1], e)?;
    let mut m = analytic_output_operator(&input, Regime::MaxKoenig, Parity::Even)?;
    let pn = 1usize << n;
    let zero = C64::new(0.0, 0.0);
    for r in 0..pn {
        for col in 0..pn {
            m.set(r, pn + col, zero);
            m.set(pn + col, r, zero);
        }
    }
    let want = n % 2;
    for r in [0, all_ones(n)] {
        for col in (0..pn).filter(|y| y.count_ones() as usize % 2 == want) {
            m.set(r, pn + col, c);
            m.set(pn + col, r, c.conj());
        }
    }
    DensityMatrix::new(RegisterLayout::with_cap(1, n, n + 1)?, m)
}

/// Entropy gap of [`probe_state`] over the whole environment.
///
/// A coherence too large for a positive state is reported as a PSD violation.
pub fn ideal_correlation_probe(a0: C64, a1: C64, n: usize, c: C64) -> Result<ProbeReport> {
    let rho = probe_state(a0, a1, n, c)?;
    let env: Vec<usize> = (1..=n).collect();
    let se = spectrum(&rho)?;
    let e = spectrum(&partial_trace(&rho, &env)?)?;
    let nz = |v: &[f64]| v.iter().copied().filter(|&x| x > 1e-14).collect::<Vec<_>>();
    Ok(ProbeReport {
        h_se: se.entropy(),
        h_e: e.entropy(),
        gap: se.entropy() - e.entropy(),
        spectrum_se: nz(se.values()),
        spectrum_e: nz(e.values()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amps() -> (C64, C64) {
        (C64::new(0.6, 0.0), C64::new(0.0, 0.8))
    }

    #[test]
    fn ideal_value_reproduces_the_output() {
        let (a0, a1) = amps();
        for n in [2, 4] {
            let c = a0 * a1.conj() / (1u64 << n) as f64;
            let rho = probe_state(a0, a1, n, c).unwrap();
            let input = InputStateSpec::new(
                1,
                n,
                vec![a0, a1],
                EnvSpec::MixtureOfRegistries {
                    terms: vec![WeightedRegistry { weight: 0.5, y: 0 }, WeightedRegistry { weight: 0.5, y: all_ones(n) }],
                },
            )
            .unwrap();
            let out = analytic_output_operator(&input, Regime::MaxKoenig, Parity::Even).unwrap();
            assert!(rho.matrix().max_abs_diff(&out) < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn doubled_coherence_is_not_a_state() {
        let (a0, a1) = amps();
        let n = 4;
        let c = a0 * a1.conj() * 2.0 / (1u64 << n) as f64;
        assert!(matches!(ideal_correlation_probe(a0, a1, n, c), Err(Error::PsdViolation { .. })));
    }

    #[test]
    fn no_coherence_is_block_diagonal() {
        let (a0, a1) = amps();
        let r = ideal_correlation_probe(a0, a1, 3, C64::new(0.0, 0.0)).unwrap();
        assert!(r.gap > 0.0);
    }
}
