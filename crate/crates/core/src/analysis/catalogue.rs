use serde::{Deserialize, Serialize};

use super::input::{all_ones, leading_one, AmplitudeRegistry, EnvSpec, InputStateSpec, WeightedRegistry};
use crate::qstate::shannon_entropy;
use crate::{Error, Result, C64};

/// Expected entropies in bits for one fragment size.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectedEntropies {
    pub h_s: f64,
    pub h_e: f64,
    pub h_se: f64,
}

/// One of the six catalogued environment inputs for the CNOT model, `k = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogueEntry {
    pub row: usize,
    pub spec: InputStateSpec,
    h_class: f64,
}

/// Input for catalogue row `row` with system amplitudes `(a, b)`.
///
/// Rows 1, 2 and 5 mix `|0_n>` with the registries `|0_{n-1}1>`, `|1 0_{n-1}>`
/// and `|1_{n-1}0>`; row 3 mixes `|0_n>` and `|1_n>`; row 4 is maximally mixed;
/// row 6 is the pure superposition `(|0_n> + |1_n>)/sqrt 2`.
pub fn catalogue_zurek(row: usize, n: usize, a: f64, b: f64) -> Result<CatalogueEntry> {
    if n < 2 {
        return Err(Error::invalid("n", "the catalogue needs at least two environment qubits"));
    }
    let pair = |y: usize| EnvSpec::MixtureOfRegistries {
        terms: vec![WeightedRegistry { weight: 0.5, y: 0 }, WeightedRegistry { weight: 0.5, y }],
    };
    let e = match row {
        1 => pair(1),
        2 => pair(leading_one(n)),
        3 => pair(all_ones(n)),
        4 => EnvSpec::MaximallyMixed,
        5 => pair(all_ones(n) - 1),
        6 => {
            let h = C64::new(0.5f64.sqrt(), 0.0);
            EnvSpec::SuperpositionOfRegistries {
                terms: vec![AmplitudeRegistry { amp: h, y: 0 }, AmplitudeRegistry { amp: h, y: all_ones(n) }],
            }
        }
        _ => return Err(Error::invalid("row", format!("{row} is outside 1..=6"))),
    };
    let spec = InputStateSpec::qubit(n, a, b, e)?;
    Ok(CatalogueEntry { row, spec, h_class: shannon_entropy(&[a * a, b * b]) })
}

impl CatalogueEntry {
    pub fn n(&self) -> usize {
        self.spec.n
    }

    /// `H(S_class)` of the input amplitudes.
    pub fn h_class(&self) -> f64 {
        self.h_class
    }

    fn check(&self, l: usize) -> Result<f64> {
        if l == 0 || l > self.n() {
            return Err(Error::invalid("L", format!("{l} is outside 1..={}", self.n())));
        }
        Ok(if l == self.n() { 1.0 } else { 0.0 })
    }

    /// The closed forms exactly as tabulated, for right-to-left tracing.
    pub fn table_entropies(&self, l: usize) -> Result<ExpectedEntropies> {
        let d = self.check(l)?;
        let hc = self.h_class;
        let lf = l as f64;
        let (h_s, h_e, h_se) = match self.row {
            1 => (hc, (1.0 - d) * hc + d, hc + d),
            2 => {
                let h_se = (1.0 - d) * hc + 1.0;
                let h_e = if l == 1 { 1.0 } else { (1.0 - d) * hc + h_se };
                (hc, h_e, h_se)
            }
            3 => (hc, 1.0, (1.0 - d) * hc + 1.0),
            4 => (hc, lf, (1.0 - d) * hc + lf),
            5 => (hc, 1.0 + d * hc, 1.0 + (1.0 - d) * hc),
            6 => (0.0, 1.0 - d, 1.0 - d),
            _ => unreachable!(),
        };
        Ok(ExpectedEntropies { h_s, h_e, h_se })
    }

    /// Closed forms worked out from the output states, for right-to-left tracing.
    ///
    /// Differs from [`Self::table_entropies`] in rows 1 and 2 only.
    pub fn derived_entropies(&self, l: usize) -> Result<ExpectedEntropies> {
        let d = self.check(l)?;
        let hc = self.h_class;
        Ok(match self.row {
            1 => ExpectedEntropies { h_s: hc, h_e: hc + d, h_se: (1.0 - d) * hc + d },
            2 => {
                let h_e = if l == 1 { 1.0 } else { 1.0 + hc };
                ExpectedEntropies { h_s: hc, h_e, h_se: (1.0 - d) * hc + 1.0 }
            }
            _ => self.table_entropies(l)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{mutual_information, TraceOrder};
    use crate::channels::{zurek_evolve, ZurekAssignment};

    fn close(a: ExpectedEntropies, h_s: f64, h_e: f64, h_se: f64) -> bool {
        (a.h_s - h_s).abs() < 1e-9 && (a.h_e - h_e).abs() < 1e-9 && (a.h_se - h_se).abs() < 1e-9
    }

    #[test]
    fn derived_forms_match_evolution() {
        let (a, b) = (0.6, 0.8);
        for row in 1..=6 {
            for n in 3..=5 {
                let c = catalogue_zurek(row, n, a, b).unwrap();
                let rho = c.spec.density_default_cap().unwrap();
                let out = zurek_evolve(&rho, &ZurekAssignment::contiguous(rho.layout()).unwrap()).unwrap();
                for l in 1..=n {
                    let mi = mutual_information(&out, l, &TraceOrder::RightToLeft).unwrap();
                    let want = c.derived_entropies(l).unwrap();
                    assert!(close(want, mi.h_s, mi.h_e, mi.h_se), "row {row} n {n} L {l}: {mi:?} vs {want:?}");
                }
            }
        }
    }

    #[test]
    fn rows_three_to_six_agree_with_table() {
        for row in 3..=6 {
            let c = catalogue_zurek(row, 4, 0.6, 0.8).unwrap();
            for l in 1..=4 {
                assert_eq!(c.table_entropies(l).unwrap(), c.derived_entropies(l).unwrap());
            }
        }
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(catalogue_zurek(7, 4, 0.6, 0.8).is_err());
        assert!(catalogue_zurek(1, 4, 0.6, 0.8).unwrap().table_entropies(5).is_err());
    }
}
