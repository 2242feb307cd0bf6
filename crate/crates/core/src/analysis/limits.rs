use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::input::{all_ones, EnvSpec, InputStateSpec, WeightedRegistry};
use super::pip::{mutual_information, TraceOrder, H_CLASS_FLOOR};
use crate::attractor::{asymptotic_project, Parity, Regime, StructuredSpace};
use crate::qstate::{partial_trace, pointer_shannon_entropy, trace_distance, DensityMatrix, Matrix};
use crate::{Error, Result, C64};

/// The large-`n` forms of the asymptotic output, all for equal system amplitudes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitCase {
    /// Koenig, registry `|0_n>`, any `k`:
    /// `|a_0|^2 |0_k><0_k| (x) |0_n><0_n| + sum_{m>0} |a_m|^2 |m><m| (x) 2^-n I`.
    RegistryZeroMax,
    /// Koenig, `k = 1`, `(|0_n><0_n| + |1_n><1_n|)/2`:
    /// `|a_0|^2 |0><0| (x) rho_E + |a_1|^2 |1><1| (x) 2^-n I`.
    PairMax,
    /// Koenig, `k = 1`, maximally mixed environment: `rho_S,diag (x) 2^-n I`.
    MixedMax,
    /// Strongly connected, registry `|1_n>`, any `k`: `2^-n sum_m |a_m|^2 |m><m| (x) I`.
    OnesMin,
    /// Strongly connected, `k = 1`, `(|0_n><0_n| + |1_n><1_n|)/2`:
    /// `|a_0|^2 |0><0| (x) (2^-(n+1) I + |0_n><0_n|/2) + |a_1|^2 |1><1| (x) 2^-n I`.
    PairMin,
}

impl LimitCase {
    pub const ALL: [LimitCase; 5] =
        [LimitCase::RegistryZeroMax, LimitCase::PairMax, LimitCase::MixedMax, LimitCase::OnesMin, LimitCase::PairMin];

    pub fn regime(self) -> Regime {
        match self {
            LimitCase::RegistryZeroMax | LimitCase::PairMax | LimitCase::MixedMax => Regime::MaxKoenig,
            LimitCase::OnesMin | LimitCase::PairMin => Regime::MinStrong,
        }
    }

    fn single_qubit_only(self) -> bool {
        matches!(self, LimitCase::PairMax | LimitCase::MixedMax | LimitCase::PairMin)
    }

    /// The input state, equal system amplitudes.
    pub fn input(self, k: usize, n: usize) -> Result<InputStateSpec> {
        if self.single_qubit_only() && k != 1 {
            return Err(Error::Unsupported(format!("{self:?} is stated for k = 1 only")));
        }
        let pair = || EnvSpec::MixtureOfRegistries {
            terms: vec![WeightedRegistry { weight: 0.5, y: 0 }, WeightedRegistry { weight: 0.5, y: all_ones(n) }],
        };
        let e = match self {
            LimitCase::RegistryZeroMax => EnvSpec::Registry { y: 0 },
            LimitCase::PairMax | LimitCase::PairMin => pair(),
            LimitCase::MixedMax => EnvSpec::MaximallyMixed,
            LimitCase::OnesMin => EnvSpec::Registry { y: all_ones(n) },
        };
        InputStateSpec::uniform(k, n, e)
    }
}

/// The stated limit form at finite `n`.
pub fn limit_form(case: LimitCase, input: &InputStateSpec) -> Result<Matrix> {
    let (k, n) = (input.k, input.n);
    let (pk, pn) = (1usize << k, 1usize << n);
    let w = |m: usize| input.s_amplitudes[m].norm_sqr();
    let flat = 1.0 / pn as f64;
    let mut diag = vec![0.0; pk * pn];
    let mut block = |m: usize, f: &dyn Fn(usize) -> f64| {
        for y in 0..pn {
            diag[m * pn + y] = w(m) * f(y);
        }
    };
    match case {
        LimitCase::RegistryZeroMax => {
            block(0, &|y| if y == 0 { 1.0 } else { 0.0 });
            for m in 1..pk {
                block(m, &|_| flat);
            }
        }
        LimitCase::PairMax => {
            let ones = all_ones(n);
            block(0, &|y| if y == 0 || y == ones { 0.5 } else { 0.0 });
            block(1, &|_| flat);
        }
        LimitCase::MixedMax => {
            block(0, &|_| flat);
            block(1, &|_| flat);
        }
        LimitCase::OnesMin => {
            for m in 0..pk {
                block(m, &|_| flat);
            }
        }
        LimitCase::PairMin => {
            block(0, &|y| 0.5 * flat + if y == 0 { 0.5 } else { 0.0 });
            block(1, &|_| flat);
        }
    }
    Ok(Matrix::diagonal(&diag.into_iter().map(|x| C64::new(x, 0.0)).collect::<Vec<_>>()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub case: LimitCase,
    pub k: usize,
    pub n: usize,
    pub parity: Parity,
    /// Trace distance between the exact asymptotic output and the limit form.
    pub trace_distance: f64,
    /// `I(S : E_n) / H(S_class)` of the exact asymptotic output.
    pub ratio_full: f64,
    /// The same ratio for the limit form.
    pub ratio_limit: f64,
}

fn ratio_at_full_fragment(rho: &DensityMatrix) -> Result<f64> {
    let n = rho.layout().n();
    let s: Vec<usize> = (0..rho.layout().k()).collect();
    let h_class = pointer_shannon_entropy(&partial_trace(rho, &s)?);
    if h_class <= H_CLASS_FLOOR {
        return Err(Error::invalid("input", "no classical entropy in the system"));
    }
    Ok(mutual_information(rho, n, &TraceOrder::RightToLeft)?.i / h_class)
}

fn exact_output(case: LimitCase, input: &InputStateSpec, parity: Parity) -> Result<DensityMatrix> {
    let rho = input.density(input.k + input.n)?;
    let space = StructuredSpace::new(rho.layout(), case.regime(), FRAC_PI_2)?;
    asymptotic_project(&rho, &space, parity)
}

/// `I(S : E_n) / H(S_class)` of the exact asymptotic output for the case's input.
pub fn asymptotic_ratio(case: LimitCase, k: usize, n: usize, parity: Parity) -> Result<f64> {
    ratio_at_full_fragment(&exact_output(case, &case.input(k, n)?, parity)?)
}

/// Compares the exact asymptotic output (projection onto the attractor space
/// at `phi = pi/2`) with the stated limit form.
pub fn limit_form_check(case: LimitCase, k: usize, n: usize, parity: Parity) -> Result<LimitReport> {
    let input = case.input(k, n)?;
    let full = exact_output(case, &input, parity)?;
    let limit = DensityMatrix::new(full.layout(), limit_form(case, &input)?)?;
    Ok(LimitReport {
        case,
        k,
        n,
        parity,
        trace_distance: trace_distance(full.matrix(), limit.matrix())?,
        ratio_full: ratio_at_full_fragment(&full)?,
        ratio_limit: ratio_at_full_fragment(&limit)?,
    })
}
