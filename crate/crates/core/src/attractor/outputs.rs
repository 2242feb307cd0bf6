//! Closed-form `N -> infinity` outputs for the catalogued inputs at `phi = pi/2`,
//! transcribed term by term.

use std::f64::consts::FRAC_1_SQRT_2;

use super::{basis_ket, product_ket, Parity, Regime};
use crate::analysis::{all_ones, leading_one, EnvSpec, InputStateSpec};
use crate::qstate::{DensityMatrix, Matrix, DEFAULT_MAX_QUBITS};
use crate::{Error, Result, C64};

const MATCH_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnalyticCase {
    /// Koenig, registry `|z>`, any `k`.
    RegistryMax { z: usize },
    /// Koenig, `k = 1`, `(|0_n><0_n| + |1_n><1_n|)/2`.
    PairMax,
    /// Koenig, `k = 1`, maximally mixed environment.
    MixedMax,
    /// Koenig, `k = 1`, `(|0_n><0_n| + |10_{n-1}><10_{n-1}|)/2`.
    LeadingPairMax,
    /// Koenig, `k = 1`, symmetry-entangled input at `c1 = 1/sqrt 2`.
    EntangledMax,
    /// Strongly connected, registry `|0_n>`, any `k`.
    ZeroMin,
    /// Strongly connected, registry `|1_n>`, any `k`.
    OnesMin,
    /// Strongly connected, `k = 1`, `(|0_n><0_n| + |1_n><1_n|)/2`.
    PairMin,
    /// Strongly connected, maximally mixed environment, any `k`.
    MixedMin,
    /// Strongly connected, `k = 1`, symmetry-entangled input at `c1 = 1/sqrt 2`.
    EntangledMin,
}

fn is_pair(spec: &EnvSpec, a: usize, b: usize) -> bool {
    match spec {
        EnvSpec::MixtureOfRegistries { terms } if terms.len() == 2 => {
            let ys = [terms[0].y, terms[1].y];
            let half = terms.iter().all(|t| (t.weight - 0.5).abs() < MATCH_TOL);
            half && (ys == [a, b] || ys == [b, a])
        }
        _ => false,
    }
}

impl AnalyticCase {
    pub fn classify(input: &InputStateSpec, regime: Regime) -> Result<Self> {
        input.validate()?;
        let (k, n) = (input.k, input.n);
        let e = &input.e_spec;
        let ones = all_ones(n);
        let entangled = matches!(e, EnvSpec::SymmetryEntangled { c1 } if (c1 - FRAC_1_SQRT_2).abs() < MATCH_TOL);
        let case = match regime {
            Regime::MaxKoenig => match e {
                EnvSpec::Registry { y } => Some(AnalyticCase::RegistryMax { z: *y }),
                EnvSpec::MaximallyMixed if k == 1 => Some(AnalyticCase::MixedMax),
                _ if k == 1 && is_pair(e, 0, ones) => Some(AnalyticCase::PairMax),
                _ if k == 1 && n >= 2 && is_pair(e, 0, leading_one(n)) => Some(AnalyticCase::LeadingPairMax),
                _ if entangled => Some(AnalyticCase::EntangledMax),
                _ => None,
            },
            Regime::MinStrong => match e {
                EnvSpec::Registry { y: 0 } => Some(AnalyticCase::ZeroMin),
                EnvSpec::Registry { y } if *y == ones => Some(AnalyticCase::OnesMin),
                EnvSpec::MaximallyMixed => Some(AnalyticCase::MixedMin),
                _ if k == 1 && is_pair(e, 0, ones) => Some(AnalyticCase::PairMin),
                _ if entangled => Some(AnalyticCase::EntangledMin),
                _ => None,
            },
        };
        case.ok_or_else(|| Error::Unsupported(format!("no closed-form output for this input in the {regime:?} regime")))
    }
}

/// Accumulates `coef |x><w| (x) E` terms.
struct Builder {
    k: usize,
    n: usize,
    m: Matrix,
}

impl Builder {
    fn new(k: usize, n: usize) -> Self {
        Builder { k, n, m: Matrix::zeros(1 << (k + n), 1 << (k + n)) }
    }

    fn add(&mut self, coef: C64, x: usize, w: usize, e: &Matrix) {
        if coef == C64::new(0.0, 0.0) {
            return;
        }
        let de = 1usize << self.n;
        for a in 0..de {
            for b in 0..de {
                let v = e.get(a, b);
                if v != C64::new(0.0, 0.0) {
                    self.m.add_at(x * de + a, w * de + b, coef * v);
                }
            }
        }
    }

    /// `coef |x><w| (x) E + h.c.`
    fn add_hc(&mut self, coef: C64, x: usize, w: usize, e: &Matrix) {
        self.add(coef, x, w, e);
        self.add(coef.conj(), w, x, &e.adjoint());
    }

    fn add_pure(&mut self, psi: &[C64]) {
        debug_assert_eq!(psi.len(), 1 << (self.k + self.n));
        let p = Matrix::outer(psi, psi);
        self.m.axpy(C64::new(1.0, 0.0), &p);
    }
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// The stated output operator, without any validity check.
pub fn analytic_output_operator(input: &InputStateSpec, regime: Regime, parity: Parity) -> Result<Matrix> {
    let case = AnalyticCase::classify(input, regime)?;
    let sigma = match parity {
        Parity::Even => 1.0,
        Parity::Odd => -1.0,
        Parity::TimeAveraged => 0.0,
    };
    let (k, n) = (input.k, input.n);
    let a = &input.s_amplitudes;
    let nf = n as f64;
    let de = 1usize << n;
    let h = FRAC_1_SQRT_2;
    let s1 = product_ket([h, h], n);
    let s2 = product_ket([h, -h], n);
    let ket = |y: usize| basis_ket(y, n);
    let op = |u: &[C64], v: &[C64]| Matrix::outer(u, v);
    let id = Matrix::identity(de);
    let pi1 = op(&s1, &s1);
    let pi2 = op(&s2, &s2);
    let b1n = {
        let b1 = Matrix::from_real_rows(&[&[-h, 0.0], &[0.0, h]]);
        (0..n).fold(Matrix::identity(1), |acc, _| acc.kron(&b1))
    };
    let big_k = (1usize << k) - 1;
    let p_n = 2f64.powf(-nf);
    let p_half = 2f64.powf(-nf / 2.0);
    let mut b = Builder::new(k, n);

    match case {
        AnalyticCase::RegistryMax { z } => {
            let zk = ket(z);
            let m_sign = if z.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            let n_sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let mut psi = vec![C64::new(0.0, 0.0); 1 << (k + n)];
            for y in 0..de {
                psi[y] += a[0] * zk[y];
            }
            for m in 1..=big_k {
                for y in 0..de {
                    psi[m * de + y] += a[m] * p_half * s1[y];
                }
            }
            b.add_pure(&psi);
            let rest = id.sub(&pi1);
            for m in 1..=big_k {
                b.add(re(p_n * a[m].norm_sqr()), m, m, &rest);
            }
            b.add_hc(a[0] * a[big_k].conj() * (sigma * p_half * m_sign), 0, big_k, &op(&zk, &s2));
            for m in 1..big_k {
                b.add(re(sigma * p_n * a[m].norm_sqr()), m, m, &pi2);
            }
            b.add(re(sigma * n_sign * p_half * a[big_k].norm_sqr()), big_k, big_k, &b1n);
            for m in 1..big_k {
                b.add_hc(a[m] * a[big_k].conj() * (sigma * p_n), m, big_k, &op(&s1, &s2));
            }
        }
        AnalyticCase::PairMax | AnalyticCase::LeadingPairMax => {
            let leading = case == AnalyticCase::LeadingPairMax;
            let p = if leading { leading_one(n) } else { all_ones(n) };
            let s2_sign = if leading { -1.0 } else if n % 2 == 0 { 1.0 } else { -1.0 };
            let b_coef = if leading {
                if n % 2 == 1 { 1.0 } else { -1.0 }
            } else if n % 2 == 0 {
                2.0
            } else {
                0.0
            };
            let (z0, zp) = (ket(0), ket(p));
            let rho_e = op(&z0, &z0).add(&op(&zp, &zp)).scaled(re(0.5));
            b.add(re(a[0].norm_sqr()), 0, 0, &rho_e);
            b.add(re(a[1].norm_sqr() * p_n), 1, 1, &id);
            let c = a[0] * a[1].conj() * (p_half / 2.0);
            b.add_hc(c, 0, 1, &op(&z0, &s1).add(&op(&zp, &s1)));
            b.add_hc(c * sigma, 0, 1, &op(&z0, &s2).add(&op(&zp, &s2).scaled(re(s2_sign))));
            b.add(re(sigma * 0.5 * a[1].norm_sqr() * p_half * b_coef), 1, 1, &b1n);
        }
        AnalyticCase::MixedMax => {
            b.add(re(a[0].norm_sqr() * p_n), 0, 0, &id);
            b.add(re(a[1].norm_sqr() * p_n), 1, 1, &id);
            let e = pi1.add(&pi2.scaled(re(sigma))).scaled(re(p_n));
            b.add_hc(a[0] * a[1].conj(), 0, 1, &e);
        }
        AnalyticCase::EntangledMax => {
            let mut psi: Vec<C64> = s1.iter().map(|x| x * a[0]).collect();
            psi.extend(s2.iter().map(|x| x * a[1] * sigma));
            b.add_pure(&psi);
        }
        AnalyticCase::ZeroMin => {
            let mut psi = vec![C64::new(0.0, 0.0); 1 << (k + n)];
            psi[0] = a[0];
            for y in 1..=big_k {
                for j in 0..de {
                    psi[y * de + j] += a[y] * p_half * s1[j];
                }
            }
            b.add_pure(&psi);
            let rest = id.sub(&pi1);
            for y in 1..=big_k {
                b.add(re(p_n * a[y].norm_sqr()), y, y, &rest);
            }
        }
        AnalyticCase::OnesMin => {
            let c = 1.0 / (1.0 - p_n);
            let z0 = ket(0);
            let e = id.scaled(re(p_n)).sub(&op(&z0, &z0));
            b.add(re(a[0].norm_sqr() * p_n * c), 0, 0, &e);
            for y in 0..=big_k {
                b.add(re(p_n * a[y].norm_sqr()), y, y, &id);
            }
            let zs = op(&z0, &s1);
            for y in 1..=big_k {
                b.add_hc(a[0] * a[y].conj() * (-(p_n * p_half) * c), 0, y, &zs);
            }
            for y in 1..=big_k {
                b.add_hc(a[0] * a[y].conj() * (p_n * c), 0, y, &pi1);
                for x in 1..=big_k {
                    if x != y {
                        b.add(a[y] * a[x].conj() * p_n, y, x, &pi1);
                    }
                }
            }
        }
        AnalyticCase::PairMin => {
            let c = 1.0 / (1.0 - p_n);
            let q = 1.0 / (1.0 - 2.0 * p_n);
            let z0 = ket(0);
            let zz = op(&z0, &z0);
            let tail = 0.5 - 2.0 * p_n + 2.0 * p_n * p_n;
            let e00 = id.scaled(re(p_n / 2.0)).add(&zz.scaled(re(q * tail)));
            b.add(re(a[0].norm_sqr() * c), 0, 0, &e00);
            b.add(re(a[1].norm_sqr() * p_n), 1, 1, &id);
            let e01 = op(&z0, &s1).scaled(re(p_half * (1.0 - 2.0 * p_n))).add(&pi1.scaled(re(p_n)));
            b.add_hc(a[0] * a[1].conj() * (0.5 * q), 0, 1, &e01);
        }
        AnalyticCase::MixedMin => {
            for x in 0..=big_k {
                b.add(re(a[x].norm_sqr() * p_n), x, x, &id);
            }
            for x in 0..=big_k {
                for y in 0..=big_k {
                    if x != y {
                        b.add(a[x] * a[y].conj() * p_n, x, y, &pi1);
                    }
                }
            }
        }
        AnalyticCase::EntangledMin => {
            b.add(re(a[0].norm_sqr()), 0, 0, &pi1);
            b.add(re(a[1].norm_sqr() / (de as f64 - 1.0)), 1, 1, &id.sub(&pi1));
        }
    }
    Ok(b.m)
}

/// [`analytic_output_operator`] checked to be a density operator.
pub fn analytic_output_state(input: &InputStateSpec, regime: Regime, parity: Parity) -> Result<DensityMatrix> {
    let m = analytic_output_operator(input, regime, parity)?;
    DensityMatrix::new(input.layout(DEFAULT_MAX_QUBITS.max(input.k + input.n))?, m)
}
