//! Exact attractor projections that never build a basis.
//!
//! With every system qubit controlling every environment qubit, the
//! attractor equations decouple into system blocks `|x><w| (x) Y`. In the
//! Koenig case each block's constraint is a product of commuting single-qubit
//! projections on the environment; in the strongly connected case every block
//! is spanned by at most five fixed environment operators.

use super::{derived_max_dims, AttractorSpace, Parity, Regime, SymmetryStates};
use crate::channels::check_phi;
use crate::qstate::{Matrix, RegisterLayout};
use crate::{Error, Result, C64};

#[derive(Clone, Debug)]
pub struct StructuredSpace {
    layout: RegisterLayout,
    regime: Regime,
    phi: f64,
    sym: SymmetryStates,
}

type Superop = [[f64; 4]; 4];

/// Environment operator in a block of the minimal space.
#[derive(Clone, Copy, Debug, PartialEq)]
enum EOp {
    Identity,
    /// `|kets[a]><kets[b]|`.
    Outer(usize, usize),
}

const ZERO: usize = 0;
const S1: usize = 1;

impl StructuredSpace {
    pub fn new(layout: RegisterLayout, regime: Regime, phi: f64) -> Result<Self> {
        check_phi(phi)?;
        if layout.n() == 0 {
            return Err(Error::invalid("n", "at least one environment qubit is required"));
        }
        if regime == Regime::MinStrong && layout.n() < 2 {
            return Err(Error::Unsupported("a strongly connected environment needs n >= 2".into()));
        }
        Ok(StructuredSpace { layout, regime, phi, sym: SymmetryStates::from_phi(phi) })
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Bitwise patterns `(x_i, w_i)` present across the system qubits: `[00, 10, 01, 11]`.
    fn patterns(&self, x: usize, w: usize) -> [bool; 4] {
        let mut p = [false; 4];
        for i in 0..self.layout.k() {
            let (a, b) = ((x >> i) & 1, (w >> i) & 1);
            p[a + 2 * b] = true;
        }
        p
    }

    /// Single-qubit superoperator on row-major `2 x 2` blocks, or `None` if the block vanishes.
    fn block_superop(&self, x: usize, w: usize, lambda: f64) -> Option<Superop> {
        let [p00, p10, p01, p11] = self.patterns(x, w);
        if lambda < 0.0 && p00 {
            return None;
        }
        let s = if lambda > 0.0 { self.sym.s1() } else { self.sym.s2() };
        let proj = [[s[0] * s[0], s[0] * s[1]], [s[1] * s[0], s[1] * s[1]]];
        let (sn, cs) = self.phi.sin_cos();
        let cs = if self.phi == std::f64::consts::FRAC_PI_2 { 0.0 } else { cs };
        let u = [[cs, sn], [sn, -cs]];
        let mul = |a: [[f64; 2]; 2], b: [[f64; 2]; 2]| {
            let mut c = [[0.0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
                }
            }
            c
        };
        let mut m = [[0.0; 4]; 4];
        for col in 0..4 {
            let mut y = [[0.0; 2]; 2];
            y[col / 2][col % 2] = 1.0;
            if p10 {
                y = mul(proj, y);
            }
            if p01 {
                y = mul(y, proj);
            }
            if p11 {
                let t = mul(mul(u, y), u);
                for i in 0..2 {
                    for j in 0..2 {
                        y[i][j] = 0.5 * (y[i][j] + lambda * t[i][j]);
                    }
                }
            }
            for row in 0..4 {
                m[row][col] = y[row / 2][row % 2];
            }
        }
        Some(m)
    }

    fn apply_superop(&self, y: &mut [C64], m: &Superop) {
        let n = self.layout.n();
        let de = 1usize << n;
        for j in 0..n {
            let bit = 1usize << (n - 1 - j);
            for a in (0..de).filter(|a| a & bit == 0) {
                for b in (0..de).filter(|b| b & bit == 0) {
                    let idx = [a * de + b, a * de + (b | bit), (a | bit) * de + b, (a | bit) * de + (b | bit)];
                    let v = idx.map(|i| y[i]);
                    for (r, &i) in idx.iter().enumerate() {
                        y[i] = (0..4).map(|c| v[c] * m[r][c]).sum();
                    }
                }
            }
        }
    }

    fn block(&self, x: &Matrix, s: usize, t: usize) -> Vec<C64> {
        let de = 1usize << self.layout.n();
        let mut y = Vec::with_capacity(de * de);
        for a in 0..de {
            let row = x.row((s * de) + a);
            y.extend_from_slice(&row[t * de..(t + 1) * de]);
        }
        y
    }

    fn add_block(&self, out: &mut Matrix, s: usize, t: usize, y: &[C64], weight: f64) {
        let de = 1usize << self.layout.n();
        for a in 0..de {
            for b in 0..de {
                out.add_at(s * de + a, t * de + b, y[a * de + b] * weight);
            }
        }
    }

    fn project_max(&self, x: &Matrix, parity: Parity) -> Matrix {
        let pk = 1usize << self.layout.k();
        let d = self.layout.dim();
        let mut out = Matrix::zeros(d, d);
        for s in 0..pk {
            for t in 0..pk {
                for (lambda, weight) in [(1.0, 1.0), (-1.0, parity.minus_weight())] {
                    if weight == 0.0 {
                        continue;
                    }
                    if let Some(m) = self.block_superop(s, t, lambda) {
                        let mut y = self.block(x, s, t);
                        self.apply_superop(&mut y, &m);
                        self.add_block(&mut out, s, t, &y, weight);
                    }
                }
            }
        }
        out
    }

    fn min_ops(s: usize, t: usize) -> Vec<EOp> {
        use EOp::*;
        match (s, t) {
            (0, 0) => vec![Identity, Outer(ZERO, ZERO), Outer(ZERO, S1), Outer(S1, ZERO), Outer(S1, S1)],
            (0, _) => vec![Outer(ZERO, S1), Outer(S1, S1)],
            (_, 0) => vec![Outer(S1, ZERO), Outer(S1, S1)],
            _ if s == t => vec![Identity, Outer(S1, S1)],
            _ => vec![Outer(S1, S1)],
        }
    }

    fn project_min(&self, x: &Matrix) -> Matrix {
        let n = self.layout.n();
        let de = 1usize << n;
        let kets = [super::basis_ket(0, n), self.sym.s1_n(n)];
        let dot = |a: &[C64], b: &[C64]| -> C64 { a.iter().zip(b).map(|(p, q)| p.conj() * q).sum() };
        let ov = [[dot(&kets[0], &kets[0]), dot(&kets[0], &kets[1])], [dot(&kets[1], &kets[0]), dot(&kets[1], &kets[1])]];
        // <A, B> = Tr A B^dagger
        let inner = |a: EOp, b: EOp| -> C64 {
            match (a, b) {
                (EOp::Identity, EOp::Identity) => C64::new(de as f64, 0.0),
                (EOp::Identity, EOp::Outer(p, q)) => ov[p][q],
                (EOp::Outer(p, q), EOp::Identity) => ov[q][p],
                (EOp::Outer(p, q), EOp::Outer(r, s)) => ov[q][s] * ov[r][p],
            }
        };
        let pk = 1usize << self.layout.k();
        let d = self.layout.dim();
        let mut out = Matrix::zeros(d, d);
        for s in 0..pk {
            for t in 0..pk {
                let ops = Self::min_ops(s, t);
                // Orthonormal combinations q_m = sum_i coef[m][i] ops[i].
                let mut coef: Vec<Vec<C64>> = Vec::new();
                for i in 0..ops.len() {
                    let mut c = vec![C64::new(0.0, 0.0); ops.len()];
                    c[i] = C64::new(1.0, 0.0);
                    let ip = |u: &[C64], v: &[C64]| -> C64 {
                        let mut acc = C64::new(0.0, 0.0);
                        for (a, &ua) in u.iter().enumerate() {
                            for (b, &vb) in v.iter().enumerate() {
                                acc += ua * vb.conj() * inner(ops[a], ops[b]);
                            }
                        }
                        acc
                    };
                    for _ in 0..2 {
                        let proj: Vec<C64> = coef.iter().map(|q| ip(&c, q)).collect();
                        for (q, p) in coef.iter().zip(proj) {
                            for (ci, qi) in c.iter_mut().zip(q) {
                                *ci -= p * qi;
                            }
                        }
                    }
                    let norm = ip(&c, &c).re.sqrt();
                    if norm > 1e-10 {
                        c.iter_mut().for_each(|z| *z /= norm);
                        coef.push(c);
                    }
                }
                let y = self.block(x, s, t);
                let r: Vec<C64> = ops
                    .iter()
                    .map(|&op| match op {
                        EOp::Identity => (0..de).map(|a| y[a * de + a]).sum(),
                        EOp::Outer(p, q) => {
                            let (ka, kb) = (&kets[p], &kets[q]);
                            let mut acc = C64::new(0.0, 0.0);
                            for a in 0..de {
                                if ka[a].norm_sqr() == 0.0 {
                                    continue;
                                }
                                let yb: C64 = (0..de).map(|b| y[a * de + b] * kb[b]).sum();
                                acc += ka[a].conj() * yb;
                            }
                            acc
                        }
                    })
                    .collect();
                let mut c = vec![C64::new(0.0, 0.0); ops.len()];
                for q in &coef {
                    let amp: C64 = q.iter().zip(&r).map(|(qi, ri)| qi.conj() * ri).sum();
                    for (ci, qi) in c.iter_mut().zip(q) {
                        *ci += amp * qi;
                    }
                }
                for (op, ci) in ops.iter().zip(c) {
                    match *op {
                        EOp::Identity => {
                            for a in 0..de {
                                out.add_at(s * de + a, t * de + a, ci);
                            }
                        }
                        EOp::Outer(p, q) => {
                            for a in 0..de {
                                if kets[p][a].norm_sqr() == 0.0 {
                                    continue;
                                }
                                for b in 0..de {
                                    out.add_at(s * de + a, t * de + b, ci * kets[p][a] * kets[q][b].conj());
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-by-block rank count; equals [`derived_max_dims`] in the Koenig case.
    pub fn counted_dims(&self) -> (usize, usize) {
        let pk = 1usize << self.layout.k();
        let n = self.layout.n() as u32;
        match self.regime {
            Regime::MaxKoenig => {
                let mut dims = (0, 0);
                for s in 0..pk {
                    for t in 0..pk {
                        for (lambda, slot) in [(1.0, &mut dims.0), (-1.0, &mut dims.1)] {
                            if let Some(m) = self.block_superop(s, t, lambda) {
                                let rank = (0..4).map(|i| m[i][i]).sum::<f64>().round() as usize;
                                *slot += rank.pow(n);
                            }
                        }
                    }
                }
                dims
            }
            Regime::MinStrong => {
                let total = (0..pk).flat_map(|s| (0..pk).map(move |t| Self::min_ops(s, t).len())).sum();
                (total, 0)
            }
        }
    }
}

impl AttractorSpace for StructuredSpace {
    fn layout(&self) -> RegisterLayout {
        self.layout
    }

    fn label(&self) -> &'static str {
        match self.regime {
            Regime::MaxKoenig => "max_koenig",
            Regime::MinStrong => "min_strong",
        }
    }

    fn dims(&self) -> (usize, usize) {
        match self.regime {
            Regime::MaxKoenig => derived_max_dims(self.layout.k(), self.layout.n()).unwrap_or_else(|_| self.counted_dims()),
            Regime::MinStrong => self.counted_dims(),
        }
    }

    fn project_operator(&self, x: &Matrix, parity: Parity) -> Result<Matrix> {
        let d = self.layout.dim();
        if x.rows() != d || x.cols() != d {
            return Err(Error::DimensionMismatch("operator and attractor register differ".into()));
        }
        Ok(match self.regime {
            Regime::MaxKoenig => self.project_max(x, parity),
            Regime::MinStrong => self.project_min(x),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attractor::numeric_attractor_basis;
    use crate::digraph::InteractionDigraph;
    use std::f64::consts::FRAC_PI_2;

    fn random_operator(d: usize, seed: u64) -> Matrix {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        Matrix::from_fn(d, d, |_, _| C64::new(next(), next()))
    }

    #[test]
    fn max_counts_match_formula() {
        for k in 1..4 {
            for n in 1..5 {
                let s = StructuredSpace::new(RegisterLayout::new(k, n).unwrap(), Regime::MaxKoenig, 0.7).unwrap();
                assert_eq!(s.counted_dims(), derived_max_dims(k, n).unwrap());
            }
        }
    }

    #[test]
    fn max_matches_numeric_projection() {
        for &(k, n) in &[(1, 1), (1, 3), (2, 2), (2, 1), (3, 1)] {
            for &phi in &[FRAC_PI_2, 0.8] {
                let l = RegisterLayout::new(k, n).unwrap();
                let g = InteractionDigraph::koenig(l).unwrap();
                let num = numeric_attractor_basis(&g, phi).unwrap().bases;
                let s = StructuredSpace::new(l, Regime::MaxKoenig, phi).unwrap();
                assert_eq!(s.dims(), num.dims());
                let x = random_operator(l.dim(), 7);
                for parity in [Parity::Even, Parity::Odd, Parity::TimeAveraged] {
                    let a = s.project_operator(&x, parity).unwrap();
                    let b = num.project_operator(&x, parity).unwrap();
                    assert!(a.max_abs_diff(&b) < 1e-10, "{k} {n} {phi} {parity:?}");
                }
            }
        }
    }

    #[test]
    fn min_matches_numeric_projection() {
        for &(k, n) in &[(1, 2), (1, 3), (2, 2), (3, 2)] {
            for &phi in &[FRAC_PI_2, 2.0] {
                let l = RegisterLayout::new(k, n).unwrap();
                let g = InteractionDigraph::complete_env(l).unwrap();
                let num = numeric_attractor_basis(&g, phi).unwrap().bases;
                let s = StructuredSpace::new(l, Regime::MinStrong, phi).unwrap();
                assert_eq!(s.dims(), num.dims());
                let x = random_operator(l.dim(), 11);
                let a = s.project_operator(&x, Parity::Even).unwrap();
                let b = num.project_operator(&x, Parity::Even).unwrap();
                assert!(a.max_abs_diff(&b) < 1e-10, "{k} {n} {phi}");
            }
        }
    }

    #[test]
    fn min_needs_two_env_qubits() {
        let l = RegisterLayout::new(1, 1).unwrap();
        assert!(StructuredSpace::new(l, Regime::MinStrong, FRAC_PI_2).is_err());
    }
}
