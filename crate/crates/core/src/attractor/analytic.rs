//! Explicit generator lists for the maximal (Koenig) and minimal (strongly
//! connected) attractor spaces, orthonormalized in listed order.

use super::{basis_ket, dimension_formula, product_ket, AttractorBases, AttractorBasis, Lambda, Provenance, Regime, SymmetryStates};
use crate::channels::check_phi;
use crate::qstate::{Matrix, RegisterLayout};
use crate::{Error, Result, C64};

/// Explicit bases hold `O(4^(k+n))` dense operators; beyond this, use the structured projector.
pub const EXPLICIT_MAX_QUBITS: usize = 6;

const DROP_TOL: f64 = 1e-8;

/// Classical Gram-Schmidt with one re-orthogonalization pass.
///
/// Generators whose remainder falls below `1e-8` of their own norm are dropped.
pub fn gram_schmidt(generators: Vec<Matrix>) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = Vec::new();
    for mut v in generators {
        let norm0 = v.frobenius_norm();
        if norm0 == 0.0 {
            continue;
        }
        for _ in 0..2 {
            let coeffs: Vec<C64> = out.iter().map(|q| v.hs(q)).collect();
            for (q, c) in out.iter().zip(coeffs) {
                v.axpy(-c, q);
            }
        }
        let norm = v.frobenius_norm();
        if norm > DROP_TOL * norm0 {
            v.scale(C64::new(1.0 / norm, 0.0));
            out.push(v);
        }
    }
    out
}

fn check(k: usize, n: usize, phi: f64) -> Result<RegisterLayout> {
    check_phi(phi)?;
    if k == 0 || n < k {
        return Err(Error::Unsupported(format!(
            "explicit generators are listed for n >= k >= 1, got k = {k}, n = {n}"
        )));
    }
    if k + n > EXPLICIT_MAX_QUBITS {
        return Err(Error::TooManyQubits { qubits: k + n, cap: EXPLICIT_MAX_QUBITS });
    }
    RegisterLayout::new(k, n)
}

fn s_op(x: usize, w: usize, k: usize) -> Matrix {
    Matrix::outer(&basis_ket(x, k), &basis_ket(w, k))
}

fn e_outer(a: &[C64], b: &[C64]) -> Matrix {
    Matrix::outer(a, b)
}

/// `op_1 (x) ... (x) op_n` for single-qubit operators.
fn string(ops: impl Iterator<Item = Matrix>) -> Matrix {
    ops.fold(Matrix::identity(1), |acc, o| acc.kron(&o))
}

fn finish(
    layout: RegisterLayout,
    regime: Regime,
    provenance: Provenance,
    plus: Vec<Matrix>,
    minus: Vec<Matrix>,
) -> Result<AttractorBases> {
    let (want_p, want_m) = dimension_formula(layout.k(), layout.n(), regime)?;
    let plus = gram_schmidt(plus);
    if plus.len() != want_p {
        return Err(Error::CountMismatch { lambda: 1, got: plus.len(), expected: want_p });
    }
    let minus = gram_schmidt(minus);
    if minus.len() != want_m {
        return Err(Error::CountMismatch { lambda: -1, got: minus.len(), expected: want_m });
    }
    AttractorBases::new(
        layout,
        AttractorBasis { lambda: Lambda::Plus, states: plus, provenance },
        AttractorBasis { lambda: Lambda::Minus, states: minus, provenance },
    )
}

/// Koenig attractor space from the listed generators.
///
/// Ranges: `x != 0` for the `|0><x|` and `|x><0|` families and the `A` strings,
/// `x != w`, both nonzero, for the `|s1><s1|` family. In the `lambda = -1` list the
/// `|x><x| (x) |s2><s2|` family is taken as `|x><not x|`, since the literal
/// diagonal form belongs to `lambda = +1`.
pub fn analytic_basis_max(k: usize, n: usize, phi: f64) -> Result<AttractorBases> {
    let layout = check(k, n, phi)?;
    let sym = SymmetryStates::from_phi(phi);
    let (s1, s2) = (sym.s1_n(n), sym.s2_n(n));
    let (pk, pn) = (1usize << k, 1usize << n);
    let ones = pk - 1;
    let pi1 = e_outer(&s1, &s1);
    let pi2 = e_outer(&s2, &s2);
    let a0 = Matrix::outer(&product_ket(sym.s1(), 1), &product_ket(sym.s1(), 1));
    let a1 = Matrix::identity(2).sub(&a0);
    let (sn, cs) = phi.sin_cos();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let b0 = Matrix::from_real_rows(&[&[0.0, r], &[-r, 0.0]]);
    let b1 = Matrix::from_real_rows(&[&[-sn * r, cs * r], &[cs * r, sn * r]]);

    let mut plus = Vec::new();
    for x in 1..pk {
        for y in 0..pn {
            plus.push(s_op(0, x, k).kron(&e_outer(&basis_ket(y, n), &s1)));
        }
    }
    for x in 1..pk {
        for y in 0..pn {
            plus.push(s_op(x, 0, k).kron(&e_outer(&s1, &basis_ket(y, n))));
        }
    }
    for y in 0..pn {
        for z in 0..pn {
            plus.push(s_op(0, 0, k).kron(&e_outer(&basis_ket(y, n), &basis_ket(z, n))));
        }
    }
    for x in 1..pk {
        for g in 0..pn {
            let e = string((0..n).map(|i| if (g >> (n - 1 - i)) & 1 == 0 { a0.clone() } else { a1.clone() }));
            plus.push(s_op(x, x, k).kron(&e));
        }
    }
    for x in 1..pk {
        for w in 1..pk {
            if x != w {
                plus.push(s_op(x, w, k).kron(&pi1));
            }
        }
    }

    let mut minus = Vec::new();
    for y in 0..pn {
        minus.push(s_op(0, ones, k).kron(&e_outer(&basis_ket(y, n), &s2)));
    }
    for y in 0..pn {
        minus.push(s_op(ones, 0, k).kron(&e_outer(&s2, &basis_ket(y, n))));
    }
    for g in 0..pn {
        let e = string((0..n).map(|i| if (g >> (n - 1 - i)) & 1 == 0 { b0.clone() } else { b1.clone() }));
        minus.push(s_op(ones, ones, k).kron(&e));
    }
    for x in 1..ones {
        minus.push(s_op(x, ones ^ x, k).kron(&pi2));
    }
    for x in 1..ones {
        minus.push(s_op(x, ones, k).kron(&e_outer(&s1, &s2)));
    }
    for x in 1..ones {
        minus.push(s_op(ones, x, k).kron(&e_outer(&s2, &s1)));
    }
    finish(layout, Regime::MaxKoenig, Provenance::AnalyticMax, plus, minus)
}

/// Minimal attractor space from the listed (not yet orthonormal) generators.
///
/// At `n = k = 1` the single `lambda = -1` state is the one stated for `phi = pi/2`.
pub fn analytic_basis_min(k: usize, n: usize, phi: f64) -> Result<AttractorBases> {
    let layout = check(k, n, phi)?;
    let sym = SymmetryStates::from_phi(phi);
    let s1 = sym.s1_n(n);
    let z = basis_ket(0, n);
    let pk = 1usize << k;
    let pi1 = e_outer(&s1, &s1);

    let mut plus = Vec::new();
    for x in 0..pk {
        plus.push(s_op(x, x, k).kron(&Matrix::identity(1 << n)));
    }
    for x in 0..pk {
        plus.push(s_op(0, x, k).kron(&e_outer(&z, &s1)));
    }
    for x in 0..pk {
        plus.push(s_op(x, 0, k).kron(&e_outer(&s1, &z)));
    }
    for x in 0..pk {
        for y in 0..pk {
            plus.push(s_op(x, y, k).kron(&pi1));
        }
    }
    plus.push(s_op(0, 0, k).kron(&e_outer(&z, &z)));

    let mut minus = Vec::new();
    if k == 1 && n == 1 {
        let mut x = Matrix::zeros(4, 4);
        let c = 1.0 / 6f64.sqrt();
        for &(i, j, v) in &[(1, 3, c), (2, 3, -c), (3, 1, -c), (3, 2, c), (1, 2, -c), (2, 1, c)] {
            x.set(i, j, C64::new(v, 0.0));
        }
        minus.push(x);
    }
    finish(layout, Regime::MinStrong, Provenance::AnalyticMin, plus, minus)
}
