use faer::complex_native::c64;
use faer::{Mat, Side};
use num_complex::Complex64 as C64;

use crate::{Error, Result};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let d = values.len();
        let mut m = Self::zeros(d, d);
        for (i, v) in values.iter().enumerate() {
            m.data[i * d + i] = *v;
        }
        m
    }

    /// `|a><b|`.
    pub fn outer(a: &[C64], b: &[C64]) -> Self {
        Self::from_fn(a.len(), b.len(), |i, j| a[i] * b[j].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn diag(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn kron(&self, other: &Matrix) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        Self::from_fn(self.rows * r2, self.cols * c2, |i, j| {
            self.get(i / r2, j / c2) * other.get(i % r2, j % c2)
        })
    }

    pub fn scale(&mut self, s: C64) {
        for x in &mut self.data {
            *x *= s;
        }
    }

    pub fn scaled(&self, s: C64) -> Self {
        let mut m = self.clone();
        m.scale(s);
        m
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: C64, other: &Matrix) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x += s * y;
        }
    }

    pub fn sub(&self, other: &Matrix) -> Self {
        let mut m = self.clone();
        m.axpy(-ONE, other);
        m
    }

    pub fn add(&self, other: &Matrix) -> Self {
        let mut m = self.clone();
        m.axpy(ONE, other);
        m
    }

    pub fn matmul(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let p = self.to_faer() * other.to_faer();
        Self::from_faer(p.as_ref())
    }

    /// `(M + M^dagger) / 2`, in place.
    pub fn hermitize(&mut self) {
        let d = self.rows;
        for i in 0..d {
            let ii = i * d + i;
            self.data[ii] = C64::new(self.data[ii].re, 0.0);
            for j in (i + 1)..d {
                let a = self.data[i * d + j];
                let b = self.data[j * d + i];
                let h = (a + b.conj()) * 0.5;
                self.data[i * d + j] = h;
                self.data[j * d + i] = h.conj();
            }
        }
    }

    /// `max |M - M^dagger|`, elementwise.
    pub fn hermiticity_error(&self) -> f64 {
        let d = self.rows;
        let mut e: f64 = 0.0;
        for i in 0..d {
            for j in i..d {
                e = e.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        e
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.re.is_finite() && x.im.is_finite())
    }

    /// Hilbert-Schmidt inner product `Tr[self other^dagger]`, no shape check.
    pub fn hs(&self, other: &Matrix) -> C64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn to_faer(&self) -> Mat<c64> {
        Mat::from_fn(self.rows, self.cols, |i, j| {
            let z = self.get(i, j);
            c64::new(z.re, z.im)
        })
    }

    pub fn from_faer(m: faer::MatRef<'_, c64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| {
            let z = m.read(i, j);
            C64::new(z.re, z.im)
        })
    }

    /// Eigenvalues of the Hermitian part, ascending.
    ///
    /// Decouples into the connected components of the exact nonzero pattern
    /// before calling the dense solver; real blocks use the real solver.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        check_square(self)?;
        let mut h = self.clone();
        h.hermitize();
        let mut ev = Vec::with_capacity(self.rows);
        for block in h.blocks() {
            if block.len() == 1 {
                ev.push(h.get(block[0], block[0]).re);
                continue;
            }
            let at = |i: usize, j: usize| h.get(block[i], block[j]);
            let real = block.iter().all(|&i| block.iter().all(|&j| h.get(i, j).im == 0.0));
            if real {
                let sub = Mat::<f64>::from_fn(block.len(), block.len(), |i, j| at(i, j).re);
                ev.extend(sub.selfadjoint_eigenvalues(Side::Lower));
            } else {
                let sub = Matrix::from_fn(block.len(), block.len(), at);
                ev.extend(sub.to_faer().selfadjoint_eigenvalues(Side::Lower));
            }
        }
        if ev.iter().any(|x| !x.is_finite()) {
            return Err(Error::Decomposition { residual: f64::NAN });
        }
        ev.sort_by(|a, b| a.total_cmp(b));
        Ok(ev)
    }

    /// Index sets of the connected components of the nonzero pattern.
    fn blocks(&self) -> Vec<Vec<usize>> {
        let d = self.rows;
        let mut parent: Vec<usize> = (0..d).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..d {
            for j in 0..i {
                if self.get(i, j) != ZERO {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; d];
        for i in 0..d {
            let r = find(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(i);
        }
        out
    }

    /// Eigenpairs of the Hermitian part, ascending; eigenvectors are the columns.
    pub fn hermitian_eigen(&self) -> Result<(Vec<f64>, Matrix)> {
        check_square(self)?;
        let mut h = self.clone();
        h.hermitize();
        let evd = h.to_faer().selfadjoint_eigendecomposition(Side::Lower);
        let s = evd.s().column_vector();
        let u = evd.u();
        let d = self.rows;
        let mut order: Vec<usize> = (0..d).collect();
        let vals: Vec<f64> = (0..d).map(|i| s.read(i).re).collect();
        if vals.iter().any(|x| !x.is_finite()) {
            return Err(Error::Decomposition { residual: f64::NAN });
        }
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        let vecs = Matrix::from_fn(d, d, |i, j| {
            let z = u.read(i, order[j]);
            C64::new(z.re, z.im)
        });
        Ok((order.iter().map(|&i| vals[i]).collect(), vecs))
    }
}

fn check_square(m: &Matrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("{}x{} is not square", m.rows, m.cols)))
    }
}
