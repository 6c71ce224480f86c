//! Dense complex matrices and the handful of operations the structure
//! checks are built from.
//!
//! Composite indices always flatten with the first-listed index major, so a
//! pair `(i, j)` with `j` ranging over `dim_j` values maps to `i * dim_j + j`.
//! The same convention is used by [`kron`] and [`regroup`].

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Tolerances used by verifiers (`verify_tol`) and by exact-match style
/// comparisons (`compare_tol`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub verify_tol: f64,
    pub compare_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            verify_tol: 1e-10,
            compare_tol: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(verify_tol: f64, compare_tol: f64) -> Result<Self> {
        if !(verify_tol > 0.0 && verify_tol.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "verify tolerance must be positive, got {verify_tol}"
            )));
        }
        if !(compare_tol > 0.0 && compare_tol.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "compare tolerance must be positive, got {compare_tol}"
            )));
        }
        Ok(Self {
            verify_tol,
            compare_tol,
        })
    }

    /// Same tolerances with a different `verify_tol`.
    pub fn with_verify(self, verify_tol: f64) -> Result<Self> {
        Self::new(verify_tol, self.compare_tol)
    }
}

/// `exp(2πi·k/n)`, exact for multiples of a quarter turn.
pub fn root_of_unity(k: usize, n: usize) -> C64 {
    assert!(n > 0, "root of unity of order zero");
    let k = k % n;
    if (4 * k) % n == 0 {
        return match 4 * k / n {
            0 => ONE,
            1 => I,
            2 => -ONE,
            _ => -I,
        };
    }
    let theta = std::f64::consts::TAU * k as f64 / n as f64;
    C64::new(theta.cos(), theta.sin())
}

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    /// Builds a matrix from nested rows; all rows must share a length.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} entries, expected {cols}",
                r.len()
            )));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    /// Real-valued convenience constructor.
    pub fn from_real(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(C64::conj).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| s * z).collect(),
        }
    }

    pub fn matmul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Squared Frobenius norm.
    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(C64::norm_sqr).sum()
    }

    /// Largest entrywise deviation; `None` when the shapes differ.
    pub fn max_abs_diff(&self, other: &CMatrix) -> Option<f64> {
        if self.shape() != other.shape() {
            return None;
        }
        Some(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max),
        )
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    /// Panics on a shape mismatch; use [`CMatrix::matmul`] for a fallible product.
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>8.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Conjugate transpose.
pub fn dagger(a: &CMatrix) -> CMatrix {
    CMatrix::from_fn(a.cols, a.rows, |i, j| a[(j, i)].conj())
}

/// Kronecker product with the first factor major.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (rb, cb) = b.shape();
    CMatrix::from_fn(a.rows * rb, a.cols * cb, |r, c| {
        a[(r / rb, c / cb)] * b[(r % rb, c % cb)]
    })
}

/// Trace inner product `Tr(A†B)`.
pub fn trace_inner(a: &CMatrix, b: &CMatrix) -> Result<C64> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!(
            "trace inner product of {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(inner(a.as_slice(), b.as_slice()))
}

/// `Σ conj(x_k) y_k`.
pub(crate) fn inner(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Gram matrix `A†A`.
pub(crate) fn gram(a: &CMatrix) -> CMatrix {
    let n = a.cols;
    let mut g = CMatrix::zeros(n, n);
    for k in 0..a.rows {
        let row = a.row(k);
        for i in 0..n {
            let ci = row[i].conj();
            if ci == ZERO {
                continue;
            }
            for j in 0..n {
                g.data[i * n + j] += ci * row[j];
            }
        }
    }
    g
}

/// `‖M − λI‖_max` for square `M`.
pub(crate) fn deviation_from_scalar(m: &CMatrix, lambda: f64) -> f64 {
    let n = m.rows;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { lambda } else { 0.0 };
            worst = worst.max((m[(i, j)] - target).norm());
        }
    }
    worst
}

pub fn is_unitary(a: &CMatrix, tol: &Tolerance) -> bool {
    if !a.is_square() {
        return false;
    }
    deviation_from_scalar(&gram(a), 1.0) <= tol.verify_tol
        && deviation_from_scalar(&gram(&dagger(a)), 1.0) <= tol.verify_tol
}

/// Returns `λ > 0` with `A†A ≈ λI` (relative to `λ`), taking `λ` as the mean
/// diagonal of `A†A`.
pub fn unitary_scalar(a: &CMatrix, tol: &Tolerance) -> Option<f64> {
    let (lambda, residual) = scalar_fit(a)?;
    (residual <= tol.verify_tol * lambda).then_some(lambda)
}

/// Best-fit `λ` (mean diagonal of `A†A`) and the residual `‖A†A − λI‖_max`.
/// `None` for non-square input or a vanishing `λ`.
pub(crate) fn scalar_fit(a: &CMatrix) -> Option<(f64, f64)> {
    if !a.is_square() || a.rows == 0 {
        return None;
    }
    let g = gram(a);
    let lambda = g.trace().re / a.rows as f64;
    if !(lambda > f64::MIN_POSITIVE) {
        return None;
    }
    Some((lambda, deviation_from_scalar(&g, lambda)))
}

/// Cauchy–Schwarz equality test: `|⟨A,B⟩|² ≥ (1 − tol)‖A‖²‖B‖²`.
///
/// Zero matrices are proportional only to zero.
pub fn proportional(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    let na = a.norm_sqr();
    let nb = b.norm_sqr();
    match (na == 0.0, nb == 0.0) {
        (true, true) => true,
        (true, false) | (false, true) => false,
        _ => inner(a.as_slice(), b.as_slice()).norm_sqr() >= (1.0 - tol.verify_tol) * na * nb,
    }
}

/// `|⟨A,B⟩| / (‖A‖‖B‖)`, or `None` when either side is zero.
pub fn normalized_overlap(a: &CMatrix, b: &CMatrix) -> Option<f64> {
    let denom = (a.norm_sqr() * b.norm_sqr()).sqrt();
    (a.shape() == b.shape() && denom > 0.0).then(|| inner(a.as_slice(), b.as_slice()).norm() / denom)
}

pub fn commutes(a: &CMatrix, b: &CMatrix, tol: &Tolerance) -> Result<bool> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!(
            "commutator of {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let ab = a * b;
    let ba = b * a;
    let scale = 1f64.max(a.max_abs() * b.max_abs());
    Ok(ab.max_abs_diff(&ba).unwrap_or(f64::INFINITY) <= tol.verify_tol * scale)
}

/// Reinterprets the entries of `t` as a tensor with axes `axis_dims` (row
/// axes first, then column axes), permutes the axes so that output axis `k`
/// is input axis `perm[k]`, and reflattens to `out_shape`.
pub fn regroup(
    t: &CMatrix,
    axis_dims: &[usize],
    perm: &[usize],
    out_shape: (usize, usize),
) -> Result<CMatrix> {
    let total: usize = axis_dims.iter().product();
    if total != t.rows * t.cols || out_shape.0 * out_shape.1 != total {
        return Err(Error::DimensionMismatch(format!(
            "axes {axis_dims:?} ({total} entries) vs input {}x{} and output {}x{}",
            t.rows, t.cols, out_shape.0, out_shape.1
        )));
    }
    let rank = axis_dims.len();
    let mut seen = vec![false; rank];
    if perm.len() != rank || perm.iter().any(|&p| p >= rank || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::InvalidInput(format!(
            "{perm:?} is not a permutation of {rank} axes"
        )));
    }

    // Input strides, row-major.
    let mut in_strides = vec![1usize; rank];
    for k in (0..rank.saturating_sub(1)).rev() {
        in_strides[k] = in_strides[k + 1] * axis_dims[k + 1];
    }
    let out_dims: Vec<usize> = perm.iter().map(|&p| axis_dims[p]).collect();
    let gather: Vec<usize> = perm.iter().map(|&p| in_strides[p]).collect();

    let src = t.as_slice();
    let mut data = Vec::with_capacity(total);
    let mut counter = vec![0usize; rank];
    let mut offset = 0usize;
    for _ in 0..total {
        data.push(src[offset]);
        // Odometer increment over the output axes.
        for k in (0..rank).rev() {
            counter[k] += 1;
            offset += gather[k];
            if counter[k] < out_dims[k] {
                break;
            }
            offset -= gather[k] * out_dims[k];
            counter[k] = 0;
        }
    }
    CMatrix::new(out_shape.0, out_shape.1, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn f2() -> CMatrix {
        CMatrix::from_real(&[&[1.0, 1.0], &[1.0, -1.0]]).unwrap()
    }

    fn sigma_x() -> CMatrix {
        CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    fn sigma_z() -> CMatrix {
        CMatrix::from_real(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap()
    }

    #[test]
    fn dagger_by_hand() {
        let a = CMatrix::from_rows(&[vec![ONE, I], vec![ZERO, ONE]]).unwrap();
        let expected = CMatrix::from_rows(&[vec![ONE, ZERO], vec![-I, ONE]]).unwrap();
        assert_eq!(dagger(&a), expected);
        assert_eq!(dagger(&CMatrix::identity(3)), CMatrix::identity(3));
    }

    #[test]
    fn kron_of_f2_with_itself() {
        let expected = CMatrix::from_real(&[
            &[1.0, 1.0, 1.0, 1.0],
            &[1.0, -1.0, 1.0, -1.0],
            &[1.0, 1.0, -1.0, -1.0],
            &[1.0, -1.0, -1.0, 1.0],
        ])
        .unwrap();
        assert_eq!(kron(&f2(), &f2()), expected);
        assert_eq!(kron(&CMatrix::identity(2), &CMatrix::identity(2)), CMatrix::identity(4));
        let s = CMatrix::new(1, 1, vec![c(0.0, 3.0)]).unwrap();
        assert_eq!(kron(&s, &f2()), f2().scale(c(0.0, 3.0)));
    }

    #[test]
    fn trace_inner_basics() {
        assert_eq!(trace_inner(&CMatrix::identity(5), &CMatrix::identity(5)).unwrap(), c(5.0, 0.0));
        assert_eq!(trace_inner(&sigma_z(), &sigma_x()).unwrap(), ZERO);
        assert!(trace_inner(&CMatrix::identity(2), &CMatrix::identity(3)).is_err());
    }

    #[test]
    fn unitarity_and_scalar() {
        let tol = Tolerance::default();
        let h = f2().scale(c(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        assert!(is_unitary(&h, &tol));
        assert!(!is_unitary(&f2(), &tol));
        assert!(!is_unitary(&CMatrix::zeros(2, 3), &tol));

        assert!((unitary_scalar(&f2(), &tol).unwrap() - 2.0).abs() < 1e-15);
        assert!((unitary_scalar(&h, &tol).unwrap() - 1.0).abs() < 1e-15);
        let proj = CMatrix::from_real(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        assert_eq!(unitary_scalar(&proj, &tol), None);
        assert_eq!(unitary_scalar(&CMatrix::zeros(2, 2), &tol), None);
    }

    #[test]
    fn proportionality() {
        let tol = Tolerance::default();
        let a = CMatrix::from_rows(&[vec![c(1.0, 2.0), c(0.5, 0.0)], vec![ZERO, c(-1.0, 1.0)]]).unwrap();
        assert!(proportional(&a, &a.scale(I), &tol));
        assert!(!proportional(&sigma_x(), &sigma_z(), &tol));
        let z = CMatrix::zeros(2, 2);
        assert!(proportional(&z, &z, &tol));
        assert!(!proportional(&z, &a, &tol));
        assert!(!proportional(&a, &z, &tol));
    }

    #[test]
    fn commutation() {
        let tol = Tolerance::default();
        let d1 = CMatrix::from_diagonal(&[c(1.0, 1.0), c(2.0, 0.0)]);
        let d2 = CMatrix::from_diagonal(&[c(0.0, 1.0), c(-3.0, 0.0)]);
        assert!(commutes(&d1, &d2, &tol).unwrap());
        assert!(!commutes(&sigma_x(), &sigma_z(), &tol).unwrap());
        assert!(commutes(&d1, &CMatrix::identity(3), &tol).is_err());
    }

    #[test]
    fn regroup_vectorization_round_trip() {
        let m = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(3.0, 0.0), c(4.0, 0.0)]]).unwrap();
        assert_eq!(regroup(&m, &[2, 2], &[0, 1], (2, 2)).unwrap(), m);
        let v = regroup(&m, &[2, 2], &[0, 1], (1, 4)).unwrap();
        assert_eq!(v.as_slice(), m.as_slice());
        assert_eq!(regroup(&v, &[2, 2], &[0, 1], (2, 2)).unwrap(), m);
        // Swapping the two axes is the transpose.
        assert_eq!(regroup(&m, &[2, 2], &[1, 0], (2, 2)).unwrap(), m.transpose());
    }

    #[test]
    fn regroup_rejects_bad_shapes() {
        let m = CMatrix::identity(2);
        assert!(regroup(&m, &[2, 3], &[0, 1], (2, 3)).is_err());
        assert!(regroup(&m, &[2, 2], &[0, 0], (2, 2)).is_err());
        assert!(regroup(&m, &[2, 2], &[0, 1], (3, 1)).is_err());
    }

    #[test]
    fn exact_quarter_roots() {
        assert_eq!(root_of_unity(1, 4), I);
        assert_eq!(root_of_unity(6, 4), -ONE);
        assert_eq!(root_of_unity(3, 12), I);
        assert!((root_of_unity(1, 3) - c(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
    }
}
