//! Dense complex linear algebra on `M_n(C)` and `C^n`.
//!
//! Everything here is deterministic. Ranks are always relative: a singular
//! value counts when it exceeds `rel * sigma_max`.

mod eigh;
mod svd;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

pub use num_complex::Complex64 as C64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

pub use eigh::eigh;
pub use svd::{lstsq, singular_values, svd, Svd};

use crate::error::{Error, Result};

pub(crate) const ONE: C64 = C64 { re: 1.0, im: 0.0 };
#[cfg(test)]
const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Relative singular-value cutoffs used for rank decisions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    /// Cutoff used while searching.
    pub rank_rel: f64,
    /// Stricter cutoff used when issuing certificates.
    pub cert_rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rank_rel: 1e-9, cert_rel: 1e-11 }
    }
}

impl Tolerance {
    pub fn new(rank_rel: f64, cert_rel: f64) -> Result<Self> {
        if !(cert_rel > 0.0 && cert_rel <= rank_rel && rank_rel < 1.0) {
            return Err(Error::invalid("tolerances must satisfy 0 < cert_rel <= rank_rel < 1"));
        }
        Ok(Tolerance { rank_rel, cert_rel })
    }

    /// Absolute slack for identities such as `P^2 = P` on `n x n` matrices.
    pub fn identity_slack(&self, n: usize) -> f64 {
        (self.rank_rel * n as f64).max(1e-12)
    }
}

/// Anything that can be viewed as a flat complex coordinate vector.
///
/// Matrices flatten row-major, so the Euclidean inner product of flattened
/// matrices is the Hilbert-Schmidt inner product `Tr(A B^*)`.
pub trait Flat: Sized {
    fn flat(&self) -> &[C64];
    /// Builds an element of the same shape as `self` from flat data.
    fn with_flat(&self, data: Vec<C64>) -> Self;
}

// ---------------------------------------------------------------------------

/// A vector in `C^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CVector {
    entries: Vec<C64>,
}

impl CVector {
    pub fn new(entries: Vec<C64>) -> Self {
        CVector { entries }
    }

    pub fn try_new(entries: Vec<C64>) -> Result<Self> {
        if entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(CVector { entries })
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn zeros(n: usize) -> Self {
        CVector { entries: vec![C64::zero(); n] }
    }

    /// Standard basis vector `e_i` (0-indexed).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.entries[i] = ONE;
        v
    }

    pub fn from_real(values: &[f64]) -> Self {
        CVector { entries: values.iter().map(|&x| C64::new(x, 0.0)).collect() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<C64> {
        self.entries
    }

    /// `<self, other> = sum_i self_i conj(other_i)`, linear in the first slot.
    pub fn inner(&self, other: &CVector) -> C64 {
        self.entries.iter().zip(&other.entries).fold(C64::zero(), |acc, (a, b)| acc + a * b.conj())
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, c: C64) -> CVector {
        CVector { entries: self.entries.iter().map(|z| z * c).collect() }
    }

    pub fn normalized(&self) -> Result<CVector> {
        let nrm = self.norm();
        if nrm == 0.0 {
            return Err(Error::ZeroInput);
        }
        Ok(self.scale(C64::new(1.0 / nrm, 0.0)))
    }

    pub fn axpy(&mut self, c: C64, x: &CVector) {
        for (a, b) in self.entries.iter_mut().zip(&x.entries) {
            *a += c * b;
        }
    }

    /// Direct sum `self ⊕ other`.
    pub fn concat(&self, other: &CVector) -> CVector {
        let mut e = self.entries.clone();
        e.extend_from_slice(&other.entries);
        CVector { entries: e }
    }

    /// Zero-pads (or truncates) to length `n`.
    pub fn resized(&self, n: usize) -> CVector {
        let mut e = self.entries.clone();
        e.resize(n, C64::zero());
        CVector { entries: e }
    }

    pub fn conj(&self) -> CVector {
        CVector { entries: self.entries.iter().map(|z| z.conj()).collect() }
    }

    /// Tensor product `self ⊗ other`.
    pub fn kron(&self, other: &CVector) -> CVector {
        let mut e = Vec::with_capacity(self.len() * other.len());
        for a in &self.entries {
            for b in &other.entries {
                e.push(a * b);
            }
        }
        CVector { entries: e }
    }
}

impl Index<usize> for CVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.entries[i]
    }
}

impl IndexMut<usize> for CVector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.entries[i]
    }
}

impl Add for &CVector {
    type Output = CVector;
    fn add(self, rhs: &CVector) -> CVector {
        CVector { entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CVector {
    type Output = CVector;
    fn sub(self, rhs: &CVector) -> CVector {
        CVector { entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() }
    }
}

impl Flat for CVector {
    fn flat(&self) -> &[C64] {
        &self.entries
    }
    fn with_flat(&self, data: Vec<C64>) -> Self {
        CVector { entries: data }
    }
}

// ---------------------------------------------------------------------------

/// A dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix { n, data: vec![C64::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Matrix unit `E_ij` (0-indexed).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m[(i, j)] = ONE;
        m
    }

    pub fn from_entries(n: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: data.len() });
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(ComplexMatrix { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { n, data }
    }

    pub fn from_diag(d: &[C64]) -> Self {
        let n = d.len();
        Self::from_fn(n, |i, j| if i == j { d[i] } else { C64::zero() })
    }

    pub fn from_real_diag(d: &[f64]) -> Self {
        let n = d.len();
        Self::from_fn(n, |i, j| if i == j { C64::new(d[i], 0.0) } else { C64::zero() })
    }

    /// Outer product `v w^*`.
    pub fn outer(v: &CVector, w: &CVector) -> Self {
        let n = v.len();
        Self::from_fn(n, |i, j| v[i] * w[j].conj())
    }

    /// Matrix whose columns are `cols` (each of length `n = cols.len()`).
    pub fn from_columns(cols: &[CVector]) -> Self {
        let n = cols.len();
        Self::from_fn(n, |i, j| cols[j][i])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> CVector {
        CVector::new((0..self.n).map(|i| self[(i, j)]).collect())
    }

    pub fn row(&self, i: usize) -> CVector {
        CVector::new(self.data[i * self.n..(i + 1) * self.n].to_vec())
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Hilbert-Schmidt (Frobenius) norm.
    pub fn hs_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: C64) -> Self {
        ComplexMatrix { n: self.n, data: self.data.iter().map(|z| z * c).collect() }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    /// `(A + A^*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    pub fn is_hermitian(&self, slack: f64) -> bool {
        (self - &self.adjoint()).hs_norm() <= slack
    }

    /// Matrix-vector product `A v`.
    pub fn apply(&self, v: &CVector) -> CVector {
        let n = self.n;
        CVector::new(
            (0..n)
                .map(|i| {
                    self.data[i * n..(i + 1) * n]
                        .iter()
                        .zip(v.entries())
                        .fold(C64::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    /// `<A x, y> = y^* A x`.
    pub fn form(&self, x: &CVector, y: &CVector) -> C64 {
        self.apply(x).inner(y)
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (a, b) = (self.n, other.n);
        ComplexMatrix::from_fn(a * b, |i, j| self[(i / b, j / b)] * other[(i % b, j % b)])
    }

    /// `U A U^*`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> ComplexMatrix {
        u.matmul(self).matmul(&u.adjoint())
    }

    /// Zero everywhere except the diagonal within slack.
    pub fn is_diagonal(&self, slack: f64) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| i == j || self[(i, j)].norm() <= slack))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl Flat for ComplexMatrix {
    fn flat(&self) -> &[C64] {
        &self.data
    }
    fn with_flat(&self, data: Vec<C64>) -> Self {
        ComplexMatrix { n: self.n, data }
    }
}

// ---------------------------------------------------------------------------

/// Hilbert-Schmidt inner product `Tr(A B^*)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch { expected: a.n, found: b.n });
    }
    Ok(a.data.iter().zip(&b.data).fold(C64::zero(), |acc, (x, y)| acc + x * y.conj()))
}

fn check_shapes<T: Flat>(items: &[T]) -> Result<usize> {
    let first = items.first().ok_or(Error::EmptyInput)?;
    let m = first.flat().len();
    for it in items {
        if it.flat().len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: it.flat().len() });
        }
    }
    Ok(m)
}

/// Singular values of the matrix whose columns are the flattened items.
pub fn item_singular_values<T: Flat>(items: &[T]) -> Result<Vec<f64>> {
    let m = check_shapes(items)?;
    let cols: Vec<&[C64]> = items.iter().map(|x| x.flat()).collect();
    Ok(singular_values(&cols, m))
}

/// Rank of a list of vectors or matrices at a relative cutoff `rel`.
pub fn rank_at<T: Flat>(items: &[T], rel: f64) -> Result<usize> {
    Ok(svd::rank_of(&item_singular_values(items)?, rel))
}

/// Rank at the search tolerance `tol.rank_rel`.
pub fn numerical_rank<T: Flat>(items: &[T], tol: &Tolerance) -> Result<usize> {
    rank_at(items, tol.rank_rel)
}

/// Orthonormal basis of the span at cutoff `rel` (left singular vectors).
pub fn orthonormalize_at<T: Flat>(items: &[T], rel: f64) -> Result<Vec<T>> {
    let m = check_shapes(items)?;
    let cols: Vec<&[C64]> = items.iter().map(|x| x.flat()).collect();
    let d = svd(&cols, m);
    let r = d.rank(rel);
    let template = &items[0];
    Ok(d.u.into_iter().take(r).map(|u| template.with_flat(u)).collect())
}

/// Orthonormal basis (Hilbert-Schmidt for matrices) of the span of `items`;
/// its length equals `numerical_rank(items)`.
pub fn span_orthonormalize<T: Flat>(items: &[T], tol: &Tolerance) -> Result<Vec<T>> {
    orthonormalize_at(items, tol.rank_rel)
}

/// Component of `x` orthogonal to the span of the orthonormal list `basis`.
pub fn residual_against<T: Flat>(x: &T, basis: &[T]) -> Vec<C64> {
    let mut r = x.flat().to_vec();
    for b in basis {
        let c = b.flat().iter().zip(r.iter()).fold(C64::zero(), |acc, (bi, ri)| acc + bi.conj() * ri);
        for (ri, bi) in r.iter_mut().zip(b.flat()) {
            *ri -= c * bi;
        }
    }
    r
}

pub(crate) fn flat_norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal basis of the orthogonal complement of `span(vectors)` in `C^n`.
pub fn orth_complement(vectors: &[CVector], n: usize, rel: f64) -> Vec<CVector> {
    if vectors.is_empty() {
        return (0..n).map(|i| CVector::basis(n, i)).collect();
    }
    let range = orthonormalize_at(vectors, rel).unwrap_or_default();
    if range.len() >= n {
        return Vec::new();
    }
    // Gram-Schmidt on the columns of I - F F^*, largest residual first; the
    // residual norms are 0 or 1 up to rounding, so 0.5 separates them.
    let mut cols: Vec<CVector> = (0..n).map(|j| CVector::new(residual_against(&CVector::basis(n, j), &range))).collect();
    let mut out: Vec<CVector> = Vec::with_capacity(n - range.len());
    while out.len() < n - range.len() {
        let (best, nb) = cols
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.norm()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if nb <= 0.5 {
            break;
        }
        let mut q = CVector::new(residual_against(&cols[best], &range));
        q = CVector::new(residual_against(&q, &out));
        let nq = q.norm();
        q = q.scale(C64::new(1.0 / nq, 0.0));
        for c in cols.iter_mut() {
            let proj = c.inner(&q);
            c.axpy(-proj, &q);
        }
        out.push(q);
    }
    out
}

/// Extends the orthonormal list `frame` to an orthonormal basis of `C^n`.
pub fn complete_basis(frame: &[CVector], n: usize) -> Vec<CVector> {
    let mut out = frame.to_vec();
    out.extend(orth_complement(frame, n, 1e-12));
    out
}

// ---------------------------------------------------------------------------

/// Orthogonal projection `P = P^2 = P^*`, stored through an orthonormal frame
/// of its range.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    frame: Vec<CVector>,
    matrix: ComplexMatrix,
}

impl Projection {
    /// Trusts that `frame` is orthonormal; callers in this crate guarantee it.
    pub(crate) fn from_frame_unchecked(frame: Vec<CVector>) -> Self {
        let n = frame[0].len();
        let mut matrix = ComplexMatrix::zeros(n);
        for f in &frame {
            for i in 0..n {
                for j in 0..n {
                    matrix[(i, j)] += f[i] * f[j].conj();
                }
            }
        }
        Projection { frame, matrix }
    }

    /// Builds a projection from a frame that must already be orthonormal
    /// within `tol.identity_slack`.
    pub fn from_orthonormal_frame(frame: Vec<CVector>, tol: &Tolerance) -> Result<Self> {
        let first = frame.first().ok_or(Error::ZeroInput)?;
        let n = first.len();
        if let Some(bad) = frame.iter().find(|f| f.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        let slack = tol.identity_slack(n);
        for (i, a) in frame.iter().enumerate() {
            for (j, b) in frame.iter().enumerate() {
                let target = if i == j { ONE } else { C64::zero() };
                if (a.inner(b) - target).norm() > slack {
                    return Err(Error::precondition("projection frame is not orthonormal"));
                }
            }
        }
        Ok(Self::from_frame_unchecked(frame))
    }

    /// Validates `P = P^2 = P^*` and extracts a frame of the range.
    pub fn from_matrix(p: &ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        let n = p.n();
        let slack = tol.identity_slack(n);
        if (p - &p.adjoint()).hs_norm() > slack || (&p.matmul(p) - p).hs_norm() > slack {
            return Err(Error::precondition("matrix is not an orthogonal projection"));
        }
        let cols: Vec<CVector> = (0..n).map(|j| p.column(j)).collect();
        let frame: Vec<CVector> = {
            let refs: Vec<&[C64]> = cols.iter().map(|c| c.entries()).collect();
            let d = svd(&refs, n);
            d.u.into_iter().zip(d.sigma).filter(|(_, s)| *s > 0.5).map(|(u, _)| CVector::new(u)).collect()
        };
        if frame.is_empty() {
            return Err(Error::ZeroInput);
        }
        Ok(Self::from_frame_unchecked(frame))
    }

    /// Projection onto the span of `vectors`.
    pub fn from_vectors(vectors: &[CVector], tol: &Tolerance) -> Result<Self> {
        let frame = span_orthonormalize(vectors, tol)?;
        if frame.is_empty() {
            return Err(Error::ZeroInput);
        }
        Ok(Self::from_frame_unchecked(frame))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_frame_unchecked((0..n).map(|i| CVector::basis(n, i)).collect())
    }

    /// Coordinate projection onto `span{e_i : i in indices}` (0-indexed).
    pub fn coordinate(n: usize, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::ZeroInput);
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::invalid(alloc::format!("coordinate {bad} out of range for n = {n}")));
        }
        Ok(Self::from_frame_unchecked(indices.iter().map(|&i| CVector::basis(n, i)).collect()))
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn rank(&self) -> usize {
        self.frame.len()
    }

    pub fn frame(&self) -> &[CVector] {
        &self.frame
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `U P U^*` for a unitary `U`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Projection {
        Self::from_frame_unchecked(self.frame.iter().map(|f| u.apply(f)).collect())
    }

    /// Maps a frame given in coordinates of `outer` (an orthonormal list in
    /// `C^n`) to ambient coordinates.
    pub fn lift(local: &[CVector], outer: &[CVector]) -> Self {
        Self::from_frame_unchecked(local.iter().map(|x| combine(x, outer)).collect())
    }

    /// `‖P^2 - P‖_HS` and `‖P - P^*‖_HS`.
    pub fn defects(&self) -> (f64, f64) {
        let p = &self.matrix;
        ((&p.matmul(p) - p).hs_norm(), (p - &p.adjoint()).hs_norm())
    }
}

/// `sum_i coeffs_i * basis_i`.
pub fn combine(coeffs: &CVector, basis: &[CVector]) -> CVector {
    let n = basis.first().map(|b| b.len()).unwrap_or(0);
    let mut out = CVector::zeros(n);
    for (c, b) in coeffs.entries().iter().zip(basis) {
        out.axpy(*c, b);
    }
    out
}

/// Projection onto the span of `vectors`.
pub fn projection_from_vectors(vectors: &[CVector], tol: &Tolerance) -> Result<Projection> {
    Projection::from_vectors(vectors, tol)
}

/// Compression of `A` to the range of `P`, written in `P`'s frame: the
/// `k x k` matrix with entries `f_i^* A f_j`.
pub fn compress(p: &Projection, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if p.n() != a.n() {
        return Err(Error::DimensionMismatch { expected: p.n(), found: a.n() });
    }
    Ok(compress_to_frame(p.frame(), a))
}

pub(crate) fn compress_to_frame(frame: &[CVector], a: &ComplexMatrix) -> ComplexMatrix {
    let images: Vec<CVector> = frame.iter().map(|f| a.apply(f)).collect();
    ComplexMatrix::from_fn(frame.len(), |i, j| images[j].inner(&frame[i]))
}

/// `(Re A, Im A) = ((A + A^*)/2, (A - A^*)/2i)`.
pub fn hermitian_split(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let adj = a.adjoint();
    let re = (a + &adj).scale_real(0.5);
    let im = (a - &adj).scale(C64::new(0.0, -0.5));
    (re, im)
}

/// Largest singular value of a square matrix.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    let cols: Vec<CVector> = (0..a.n()).map(|j| a.column(j)).collect();
    let refs: Vec<&[C64]> = cols.iter().map(|c| c.entries()).collect();
    singular_values(&refs, a.n()).first().copied().unwrap_or(0.0)
}

#[cfg(test)]
fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
