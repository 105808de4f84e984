//! Operator systems: unital, adjoint-closed subspaces of `M_n`, stored by a
//! Hilbert-Schmidt orthonormal basis.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg::{
    compress_to_frame, flat_norm, item_singular_values, orthonormalize_at, rank_at, residual_against,
    CVector, ComplexMatrix, Projection, Tolerance, C64,
};
use crate::random::SeededRng;

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSystem {
    n: usize,
    basis: Vec<ComplexMatrix>,
}

impl OperatorSystem {
    /// Smallest operator system containing `matrices`: adjoins `I_n` and all
    /// adjoints, then orthonormalizes.
    pub fn from_span(matrices: &[ComplexMatrix], n: usize, tol: &Tolerance) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("ambient dimension must be positive"));
        }
        let mut items = Vec::with_capacity(2 * matrices.len() + 1);
        items.push(ComplexMatrix::identity(n));
        for a in matrices {
            if a.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: a.n() });
            }
            if !a.is_finite() {
                return Err(Error::NonFinite);
            }
            let (re, im) = crate::linalg::hermitian_split(a);
            items.push(re);
            items.push(im);
        }
        let basis = orthonormalize_at(&items, tol.rank_rel)?;
        Ok(OperatorSystem { n, basis })
    }

    /// Accepts a spanning list only if it already spans an operator system
    /// (contains `I_n` and is adjoint-closed within tolerance).
    pub fn from_basis(n: usize, basis: &[ComplexMatrix], tol: &Tolerance) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::EmptyInput);
        }
        for a in basis {
            if a.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: a.n() });
            }
            if !a.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        let ortho = orthonormalize_at(basis, tol.rank_rel)?;
        let candidate = OperatorSystem { n, basis: ortho };
        if !candidate.contains(&ComplexMatrix::identity(n), tol) {
            return Err(Error::precondition("span does not contain the identity"));
        }
        if basis.iter().any(|a| !candidate.contains(&a.adjoint(), tol)) {
            return Err(Error::precondition("span is not closed under adjoints"));
        }
        Ok(candidate)
    }

    /// `C * I_n`.
    pub fn scalars(n: usize) -> Self {
        OperatorSystem { n, basis: alloc::vec![ComplexMatrix::identity(n).scale_real(1.0 / (n as f64).sqrt())] }
    }

    /// All of `M_n`.
    pub fn full(n: usize) -> Self {
        let basis = (0..n).flat_map(|i| (0..n).map(move |j| ComplexMatrix::unit(n, i, j))).collect();
        OperatorSystem { n, basis }
    }

    /// Wraps a basis that is known to be HS-orthonormal and to span an
    /// operator system.
    pub(crate) fn from_orthonormal_unchecked(n: usize, basis: Vec<ComplexMatrix>) -> Self {
        OperatorSystem { n, basis }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    /// Residual norm of `a` after projecting onto the span.
    pub fn residual(&self, a: &ComplexMatrix) -> f64 {
        flat_norm(&residual_against(a, &self.basis))
    }

    pub fn contains(&self, a: &ComplexMatrix, tol: &Tolerance) -> bool {
        self.residual(a) <= membership_slack(tol) * a.hs_norm().max(1.0)
    }

    /// Every basis element of `other` lies in `self`.
    pub fn contains_system(&self, other: &OperatorSystem, tol: &Tolerance) -> bool {
        other.n == self.n && other.basis.iter().all(|a| self.contains(a, tol))
    }

    pub fn same_span(&self, other: &OperatorSystem, tol: &Tolerance) -> bool {
        self.dim() == other.dim() && self.contains_system(other, tol) && other.contains_system(self, tol)
    }

    /// `U V U^*` for a unitary `U`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> OperatorSystem {
        OperatorSystem { n: self.n, basis: self.basis.iter().map(|a| a.conjugate_by(u)).collect() }
    }

    /// Basis of the real space of Hermitian elements, orthonormal for
    /// `Re Tr(A B)`. Its length equals `dim()`.
    pub fn hermitian_basis(&self, tol: &Tolerance) -> Vec<ComplexMatrix> {
        let mut herm = Vec::with_capacity(2 * self.dim());
        for a in &self.basis {
            let (re, im) = crate::linalg::hermitian_split(a);
            herm.push(re);
            herm.push(im);
        }
        pivoted_real_basis(&herm, self.n, self.dim(), tol.rank_rel)
    }

    /// Hermitian basis of the traceless part (orthogonal to `I_n`); length `dim() - 1`.
    pub fn traceless_hermitian_basis(&self, tol: &Tolerance) -> Vec<ComplexMatrix> {
        let n = self.n;
        let mut herm = Vec::with_capacity(2 * self.dim());
        for a in &self.basis {
            let (re, im) = crate::linalg::hermitian_split(a);
            for h in [re, im] {
                let t = h.trace().re / n as f64;
                herm.push(&h - &ComplexMatrix::identity(n).scale_real(t));
            }
        }
        pivoted_real_basis(&herm, n, self.dim().saturating_sub(1), tol.rank_rel)
    }
}

impl fmt::Display for OperatorSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "operator system of dimension {} in M_{}", self.dim(), self.n)
    }
}

pub(crate) fn membership_slack(tol: &Tolerance) -> f64 {
    (tol.rank_rel * 10.0).max(1e-12)
}

/// Orthonormalizes Hermitian matrices over the reals.
pub(crate) fn real_orthonormalize(herm: &[ComplexMatrix], n: usize, rel: f64) -> Vec<ComplexMatrix> {
    if herm.is_empty() {
        return Vec::new();
    }
    let real: Vec<CVector> = herm.iter().map(realify).collect();
    orthonormalize_at(&real, rel).unwrap_or_default().iter().map(|v| derealify(v, n)).collect()
}

/// Real-orthonormal basis of the real span of `herm`, by Gram-Schmidt with
/// column pivoting. Stops after `count` vectors or once every residual is
/// below `rel` times the largest input norm. Much cheaper than an SVD when
/// there are hundreds of inputs.
fn pivoted_real_basis(herm: &[ComplexMatrix], n: usize, count: usize, rel: f64) -> Vec<ComplexMatrix> {
    let m = n * n;
    let mut res: Vec<Vec<f64>> = herm
        .iter()
        .map(|h| h.entries().iter().map(|z| z.re).chain(h.entries().iter().map(|z| z.im)).collect())
        .collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut norms: Vec<f64> = res.iter().map(|r| dot(r, r).sqrt()).collect();
    let floor = rel * norms.iter().copied().fold(0.0, f64::max);
    let mut done: Vec<Vec<f64>> = Vec::with_capacity(count);
    while done.len() < count {
        let Some((best, &nb)) = norms.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)) else { break };
        if nb <= floor || nb == 0.0 {
            break;
        }
        let mut q = core::mem::take(&mut res[best]);
        norms[best] = 0.0;
        // Second pass against the accepted vectors keeps q orthogonal to working precision.
        for e in &done {
            let c = dot(&q, e);
            q.iter_mut().zip(e).for_each(|(x, y)| *x -= c * y);
        }
        let nq = dot(&q, &q).sqrt();
        if nq <= floor {
            continue;
        }
        q.iter_mut().for_each(|x| *x /= nq);
        for (r, nr) in res.iter_mut().zip(norms.iter_mut()) {
            if *nr == 0.0 {
                continue;
            }
            let c = dot(r, &q);
            r.iter_mut().zip(&q).for_each(|(x, y)| *x -= c * y);
            *nr = dot(r, r).sqrt();
        }
        done.push(q);
    }
    done.iter()
        .map(|q| {
            let data = (0..m).map(|i| C64::new(q[i], q[m + i])).collect();
            ComplexMatrix::from_entries(n, data).expect("shape matches")
        })
        .collect()
}

/// Embeds a Hermitian matrix as a real coordinate vector (stored as complex
/// numbers with zero imaginary part) so that the Euclidean product is `Re Tr(A B)`.
pub(crate) fn realify(h: &ComplexMatrix) -> CVector {
    let mut out = Vec::with_capacity(2 * h.entries().len());
    out.extend(h.entries().iter().map(|z| C64::new(z.re, 0.0)));
    out.extend(h.entries().iter().map(|z| C64::new(z.im, 0.0)));
    CVector::new(out)
}

pub(crate) fn derealify(v: &CVector, n: usize) -> ComplexMatrix {
    let m = n * n;
    let e = v.entries();
    let data = (0..m).map(|i| C64::new(e[i].re, e[m + i].re)).collect();
    ComplexMatrix::from_entries(n, data).expect("shape matches")
}

// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Clique,
    Anticlique,
    Neither,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Clique => "clique",
            Kind::Anticlique => "anticlique",
            Kind::Neither => "neither",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "clique" => Some(Kind::Clique),
            "anticlique" => Some(Kind::Anticlique),
            "neither" => Some(Kind::Neither),
            _ => None,
        }
    }

    /// Verdict for `dim(PVP)` at rank `k`. At `k = 1` both conditions hold and
    /// the result is reported as a clique.
    pub fn from_compressed_dim(dim: usize, k: usize) -> Kind {
        if dim == k * k {
            Kind::Clique
        } else if dim == 1 {
            Kind::Anticlique
        } else {
            Kind::Neither
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A verified verdict about one projection.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub projection: Projection,
    pub kind: Kind,
    pub compressed_dim: usize,
    pub k: usize,
    pub tol: Tolerance,
    pub seed: Option<u64>,
    pub trace: Vec<String>,
}

impl Certificate {
    pub fn is_success(&self) -> bool {
        self.kind != Kind::Neither
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.trace.push(line.into());
    }

    /// Prepends `lines` to the trace.
    pub fn with_trace_prefix(mut self, mut lines: Vec<String>) -> Self {
        lines.append(&mut self.trace);
        self.trace = lines;
        self
    }

    /// Recomputes the verdict against `v` from scratch.
    pub fn recheck(&self, v: &OperatorSystem) -> Result<Certificate> {
        certify(v, &self.projection, self.projection.rank(), &self.tol)
    }
}

/// Singular values of the compressed basis `{F^* A F : A in basis}`.
pub(crate) fn compressed_spectrum(v: &OperatorSystem, frame: &[CVector]) -> Vec<f64> {
    let comps: Vec<ComplexMatrix> = v.basis.iter().map(|a| compress_to_frame(frame, a)).collect();
    item_singular_values(&comps).unwrap_or_default()
}

pub(crate) fn rank_of_spectrum(sigma: &[f64], rel: f64) -> usize {
    let top = sigma.first().copied().unwrap_or(0.0);
    if top <= 0.0 {
        return 0;
    }
    sigma.iter().filter(|&&s| s > rel * top).count()
}

/// `P V P` as an operator system in `M_k`, written in `P`'s frame.
pub fn compress_system(v: &OperatorSystem, p: &Projection, tol: &Tolerance) -> Result<OperatorSystem> {
    if v.n != p.n() {
        return Err(Error::DimensionMismatch { expected: v.n, found: p.n() });
    }
    Ok(compress_to_frame_system(v, p.frame(), tol))
}

pub(crate) fn compress_to_frame_system(v: &OperatorSystem, frame: &[CVector], tol: &Tolerance) -> OperatorSystem {
    let comps: Vec<ComplexMatrix> = v.basis.iter().map(|a| compress_to_frame(frame, a)).collect();
    let basis = orthonormalize_at(&comps, tol.rank_rel).unwrap_or_default();
    OperatorSystem { n: frame.len(), basis }
}

/// Computes `dim(PVP)` and classifies `P` as a quantum clique
/// (`dim = k^2`), anticlique (`dim = 1`) or neither.
///
/// The dimension is computed at both `rank_rel` and `cert_rel`; when they
/// disagree the verdict is `Neither` and the trace says why.
pub fn certify(v: &OperatorSystem, p: &Projection, k: usize, tol: &Tolerance) -> Result<Certificate> {
    if v.n != p.n() {
        return Err(Error::DimensionMismatch { expected: v.n, found: p.n() });
    }
    if p.rank() != k {
        return Err(Error::DimensionMismatch { expected: k, found: p.rank() });
    }
    let sigma = compressed_spectrum(v, p.frame());
    let d_search = rank_of_spectrum(&sigma, tol.rank_rel);
    let d_cert = rank_of_spectrum(&sigma, tol.cert_rel);
    let mut trace = Vec::new();
    let kind = if d_search == d_cert {
        Kind::from_compressed_dim(d_cert, k)
    } else {
        trace.push(format!(
            "certify: dim(PVP) is {d_search} at rank_rel={:e} but {d_cert} at cert_rel={:e}; verdict withheld",
            tol.rank_rel, tol.cert_rel
        ));
        Kind::Neither
    };
    Ok(Certificate { projection: p.clone(), kind, compressed_dim: d_cert, k, tol: *tol, seed: None, trace })
}

/// `dim{A v : A in V}`.
pub fn orbit_dim(v: &OperatorSystem, x: &CVector, tol: &Tolerance) -> Result<usize> {
    if x.len() != v.n {
        return Err(Error::DimensionMismatch { expected: v.n, found: x.len() });
    }
    if x.norm() == 0.0 {
        return Err(Error::ZeroInput);
    }
    let images: Vec<CVector> = v.basis.iter().map(|a| a.apply(x)).collect();
    rank_at(&images, tol.rank_rel)
}

/// `span{I_n}` plus `d - 1` GUE Hermitian matrices, orthonormalized.
/// Deterministic in `seed`.
pub fn random_system(n: usize, d: usize, seed: u64) -> Result<OperatorSystem> {
    if n == 0 || d == 0 || d > n * n {
        return Err(Error::invalid(format!("need 1 <= d <= n^2, got n = {n}, d = {d}")));
    }
    let tol = Tolerance::default();
    let mut rng = SeededRng::new(seed);
    loop {
        // Hermitian inputs: a real-orthonormal basis is also HS-orthonormal.
        let herm: Vec<ComplexMatrix> =
            core::iter::once(ComplexMatrix::identity(n)).chain((1..d).map(|_| rng.gue(n))).collect();
        let basis = pivoted_real_basis(&herm, n, d, tol.rank_rel);
        if basis.len() == d {
            return Ok(OperatorSystem { n, basis });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hs_inner;
    use alloc::vec;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    pub(crate) fn diag_system(n: usize) -> OperatorSystem {
        let units: Vec<ComplexMatrix> = (0..n).map(|i| ComplexMatrix::unit(n, i, i)).collect();
        OperatorSystem::from_span(&units, n, &tol()).unwrap()
    }

    #[test]
    fn from_span_examples() {
        let v = OperatorSystem::from_span(&[], 3, &tol()).unwrap();
        assert_eq!(v.dim(), 1);
        assert!(v.contains(&ComplexMatrix::identity(3), &tol()));

        let v = OperatorSystem::from_span(&[ComplexMatrix::unit(2, 0, 1)], 2, &tol()).unwrap();
        assert_eq!(v.dim(), 3);
        assert!(v.contains(&ComplexMatrix::unit(2, 1, 0), &tol()));
        assert!(!v.contains(&ComplexMatrix::unit(2, 0, 0), &tol()));

        let v = OperatorSystem::from_span(&[ComplexMatrix::unit(2, 0, 0)], 2, &tol()).unwrap();
        assert_eq!(v.dim(), 2);

        assert!(OperatorSystem::from_span(&[ComplexMatrix::identity(3)], 2, &tol()).is_err());
    }

    #[test]
    fn basis_is_orthonormal() {
        let v = random_system(4, 7, 11).unwrap();
        for (i, a) in v.basis().iter().enumerate() {
            for (j, b) in v.basis().iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((hs_inner(a, b).unwrap() - C64::new(want, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn from_basis_rejects_non_systems() {
        let e12 = ComplexMatrix::unit(2, 0, 1);
        assert!(OperatorSystem::from_basis(2, &[ComplexMatrix::identity(2), e12.clone()], &tol()).is_err());
        assert!(OperatorSystem::from_basis(2, &[e12.clone(), e12.adjoint()], &tol()).is_err());
        let ok = OperatorSystem::from_basis(2, &[ComplexMatrix::identity(2), e12.clone(), e12.adjoint()], &tol());
        assert_eq!(ok.unwrap().dim(), 3);
    }

    #[test]
    fn compress_system_examples() {
        let v = random_system(3, 5, 2).unwrap();
        let same = compress_system(&v, &Projection::identity(3), &tol()).unwrap();
        assert!(same.same_span(&v, &tol()));

        let v = OperatorSystem::from_span(&[ComplexMatrix::unit(2, 0, 0)], 2, &tol()).unwrap();
        let p = Projection::coordinate(2, &[0]).unwrap();
        let c = compress_system(&v, &p, &tol()).unwrap();
        assert_eq!((c.n(), c.dim()), (1, 1));

        let d4 = diag_system(4);
        let p = Projection::coordinate(4, &[0, 1]).unwrap();
        let c = compress_system(&d4, &p, &tol()).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(c.basis().iter().all(|b| b.is_diagonal(1e-14)));
    }

    #[test]
    fn certify_examples() {
        let m2 = OperatorSystem::full(2);
        let c = certify(&m2, &Projection::identity(2), 2, &tol()).unwrap();
        assert_eq!((c.kind, c.compressed_dim), (Kind::Clique, 4));

        let mut rng = SeededRng::new(5);
        let p = Projection::from_vectors(&rng.frame(6, 3), &tol()).unwrap();
        let c = certify(&OperatorSystem::scalars(6), &p, 3, &tol()).unwrap();
        assert_eq!((c.kind, c.compressed_dim), (Kind::Anticlique, 1));

        let c = certify(&diag_system(4), &Projection::coordinate(4, &[0, 1]).unwrap(), 2, &tol()).unwrap();
        assert_eq!((c.kind, c.compressed_dim), (Kind::Neither, 2));

        assert!(certify(&m2, &Projection::identity(2), 1, &tol()).is_err());
    }

    #[test]
    fn orbit_dim_examples() {
        let mut rng = SeededRng::new(1);
        let x = rng.unit_vector(5);
        assert_eq!(orbit_dim(&OperatorSystem::scalars(5), &x, &tol()).unwrap(), 1);
        assert_eq!(orbit_dim(&OperatorSystem::full(2), &CVector::basis(2, 0), &tol()).unwrap(), 2);
        let ones = CVector::from_real(&[1.0, 1.0, 1.0]);
        assert_eq!(orbit_dim(&diag_system(3), &ones, &tol()).unwrap(), 3);
        assert_eq!(orbit_dim(&diag_system(3), &CVector::zeros(3), &tol()), Err(Error::ZeroInput));
    }

    #[test]
    fn random_system_examples() {
        let v = random_system(4, 1, 99).unwrap();
        assert_eq!(v.dim(), 1);
        assert!(v.contains(&ComplexMatrix::identity(4), &tol()));
        assert_eq!(random_system(3, 9, 7).unwrap().dim(), 9);
        let v = random_system(5, 4, 1).unwrap();
        let again = OperatorSystem::from_span(v.basis(), 5, &tol()).unwrap();
        assert_eq!(again.dim(), 4);
        assert!(again.same_span(&v, &tol()));
        assert_eq!(random_system(5, 4, 1).unwrap(), v);
        assert!(random_system(2, 5, 0).is_err());
        assert!(random_system(2, 0, 0).is_err());
    }

    #[test]
    fn hermitian_bases() {
        let v = random_system(4, 6, 3).unwrap();
        let h = v.hermitian_basis(&tol());
        assert_eq!(h.len(), 6);
        assert!(h.iter().all(|m| m.is_hermitian(1e-12)));
        let t = v.traceless_hermitian_basis(&tol());
        assert_eq!(t.len(), 5);
        assert!(t.iter().all(|m| m.trace().norm() < 1e-12 && v.contains(m, &tol())));
        let _ = vec![0];
    }
}
