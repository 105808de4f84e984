//! Cliques in diagonal operator systems and the Gramian completion behind them.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{complete_basis, eigh, CVector, ComplexMatrix, Projection, Tolerance, C64};
use crate::opsys::{certify, Certificate, OperatorSystem};

/// `k^2` vectors in `C^k` whose outer products `v v^*` are linearly
/// independent: `e_i`, then `e_i + e_j` and `e_i + i e_j` for `i < j`.
pub fn rank1_spanning_vectors(k: usize) -> Vec<CVector> {
    let mut out: Vec<CVector> = (0..k).map(|i| CVector::basis(k, i)).collect();
    for i in 0..k {
        for j in i + 1..k {
            let mut v = CVector::basis(k, i);
            v[j] = C64::new(1.0, 0.0);
            out.push(v);
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let mut v = CVector::basis(k, i);
            v[j] = C64::new(0.0, 1.0);
            out.push(v);
        }
    }
    out
}

/// Gram matrix `G_ij = v_i^* v_j`.
pub fn gram(vectors: &[CVector]) -> ComplexMatrix {
    ComplexMatrix::from_fn(vectors.len(), |i, j| vectors[j].inner(&vectors[i]))
}

/// Vectors `w_i` in `C^(r-1)` such that the vectors `v_i ⊕ w_i` are pairwise
/// orthogonal with common squared norm `‖G‖`, where `G` is the Gram matrix
/// of the `v_i`.
///
/// `‖G‖ I - G` is positive semidefinite with a zero eigenvalue at the top
/// eigenvector of `G`; dropping that eigenpair factors it through `C^(r-1)`.
pub fn gramian_completion(vectors: &[CVector]) -> Result<Vec<CVector>> {
    let r = vectors.len();
    if r == 0 {
        return Err(Error::EmptyInput);
    }
    let s = vectors[0].len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != s) {
        return Err(Error::DimensionMismatch { expected: s, found: bad.len() });
    }
    let g = gram(vectors);
    let (gvals, _) = eigh(&g);
    let top = gvals.last().copied().unwrap_or(0.0).max(0.0);
    let m = &ComplexMatrix::identity(r).scale_real(top) - &g;
    let (vals, vecs) = eigh(&m);
    // Ascending order: index 0 is the (numerically) zero eigenvalue.
    let mut out = alloc::vec![CVector::zeros(r - 1); r];
    for (l, (lam, u)) in vals.iter().zip(&vecs).skip(1).enumerate() {
        let root = lam.max(0.0).sqrt();
        for (i, w) in out.iter_mut().enumerate() {
            w[l] = u[i].conj() * root;
        }
    }
    Ok(out)
}

/// The orthonormal frame `f_i = (v_i ⊕ w_i) / N` in `C^(s + r - 1)`.
pub(crate) fn normalized_completion(vectors: &[CVector]) -> Result<Vec<CVector>> {
    let ws = gramian_completion(vectors)?;
    let combined: Vec<CVector> = vectors.iter().zip(&ws).map(|(v, w)| v.concat(w)).collect();
    let norm = combined.iter().map(CVector::norm).fold(0.0, f64::max);
    if norm == 0.0 {
        return Err(Error::ZeroInput);
    }
    Ok(combined.iter().map(|f| f.scale(C64::new(1.0 / norm, 0.0))).collect())
}

/// A `k`-clique of a rotated `D_n`.
#[derive(Clone, Debug)]
pub struct DiagonalClique {
    /// Orthonormal basis `u_1..u_n` in which the system is diagonal.
    pub basis: Vec<CVector>,
    /// `span{u_j u_j^*}`.
    pub system: OperatorSystem,
    /// Certificate for the projection onto the first `k` coordinates.
    pub certificate: Certificate,
}

impl DiagonalClique {
    /// Frame of the same clique after rotating the system back to the
    /// standard `D_n`: the vectors `U^* e_a`, `a < k`.
    pub fn standard_frame(&self) -> Vec<CVector> {
        let n = self.basis.len();
        let k = self.certificate.k;
        (0..k).map(|a| CVector::new((0..n).map(|j| self.basis[j][a].conj()).collect())).collect()
    }
}

/// Quantum `k`-clique of a diagonal operator system in `M_n` for
/// `n >= k^2 + k - 1`.
pub fn diagonal_clique(n: usize, k: usize) -> Result<DiagonalClique> {
    diagonal_clique_at(n, k, &Tolerance::default())
}

pub fn diagonal_clique_at(n: usize, k: usize, tol: &Tolerance) -> Result<DiagonalClique> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let need = k * k + k - 1;
    if n < need {
        return Err(Error::invalid(format!("diagonal clique needs n >= k^2 + k - 1 = {need}, got {n}")));
    }
    let frame: Vec<CVector> =
        normalized_completion(&rank1_spanning_vectors(k))?.iter().map(|f| f.resized(n)).collect();
    let basis = complete_basis(&frame, n);
    if basis.len() != n {
        return Err(Error::precondition("completed basis is not full"));
    }
    let units: Vec<ComplexMatrix> = basis.iter().map(|u| ComplexMatrix::outer(u, u)).collect();
    let system = OperatorSystem::from_orthonormal_unchecked(n, units);
    let p = Projection::coordinate(n, &(0..k).collect::<Vec<_>>())?;
    let mut certificate = certify(&system, &p, k, tol)?;
    certificate.note(format!("diagonal clique: {} rank-one spanning vectors completed into C^{n}", k * k));
    Ok(DiagonalClique { basis, system, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::diagonal_system;
    use crate::linalg::rank_at;
    use crate::opsys::Kind;
    use crate::random::SeededRng;

    fn check_completion(vs: &[CVector]) {
        let ws = gramian_completion(vs).unwrap();
        let combined: Vec<CVector> = vs.iter().zip(&ws).map(|(v, w)| v.concat(w)).collect();
        let g = gram(vs);
        let (gv, _) = eigh(&g);
        let top = gv.last().copied().unwrap().max(0.0);
        let h = gram(&combined);
        for i in 0..vs.len() {
            for j in 0..vs.len() {
                let want = if i == j { top } else { 0.0 };
                assert!((h[(i, j)] - C64::new(want, 0.0)).norm() <= 1e-9 * top.max(1e-300));
            }
        }
    }

    #[test]
    fn spanning_vectors_are_independent() {
        for k in 1..5 {
            let vs = rank1_spanning_vectors(k);
            assert_eq!(vs.len(), k * k);
            let outers: Vec<ComplexMatrix> = vs.iter().map(|v| ComplexMatrix::outer(v, v)).collect();
            assert_eq!(rank_at(&outers, 1e-9).unwrap(), k * k);
        }
    }

    #[test]
    fn completion_examples() {
        let e = CVector::basis(1, 0);
        let ws = gramian_completion(&[e.clone(), e.clone()]).unwrap();
        assert_eq!(ws[0].len(), 1);
        assert!((ws[0][0] * ws[1][0].conj() + C64::new(1.0, 0.0)).norm() < 1e-12);
        check_completion(&[e.clone(), e]);

        let ortho = [CVector::basis(3, 0).scale(C64::new(2.0, 0.0)), CVector::basis(3, 2).scale(C64::new(0.0, 2.0))];
        let ws = gramian_completion(&ortho).unwrap();
        assert!(ws.iter().all(|w| w.norm() < 1e-12));

        let mut rng = SeededRng::new(4);
        let vs: Vec<CVector> = (0..3).map(|_| rng.gaussian_vector(2)).collect();
        check_completion(&vs);

        let single = gramian_completion(&[CVector::basis(2, 1)]).unwrap();
        assert_eq!(single[0].len(), 0);
        assert!(gramian_completion(&[]).is_err());
    }

    #[test]
    fn completion_on_rank_deficient_sets() {
        let mut rng = SeededRng::new(8);
        for _ in 0..50 {
            let r = 1 + rng.below(8);
            let s = 1 + rng.below(8);
            let base: Vec<CVector> = (0..s.min(2)).map(|_| rng.gaussian_vector(s)).collect();
            let vs: Vec<CVector> = (0..r)
                .map(|_| {
                    let mut v = CVector::zeros(s);
                    for b in &base {
                        v.axpy(rng.complex_normal(), b);
                    }
                    v
                })
                .collect();
            check_completion(&vs);
        }
    }

    #[test]
    fn diagonal_clique_examples() {
        for (n, k) in [(5, 2), (11, 3), (19, 4), (8, 2), (1, 1)] {
            let dc = diagonal_clique(n, k).unwrap();
            assert_eq!(dc.certificate.kind, Kind::Clique, "n={n} k={k}");
            assert_eq!(dc.certificate.compressed_dim, k * k);
            let p = Projection::from_orthonormal_frame(dc.standard_frame(), &Tolerance::default()).unwrap();
            let c = certify(&diagonal_system(n).unwrap(), &p, k, &Tolerance::default()).unwrap();
            assert_eq!(c.kind, Kind::Clique);
        }
        assert!(diagonal_clique(3, 2).is_err());
    }
}
