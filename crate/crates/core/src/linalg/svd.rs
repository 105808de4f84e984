//! One-sided (Hestenes) Jacobi SVD for dense complex matrices given as column lists.
//!
//! Jacobi SVD computes small singular values to high relative accuracy, which
//! is what the relative rank cutoffs downstream rely on.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64 as C64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

const MAX_SWEEPS: usize = 80;
const ROTATION_EPS: f64 = 1e-15;

/// Thin singular value decomposition `A = U diag(sigma) V^*`.
///
/// `sigma` is sorted in decreasing order. `u[j]` has the row count of `A`,
/// `v[j]` its column count. Columns of `u` belonging to a zero singular value
/// are zero vectors.
#[derive(Clone, Debug)]
pub struct Svd {
    pub sigma: Vec<f64>,
    pub u: Vec<Vec<C64>>,
    pub v: Vec<Vec<C64>>,
}

impl Svd {
    /// Number of singular values above `rel * sigma_max`.
    pub fn rank(&self, rel: f64) -> usize {
        rank_of(&self.sigma, rel)
    }
}

pub(crate) fn rank_of(sigma: &[f64], rel: f64) -> usize {
    let top = sigma.first().copied().unwrap_or(0.0);
    if top <= 0.0 {
        return 0;
    }
    sigma.iter().filter(|&&s| s > rel * top).count()
}

#[inline]
fn dot(a: &[C64], b: &[C64]) -> C64 {
    // a^* b
    a.iter().zip(b).fold(C64::zero(), |acc, (x, y)| acc + x.conj() * y)
}

#[inline]
fn norm_sqr(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

/// Orthogonalizes the columns of `work` in place, accumulating the right
/// rotations into `v` (which must start as the identity of matching size).
fn hestenes(work: &mut [Vec<C64>], v: &mut [Vec<C64>]) {
    let p = work.len();
    if p < 2 {
        return;
    }
    let mut norms: Vec<f64> = work.iter().map(|c| norm_sqr(c)).collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..p - 1 {
            for j in i + 1..p {
                let alpha = norms[i];
                let beta = norms[j];
                if alpha <= f64::MIN_POSITIVE || beta <= f64::MIN_POSITIVE {
                    continue;
                }
                let gamma = dot(&work[i], &work[j]);
                let g = gamma.norm();
                if g <= ROTATION_EPS * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Phase so that the pair Gram entry becomes real and positive.
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(work, i, j, phase, c, s);
                rotate_pair(v, i, j, phase, c, s);
                norms[i] = norm_sqr(&work[i]);
                norms[j] = norm_sqr(&work[j]);
            }
        }
        if !rotated {
            break;
        }
    }
}

#[inline]
fn rotate_pair(cols: &mut [Vec<C64>], i: usize, j: usize, phase: C64, c: f64, s: f64) {
    let (left, right) = cols.split_at_mut(j);
    let ci = &mut left[i];
    let cj = &mut right[0];
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let yj = *y * phase;
        let xi = *x;
        *x = xi * c - yj * s;
        *y = xi * s + yj * c;
    }
}

fn identity_columns(p: usize) -> Vec<Vec<C64>> {
    (0..p)
        .map(|j| {
            let mut col = vec![C64::zero(); p];
            col[j] = C64::new(1.0, 0.0);
            col
        })
        .collect()
}

/// Jacobi on the columns themselves; returns `p` components.
fn svd_tall(cols: &[&[C64]], m: usize) -> Svd {
    let p = cols.len();
    let mut work: Vec<Vec<C64>> = cols.iter().map(|c| c.to_vec()).collect();
    let mut v = identity_columns(p);
    hestenes(&mut work, &mut v);
    let sig: Vec<f64> = work.iter().map(|c| norm_sqr(c).sqrt()).collect();
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| sig[b].partial_cmp(&sig[a]).unwrap_or(core::cmp::Ordering::Equal));
    let mut sigma = Vec::with_capacity(p);
    let mut u = Vec::with_capacity(p);
    let mut vv = Vec::with_capacity(p);
    for &j in &order {
        let s = sig[j];
        sigma.push(s);
        if s > 0.0 {
            u.push(work[j].iter().map(|x| x / s).collect());
        } else {
            u.push(vec![C64::zero(); m]);
        }
        vv.push(v[j].clone());
    }
    Svd { sigma, u, v: vv }
}

/// SVD of the `m x p` matrix whose columns are `cols` (each of length `m`).
///
/// Runs Jacobi on whichever of `A` or `A^*` has fewer columns, so the
/// result has `min(m, p)` components.
pub fn svd(cols: &[&[C64]], m: usize) -> Svd {
    let p = cols.len();
    debug_assert!(cols.iter().all(|c| c.len() == m));
    if p == 0 || m == 0 {
        return Svd { sigma: Vec::new(), u: Vec::new(), v: Vec::new() };
    }
    if p <= m {
        return svd_tall(cols, m);
    }
    // A^* has m columns of length p: column i is the conjugated i-th row of A.
    let rows: Vec<Vec<C64>> =
        (0..m).map(|i| cols.iter().map(|c| c[i].conj()).collect()).collect();
    let refs: Vec<&[C64]> = rows.iter().map(|r| r.as_slice()).collect();
    let t = svd_tall(&refs, p);
    // A^* = U' S V'^*  =>  A = V' S U'^*
    Svd { sigma: t.sigma, u: t.v, v: t.u }
}

/// Singular values only, in decreasing order.
pub fn singular_values(cols: &[&[C64]], m: usize) -> Vec<f64> {
    svd(cols, m).sigma
}

/// Minimum-norm least-squares solution of `A x = b` with singular values
/// below `rcond * sigma_max` treated as zero.
pub fn lstsq(cols: &[&[C64]], m: usize, b: &[C64], rcond: f64) -> Vec<C64> {
    let p = cols.len();
    let d = svd(cols, m);
    let top = d.sigma.first().copied().unwrap_or(0.0);
    let mut x = vec![C64::zero(); p];
    for (k, &s) in d.sigma.iter().enumerate() {
        if s <= rcond * top || s == 0.0 {
            break;
        }
        let coeff = dot(&d.u[k], b) / s;
        for (xi, vi) in x.iter_mut().zip(&d.v[k]) {
            *xi += coeff * vi;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_cols(rows: &[&[(f64, f64)]]) -> Vec<Vec<C64>> {
        let m = rows.len();
        let p = rows[0].len();
        (0..p).map(|j| (0..m).map(|i| C64::new(rows[i][j].0, rows[i][j].1)).collect()).collect()
    }

    fn reconstruct(d: &Svd, m: usize, p: usize) -> Vec<Vec<C64>> {
        let mut out = vec![vec![C64::zero(); m]; p];
        for (k, s) in d.sigma.iter().enumerate() {
            for (j, col) in out.iter_mut().enumerate() {
                for (i, z) in col.iter_mut().enumerate() {
                    *z += d.u[k][i] * *s * d.v[k][j].conj();
                }
            }
        }
        out
    }

    #[test]
    fn reconstructs_wide_and_tall() {
        let cols = mat_cols(&[
            &[(1.0, 0.0), (2.0, 1.0), (0.0, -1.0)],
            &[(0.5, 0.5), (-1.0, 0.0), (3.0, 0.0)],
        ]);
        let refs: Vec<&[C64]> = cols.iter().map(|c| c.as_slice()).collect();
        let d = svd(&refs, 2);
        assert_eq!(d.sigma.len(), 2);
        let back = reconstruct(&d, 2, 3);
        for j in 0..3 {
            for i in 0..2 {
                assert!((back[j][i] - cols[j][i]).norm() < 1e-13);
            }
        }
        // Transposed orientation.
        let rows: Vec<Vec<C64>> = (0..2).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let refs: Vec<&[C64]> = rows.iter().map(|c| c.as_slice()).collect();
        let e = svd(&refs, 3);
        for (a, b) in d.sigma.iter().zip(&e.sigma) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn rank_of_dependent_columns() {
        let cols = mat_cols(&[&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)], &[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0)]]);
        let refs: Vec<&[C64]> = cols.iter().map(|c| c.as_slice()).collect();
        assert_eq!(svd(&refs, 2).rank(1e-9), 2);
        let zero = vec![vec![C64::zero(); 3]; 2];
        let refs: Vec<&[C64]> = zero.iter().map(|c| c.as_slice()).collect();
        assert_eq!(svd(&refs, 3).rank(1e-9), 0);
    }

    #[test]
    fn lstsq_min_norm() {
        // x + y = 2 has min-norm solution (1, 1).
        let cols = [vec![C64::new(1.0, 0.0)], vec![C64::new(1.0, 0.0)]];
        let refs: Vec<&[C64]> = cols.iter().map(|c| c.as_slice()).collect();
        let x = lstsq(&refs, 1, &[C64::new(2.0, 0.0)], 1e-12);
        assert!((x[0] - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((x[1] - C64::new(1.0, 0.0)).norm() < 1e-14);
    }
}
