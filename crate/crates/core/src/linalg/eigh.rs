//! Cyclic Jacobi eigensolver for Hermitian matrices.

use alloc::vec::Vec;
use num_complex::Complex64 as C64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::{CVector, ComplexMatrix};

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix: eigenvalues ascending, with
/// orthonormal eigenvectors in matching order.
///
/// Only the Hermitian part of `a` is used.
pub fn eigh(a: &ComplexMatrix) -> (Vec<f64>, Vec<CVector>) {
    let n = a.n();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = m.hs_norm();
    if scale > 0.0 {
        for _ in 0..MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| m[(i, j)].norm_sqr())
                .sum();
            if off.sqrt() <= 1e-16 * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut m, &mut v, p, q, scale);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        m[(x, x)].re.partial_cmp(&m[(y, y)].re).unwrap_or(core::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = order.iter().map(|&i| v.column(i)).collect();
    (values, vectors)
}

fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, scale: f64) {
    let n = m.n();
    let apq = m[(p, q)];
    let g = apq.norm();
    if g <= 1e-300 || g <= 1e-18 * scale {
        return;
    }
    // U = diag(1, e^{-i phi}) * [[c, s], [-s, c]] brings the pair block to diagonal form.
    let ph = (apq / g).conj();
    let tau = (m[(q, q)].re - m[(p, p)].re) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = c * t;
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = ph * (-s);
    let u_qq = ph * c;
    for k in 0..n {
        let x = m[(k, p)];
        let y = m[(k, q)];
        m[(k, p)] = x * u_pp + y * u_qp;
        m[(k, q)] = x * u_pq + y * u_qq;
    }
    for k in 0..n {
        let x = m[(p, k)];
        let y = m[(q, k)];
        m[(p, k)] = u_pp.conj() * x + u_qp.conj() * y;
        m[(q, k)] = u_pq.conj() * x + u_qq.conj() * y;
    }
    m[(p, q)] = C64::zero();
    m[(q, p)] = C64::zero();
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
    for k in 0..n {
        let x = v[(k, p)];
        let y = v[(k, q)];
        v[(k, p)] = x * u_pp + y * u_qp;
        v[(k, q)] = x * u_pq + y * u_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonalizes_hermitian() {
        let a = ComplexMatrix::from_fn(3, |i, j| match (i, j) {
            (0, 0) => C64::new(2.0, 0.0),
            (1, 1) => C64::new(-1.0, 0.0),
            (2, 2) => C64::new(0.5, 0.0),
            (0, 1) => C64::new(1.0, 2.0),
            (1, 0) => C64::new(1.0, -2.0),
            (1, 2) => C64::new(0.0, 0.3),
            (2, 1) => C64::new(0.0, -0.3),
            _ => C64::zero(),
        });
        let (vals, vecs) = eigh(&a);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        for (l, x) in vals.iter().zip(&vecs) {
            let ax = a.apply(x);
            for i in 0..3 {
                assert!((ax[i] - x[i] * *l).norm() < 1e-12);
            }
        }
        let tr: f64 = vals.iter().sum();
        assert!((tr - 1.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_spectrum() {
        let (vals, vecs) = eigh(&ComplexMatrix::identity(4));
        assert!(vals.iter().all(|&l| (l - 1.0).abs() < 1e-15));
        assert_eq!(vecs.len(), 4);
    }
}
