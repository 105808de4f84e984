//! Seeded random sources for test instances and genericity searches.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::linalg::{orthonormalize_at, CVector, ComplexMatrix, C64};

/// Deterministic random source. Two instances built from the same seed and
/// stream produce the same sequence.
#[derive(Clone, Debug)]
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng { inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent sub-stream of `seed`, used to keep unrelated searches from
    /// sharing random draws.
    pub fn derive(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        SeededRng { inner }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        (self.uniform() * n as f64) as usize % n.max(1)
    }

    /// Standard normal via Box-Muller.
    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (core::f64::consts::TAU * u2).cos()
    }

    /// Complex Gaussian with independent standard normal parts.
    pub fn complex_normal(&mut self) -> C64 {
        C64::new(self.normal(), self.normal())
    }

    pub fn gaussian_vector(&mut self, n: usize) -> CVector {
        CVector::new((0..n).map(|_| self.complex_normal()).collect())
    }

    /// Uniformly distributed unit vector in `C^n`.
    pub fn unit_vector(&mut self, n: usize) -> CVector {
        loop {
            let v = self.gaussian_vector(n);
            if let Ok(u) = v.normalized() {
                return u;
            }
        }
    }

    pub fn gaussian_matrix(&mut self, n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, |_, _| self.complex_normal())
    }

    /// GUE-style Hermitian matrix `(G + G^*)/2` with Gaussian `G`.
    pub fn gue(&mut self, n: usize) -> ComplexMatrix {
        self.gaussian_matrix(n).hermitian_part()
    }

    /// Haar-like random unitary: orthonormalized Gaussian columns.
    pub fn unitary(&mut self, n: usize) -> ComplexMatrix {
        loop {
            let cols: Vec<CVector> = (0..n).map(|_| self.gaussian_vector(n)).collect();
            let q = orthonormalize_at(&cols, 1e-12).unwrap_or_default();
            if q.len() == n {
                return ComplexMatrix::from_columns(&q);
            }
        }
    }

    /// Orthonormal `k`-frame in `C^n`.
    pub fn frame(&mut self, n: usize, k: usize) -> Vec<CVector> {
        loop {
            let cols: Vec<CVector> = (0..k).map(|_| self.gaussian_vector(n)).collect();
            let q = orthonormalize_at(&cols, 1e-12).unwrap_or_default();
            if q.len() == k {
                return q;
            }
        }
    }
}
