//! Seeded generators for inputs satisfying the hypotheses of the
//! constructions. Random matrices almost never have the required sparsity
//! patterns, so tests and experiments build them here.

use alloc::vec::Vec;

use crate::constructions::{blocks2_sizes, BlockHypothesisInput};
use crate::error::Result;
use crate::linalg::{ComplexMatrix, Tolerance, C64};
use crate::opsys::OperatorSystem;
use crate::random::SeededRng;

/// Random admissible input for [`crate::constructions::blocks_clique`]:
/// `A_i` is a random Hermitian matrix on the leading `i x i` block with
/// `(A_i)_ii = 1`.
pub fn blocks_instance(k: usize, seed: u64) -> BlockHypothesisInput {
    let n = k * k + k - 1;
    let mut rng = SeededRng::derive(seed, 0x1);
    let matrices = (0..k * k)
        .map(|i| {
            let mut a = ComplexMatrix::zeros(n);
            for r in 0..=i {
                for s in r..=i {
                    if r == s {
                        a[(r, r)] = C64::new(if r == i { 1.0 } else { rng.normal() }, 0.0);
                    } else {
                        let z = rng.complex_normal();
                        a[(r, s)] = z;
                        a[(s, r)] = z.conj();
                    }
                }
            }
            a
        })
        .collect();
    BlockHypothesisInput { k, matrices }
}

/// Tail structure of a generated chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailMode {
    /// Diagonal tails drawn independently: the first block already has
    /// independent tails.
    Generic,
    /// Diagonal tails drawn from a two-dimensional family, so every block is
    /// dependent and the full reduction runs.
    LowRank,
}

/// A chain `A_1..A_m` in `M_n`, `n = k^4 + k^3 + k - 1`, with
/// `<A_i e_i, e_{i+1}> != 0` and off-diagonal support inside the leading
/// `(i+1) x (i+1)` block, together with the operator system it spans.
pub fn blocks2_instance(k: usize, mode: TailMode, seed: u64) -> (OperatorSystem, Vec<ComplexMatrix>) {
    let (n, m) = blocks2_sizes(k);
    let mut rng = SeededRng::derive(seed, 0x2);
    let patterns: Vec<Vec<f64>> = (0..2).map(|_| (0..n).map(|_| rng.normal()).collect()).collect();
    let chain: Vec<ComplexMatrix> = (0..m)
        .map(|i| {
            let mut a = ComplexMatrix::zeros(n);
            for r in 0..=i + 1 {
                for s in 0..=i + 1 {
                    a[(r, s)] = rng.complex_normal();
                }
            }
            a[(i + 1, i)] = C64::new(1.0 + rng.uniform(), 0.0);
            let (c0, c1) = (rng.normal(), rng.normal());
            for q in i + 2..n {
                a[(q, q)] = match mode {
                    TailMode::Generic => rng.complex_normal(),
                    TailMode::LowRank => C64::new(c0 * patterns[0][q] + c1 * patterns[1][q], 0.0),
                };
            }
            a
        })
        .collect();
    let v = OperatorSystem::from_span(&chain, n, &Tolerance::default()).expect("shapes agree");
    (v, chain)
}

/// `span{I, D_1, ..., D_{d-1}}` for random real diagonal `D_j`: an operator
/// system of dimension `d` inside `D_n`.
pub fn random_diagonal_system(n: usize, d: usize, seed: u64) -> Result<OperatorSystem> {
    if d == 0 || d > n {
        return Err(crate::Error::InvalidArgument(alloc::format!("need 1 <= d <= n, got n = {n}, d = {d}")));
    }
    let tol = Tolerance::default();
    let mut rng = SeededRng::derive(seed, 0x3);
    loop {
        let diags: Vec<ComplexMatrix> = (1..d)
            .map(|_| ComplexMatrix::from_real_diag(&(0..n).map(|_| rng.normal()).collect::<Vec<_>>()))
            .collect();
        let v = OperatorSystem::from_span(&diags, n, &tol)?;
        if v.dim() == d {
            return Ok(v);
        }
    }
}
