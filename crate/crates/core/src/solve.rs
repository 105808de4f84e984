//! Minimum-norm Gauss-Newton steps for small real nonlinear systems.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;

use crate::linalg::{lstsq, C64};

/// Minimum-norm `delta` with `J delta ~= -r`, where `J` is given by columns.
pub(crate) fn min_norm_step(jac_cols: &[Vec<f64>], residual: &[f64]) -> Vec<f64> {
    let m = residual.len();
    let cols: Vec<Vec<C64>> =
        jac_cols.iter().map(|c| c.iter().map(|&x| C64::new(x, 0.0)).collect()).collect();
    let refs: Vec<&[C64]> = cols.iter().map(|c| c.as_slice()).collect();
    let rhs: Vec<C64> = residual.iter().map(|&x| C64::new(-x, 0.0)).collect();
    lstsq(&refs, m, &rhs, 1e-12).into_iter().map(|z| z.re).collect()
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}
