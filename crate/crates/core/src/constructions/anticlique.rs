//! Quantum anticliques of low-dimensional operator systems.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{orth_complement, orthonormalize_at, CVector, ComplexMatrix, Projection, Tolerance, C64};
use crate::opsys::{certify, Certificate, Kind, OperatorSystem};
use crate::random::SeededRng;
use crate::solve::{min_norm_step, norm};

/// Randomized restarts before giving up.
pub const ANTICLIQUE_RESTARTS: usize = 40;
const JOINT_STEPS: usize = 80;
const VECTOR_STEPS: usize = 40;
const CONVERGED: f64 = 1e-14;

/// Rank-`k` projection `P` with `dim(PVP) = 1`, for `dim(V) <= (n - k)/(k - 1)`.
///
/// Each restart builds `u_1, ..., u_k` greedily: `u_j` is taken orthogonal
/// to every `A u_i` (`i < j`, `A` in `V`), which kills the off-diagonal
/// entries of the compression, and is fitted so that `<A u_j, u_j>` matches
/// `<A u_1, u_1>`. A joint Gauss-Newton refinement over `k`-frames then
/// drives the traceless part of every compression to zero.
pub fn anticlique_lowdim(v: &OperatorSystem, k: usize, seed: u64, tol: &Tolerance) -> Result<Certificate> {
    let n = v.n();
    let d = v.dim();
    if k < 2 {
        return Err(Error::invalid("anticlique search needs k >= 2"));
    }
    if k > n || d * (k - 1) > n - k {
        return Err(Error::precondition(format!(
            "dim(V) = {d} exceeds (n - k)/(k - 1) for n = {n}, k = {k}"
        )));
    }
    let herm = v.traceless_hermitian_basis(tol);
    let mut trace: Vec<String> = Vec::new();
    for attempt in 0..ANTICLIQUE_RESTARTS {
        let mut rng = SeededRng::derive(seed, attempt as u64);
        let frame = if herm.is_empty() { rng.frame(n, k) } else { refine(&herm, greedy_frame(&herm, n, k, &mut rng), n) };
        let p = Projection::from_orthonormal_frame(frame, tol)?;
        let cert = certify(v, &p, k, tol)?;
        if cert.kind == Kind::Anticlique {
            if attempt > 0 {
                trace.push(format!("anticlique: restart {} converged", attempt + 1));
            }
            return Ok(cert.with_trace_prefix(trace));
        }
        trace.push(format!("anticlique: restart {} ended with dim(PVP) = {}", attempt + 1, cert.compressed_dim));
    }
    Err(Error::SearchExhausted { what: "anticlique_lowdim", trace })
}

fn greedy_frame(herm: &[ComplexMatrix], n: usize, k: usize, rng: &mut SeededRng) -> Vec<CVector> {
    let u1 = rng.unit_vector(n);
    let targets: Vec<f64> = herm.iter().map(|h| h.form(&u1, &u1).re).collect();
    let mut frame = alloc::vec![u1];
    for _ in 1..k {
        let mut forbidden = frame.clone();
        for u in &frame {
            forbidden.extend(herm.iter().map(|h| h.apply(u)));
        }
        let sub = orth_complement(&forbidden, n, 1e-10);
        let x = if sub.is_empty() {
            let fallback = orth_complement(&frame, n, 1e-10);
            fallback[rng.below(fallback.len())].clone()
        } else {
            fit_vector(herm, &targets, &sub, rng)
        };
        frame.push(x);
    }
    orthonormalize_at(&frame, 1e-12).unwrap_or(frame)
}

/// Unit vector `x = S y` in the span of the orthonormal list `sub` with
/// `<H_a x, x>` as close to `targets` as Gauss-Newton gets.
fn fit_vector(herm: &[ComplexMatrix], targets: &[f64], sub: &[CVector], rng: &mut SeededRng) -> CVector {
    let local: Vec<ComplexMatrix> = herm.iter().map(|h| crate::linalg::compress_to_frame(sub, h)).collect();
    let mut y = rng.unit_vector(sub.len());
    let residual = |y: &CVector| -> Vec<f64> {
        let mut r: Vec<f64> = local.iter().zip(targets).map(|(h, t)| h.form(y, y).re - t).collect();
        r.push(y.inner(y).re - 1.0);
        r
    };
    let mut r = residual(&y);
    for _ in 0..VECTOR_STEPS {
        if norm(&r) < CONVERGED {
            break;
        }
        let images: Vec<CVector> = local.iter().map(|h| h.apply(&y)).collect();
        let mut cols = Vec::with_capacity(2 * y.len());
        for i in 0..y.len() {
            // d<Hy, y> along e_i is 2 Re (Hy)_i, along i e_i it is 2 Im (Hy)_i.
            let mut re: Vec<f64> = images.iter().map(|hy| 2.0 * hy[i].re).collect();
            re.push(2.0 * y[i].re);
            let mut im: Vec<f64> = images.iter().map(|hy| 2.0 * hy[i].im).collect();
            im.push(2.0 * y[i].im);
            cols.push(re);
            cols.push(im);
        }
        let step = min_norm_step(&cols, &r);
        let (next, nr) = backtrack(&r, |t| {
            let cand = CVector::new(
                (0..y.len()).map(|i| y[i] + C64::new(t * step[2 * i], t * step[2 * i + 1])).collect(),
            );
            let rr = residual(&cand);
            (cand, rr)
        });
        match next {
            Some(nx) => {
                y = nx;
                r = nr;
            }
            None => break,
        }
    }
    let x = crate::linalg::combine(&y, sub);
    x.normalized().unwrap_or(x)
}

fn backtrack<T>(r: &[f64], mut eval: impl FnMut(f64) -> (T, Vec<f64>)) -> (Option<T>, Vec<f64>) {
    let base = norm(r);
    let mut t = 1.0;
    for _ in 0..12 {
        let (cand, rr) = eval(t);
        if norm(&rr) < base {
            return (Some(cand), rr);
        }
        t *= 0.5;
    }
    (None, r.to_vec())
}

/// Traceless parts of the compressions `U^* H_a U`, as a real vector.
fn frame_residual(herm: &[ComplexMatrix], frame: &[CVector]) -> Vec<f64> {
    let k = frame.len();
    let mut r = Vec::with_capacity(herm.len() * (k * k - 1));
    for h in herm {
        let c = crate::linalg::compress_to_frame(frame, h);
        push_traceless(&mut r, |p, q| c[(p, q)], k);
    }
    r
}

fn push_traceless(r: &mut Vec<f64>, c: impl Fn(usize, usize) -> C64, k: usize) {
    for p in 0..k {
        for q in p + 1..k {
            let z = c(p, q);
            r.push(z.re);
            r.push(z.im);
        }
    }
    let last = c(k - 1, k - 1).re;
    for p in 0..k - 1 {
        r.push(c(p, p).re - last);
    }
}

/// Gauss-Newton over frames: steps `U + U_perp Z`, re-orthonormalized.
fn refine(herm: &[ComplexMatrix], mut frame: Vec<CVector>, n: usize) -> Vec<CVector> {
    let k = frame.len();
    let mut r = frame_residual(herm, &frame);
    for _ in 0..JOINT_STEPS {
        if norm(&r) < CONVERGED {
            break;
        }
        let perp = orth_complement(&frame, n, 1e-10);
        let ks: Vec<Vec<Vec<C64>>> = herm
            .iter()
            .map(|h| {
                let hu: Vec<CVector> = frame.iter().map(|u| h.apply(u)).collect();
                perp.iter().map(|x| hu.iter().map(|y| y.inner(x)).collect()).collect()
            })
            .collect();
        let mut cols = Vec::with_capacity(2 * perp.len() * k);
        for i in 0..perp.len() {
            for j in 0..k {
                for c in [C64::new(1.0, 0.0), C64::new(0.0, 1.0)] {
                    let mut col = Vec::with_capacity(r.len());
                    for kmat in &ks {
                        // d(U^* H U)[p][q] = conj(c) [p = j] K[i][q] + c [q = j] conj(K[i][p]).
                        let entry = |p: usize, q: usize| {
                            let mut z = C64::new(0.0, 0.0);
                            if p == j {
                                z += c.conj() * kmat[i][q];
                            }
                            if q == j {
                                z += c * kmat[i][p].conj();
                            }
                            z
                        };
                        push_traceless(&mut col, entry, k);
                    }
                    cols.push(col);
                }
            }
        }
        let step = min_norm_step(&cols, &r);
        let (next, nr) = backtrack(&r, |t| {
            let mut moved = frame.clone();
            let mut idx = 0;
            for x in &perp {
                for u in moved.iter_mut() {
                    u.axpy(C64::new(t * step[idx], t * step[idx + 1]), x);
                    idx += 2;
                }
            }
            let cand = orthonormalize_at(&moved, 1e-12).unwrap_or(moved);
            let rr = if cand.len() == k { frame_residual(herm, &cand) } else { alloc::vec![f64::INFINITY] };
            (cand, rr)
        });
        match next {
            Some(f) => {
                frame = f;
                r = nr;
            }
            None => break,
        }
    }
    frame
}
