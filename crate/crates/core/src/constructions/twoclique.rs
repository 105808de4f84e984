//! Quantum 2-cliques of operator systems of dimension at least four.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{
    compress_to_frame, eigh, hs_inner, item_singular_values, lstsq, orthonormalize_at, rank_at, CVector, ComplexMatrix,
    Projection, Tolerance, C64,
};
use crate::opsys::{certify, real_orthonormalize, Certificate, Kind, OperatorSystem};
use crate::random::SeededRng;
use crate::solve::{min_norm_step, norm};

/// Random starts for each unit vector of the separator.
pub const SEPARATOR_SAMPLES: usize = 10_000;
/// Gauss-Newton steps per start.
pub const SEPARATOR_STEPS: usize = 100;
/// Samples of `(v, w)` in [`threedim_clique`].
pub const THREEDIM_RETRIES: usize = 50;
/// Whole-pipeline retries in [`two_clique`].
pub const TWO_CLIQUE_RETRIES: usize = 20;

/// Required `sigma_min / sigma_max` for a compressed family to count as independent.
const MARGIN: f64 = 1e-6;

fn re_tr(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    hs_inner(a, b).map(|z| z.re).unwrap_or(0.0)
}

fn relative_gap(items: &[ComplexMatrix]) -> f64 {
    let sigma = item_singular_values(items).unwrap_or_default();
    match (sigma.first(), sigma.last()) {
        (Some(&top), Some(&low)) if top > 0.0 => low / top,
        _ => 0.0,
    }
}

/// Rank-2 Hermitian `C = alpha (v v^* - w w^*)` with `Tr C = Tr(A_1 C) = Tr(A_2 C) = 0`
/// and `Tr(B C) = Tr(B^2) != 0`.
///
/// `B` must be Hermitian, nonzero and trace-orthogonal to `I`, `A_1`, `A_2`.
/// Writing `B = B+ - B-` with `alpha = Tr B+`, the unit vectors `v` and `w`
/// are solved for so that `<A v, v> = Tr(A B+)/alpha` and
/// `<A w, w> = Tr(A B-)/alpha` for `A` in `{A_1, A_2, B}`.
pub fn rank2_separator(
    a1: &ComplexMatrix,
    a2: &ComplexMatrix,
    b: &ComplexMatrix,
    seed: u64,
    tol: &Tolerance,
) -> Result<ComplexMatrix> {
    let n = b.n();
    for a in [a1, a2] {
        if a.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.n() });
        }
    }
    let bn = b.hs_norm();
    if bn == 0.0 {
        return Err(Error::ZeroInput);
    }
    for (name, m) in [("A1", a1), ("A2", a2), ("B", b)] {
        if !m.is_hermitian(1e-9 * m.hs_norm().max(1.0)) {
            return Err(Error::precondition(format!("{name} is not Hermitian")));
        }
    }
    let id = ComplexMatrix::identity(n);
    for (name, a) in [("I", &id), ("A1", a1), ("A2", a2)] {
        if re_tr(a, b).abs() > 1e-8 * bn * a.hs_norm().max(1.0) {
            return Err(Error::precondition(format!("Tr({name} B) is not zero")));
        }
    }
    let (vals, vecs) = eigh(b);
    let alpha: f64 = vals.iter().filter(|&&l| l > 0.0).sum();
    let mats = [a1, a2, b];
    let part_target = |positive: bool| -> [f64; 3] {
        let mut t = [0.0; 3];
        for (l, f) in vals.iter().zip(&vecs) {
            let w = if positive { l.max(0.0) } else { (-l).max(0.0) };
            if w > 0.0 {
                for (ti, a) in t.iter_mut().zip(mats) {
                    *ti += w * a.form(f, f).re / alpha;
                }
            }
        }
        t
    };
    let mut rng = SeededRng::derive(seed, 0x5e9);
    let v = solve_unit_vector(&mats, part_target(true), &vals, &vecs, alpha, true, &mut rng)?;
    let w = solve_unit_vector(&mats, part_target(false), &vals, &vecs, alpha, false, &mut rng)?;
    let c = (&ComplexMatrix::outer(&v, &v) - &ComplexMatrix::outer(&w, &w)).scale_real(alpha);
    let cn = c.hs_norm();
    for a in [&id, a1, a2] {
        if re_tr(a, &c).abs() > 1e-8 * cn * a.hs_norm().max(1.0) {
            return Err(Error::SearchExhausted {
                what: "rank2_separator",
                trace: alloc::vec![String::from("separator: orthogonality lost after refinement")],
            });
        }
    }
    if re_tr(b, &c).abs() < 1e-6 * bn * cn {
        return Err(Error::SearchExhausted {
            what: "rank2_separator",
            trace: alloc::vec![String::from("separator: Tr(BC) vanished")],
        });
    }
    let cols: Vec<CVector> = (0..n).map(|j| c.column(j)).collect();
    if rank_at(&cols, tol.cert_rel)? != 2 {
        return Err(Error::SearchExhausted {
            what: "rank2_separator",
            trace: alloc::vec![String::from("separator: v and w are parallel")],
        });
    }
    Ok(c)
}

#[allow(clippy::too_many_arguments)]
fn solve_unit_vector(
    mats: &[&ComplexMatrix; 3],
    target: [f64; 3],
    vals: &[f64],
    vecs: &[CVector],
    alpha: f64,
    positive: bool,
    rng: &mut SeededRng,
) -> Result<CVector> {
    let n = vecs[0].len();
    let scale = mats.iter().map(|m| m.hs_norm()).fold(1.0, f64::max);
    let residual = |x: &CVector| -> Vec<f64> {
        let mut r: Vec<f64> = mats.iter().zip(target).map(|(a, t)| a.form(x, x).re - t).collect();
        r.push(x.inner(x).re - 1.0);
        r
    };
    for sample in 0..SEPARATOR_SAMPLES {
        // Random-phase mixtures of the eigenvectors of the relevant sign match
        // <B x, x> exactly; later samples widen to arbitrary starts.
        let mut x = CVector::zeros(n);
        if sample < SEPARATOR_SAMPLES / 2 {
            for (l, f) in vals.iter().zip(vecs) {
                let w = if positive { l.max(0.0) } else { (-l).max(0.0) };
                if w > 0.0 {
                    let phase = core::f64::consts::TAU * rng.uniform();
                    x.axpy(C64::from_polar((w / alpha).sqrt(), phase), f);
                }
            }
        } else {
            x = rng.unit_vector(n);
        }
        let mut r = residual(&x);
        for _ in 0..SEPARATOR_STEPS {
            if norm(&r) <= 1e-14 * scale {
                break;
            }
            let images: Vec<CVector> = mats.iter().map(|a| a.apply(&x)).collect();
            let mut cols = Vec::with_capacity(2 * n);
            for i in 0..n {
                let mut re: Vec<f64> = images.iter().map(|ax| 2.0 * ax[i].re).collect();
                re.push(2.0 * x[i].re);
                let mut im: Vec<f64> = images.iter().map(|ax| 2.0 * ax[i].im).collect();
                im.push(2.0 * x[i].im);
                cols.push(re);
                cols.push(im);
            }
            let step = min_norm_step(&cols, &r);
            let mut t = 1.0;
            let base = norm(&r);
            let mut moved = false;
            for _ in 0..12 {
                let cand = CVector::new((0..n).map(|i| x[i] + C64::new(t * step[2 * i], t * step[2 * i + 1])).collect());
                let rr = residual(&cand);
                if norm(&rr) < base {
                    x = cand;
                    r = rr;
                    moved = true;
                    break;
                }
                t *= 0.5;
            }
            if !moved {
                break;
            }
        }
        if norm(&r) <= 1e-12 * scale {
            return x.normalized();
        }
    }
    Err(Error::SearchExhausted {
        what: "rank2_separator",
        trace: alloc::vec![format!("separator: no unit vector hit the targets in {SEPARATOR_SAMPLES} samples")],
    })
}

/// Rank-2 projection `P` with `dim(P span{A_0..A_3} P) = 4`, for four
/// independent Hermitian matrices (typically in `M_3`).
pub fn threedim_clique(mats: &[ComplexMatrix], seed: u64, tol: &Tolerance) -> Result<Projection> {
    if mats.len() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: mats.len() });
    }
    let n = mats[0].n();
    if n < 2 {
        return Err(Error::invalid("need n >= 2"));
    }
    if let Some(bad) = mats.iter().find(|m| m.n() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.n() });
    }
    let sigma = item_singular_values(mats)?;
    if crate::opsys::rank_of_spectrum(&sigma, tol.rank_rel) != 4 {
        return Err(Error::precondition("the four matrices are linearly dependent"));
    }
    let mut rng = SeededRng::derive(seed, 0x3d);
    for _ in 0..THREEDIM_RETRIES {
        let frame = rng.frame(n, 2);
        let comps: Vec<ComplexMatrix> = mats.iter().map(|a| compress_to_frame(&frame, a)).collect();
        if relative_gap(&comps) > MARGIN {
            return Projection::from_orthonormal_frame(frame, tol);
        }
    }
    Err(Error::SearchExhausted {
        what: "threedim_clique",
        trace: alloc::vec![format!("threedim: {THREEDIM_RETRIES} samples of (v, w) all gave a singular compression")],
    })
}

/// Quantum 2-clique of an operator system with `dim(V) >= 4`.
pub fn two_clique(v: &OperatorSystem, seed: u64, tol: &Tolerance) -> Result<Certificate> {
    let n = v.n();
    if v.dim() < 4 {
        return Err(Error::precondition(format!("two_clique needs dim(V) >= 4, got {}", v.dim())));
    }
    if n == 2 {
        let mut c = certify(v, &Projection::identity(2), 2, tol)?;
        c.note("two-clique: n = 2 and dim(V) = 4, so V = M_2");
        return Ok(c);
    }
    let herm = v.traceless_hermitian_basis(tol);
    let mut trace: Vec<String> = Vec::new();
    for attempt in 0..TWO_CLIQUE_RETRIES {
        let mut rng = SeededRng::derive(seed, attempt as u64);
        match attempt_two_clique(v, &herm, &mut rng, tol, &mut trace) {
            Ok(Some(cert)) => return Ok(cert.with_trace_prefix(trace)),
            Ok(None) => {}
            Err(e) => trace.push(format!("two-clique: attempt {} failed: {e}", attempt + 1)),
        }
    }
    Err(Error::SearchExhausted { what: "two_clique", trace })
}

fn attempt_two_clique(
    v: &OperatorSystem,
    herm: &[ComplexMatrix],
    rng: &mut SeededRng,
    tol: &Tolerance,
    trace: &mut Vec<String>,
) -> Result<Option<Certificate>> {
    let n = v.n();
    // (a) V0 = span{I, A1, A2, A3} with A_i random, traceless and orthonormal.
    let mixes: Vec<ComplexMatrix> = (0..3)
        .map(|_| {
            herm.iter().fold(ComplexMatrix::zeros(n), |acc, h| &acc + &h.scale_real(rng.normal()))
        })
        .collect();
    let a = real_orthonormalize(&mixes, n, 1e-9);
    if a.len() != 3 {
        trace.push(String::from("two-clique: random reduction lost rank"));
        return Ok(None);
    }
    let (a1, a2, a3) = (&a[0], &a[1], &a[2]);
    let id = ComplexMatrix::identity(n);

    // (b) Rank-3 P with {P, P A1 P, P A2 P} independent.
    let p_frame = rank3_frame(a1, a2, rng, trace);
    let c1 = compress_to_frame(&p_frame, a1);
    let c2 = compress_to_frame(&p_frame, a2);
    let i3 = ComplexMatrix::identity(3);

    // (c) A Hermitian B' completing the three compressions, then Q <= P.
    let span3 = real_orthonormalize(&[i3.clone(), c1.clone(), c2.clone()], 3, 1e-9);
    let mut b3 = rng.gue(3);
    for e in &span3 {
        b3 = &b3 - &e.scale_real(re_tr(&b3, e));
    }
    let q_local = threedim_clique(&[i3, c1, c2, b3], rng.next_u64(), tol)?;
    let q_frame: Vec<CVector> = q_local.frame().iter().map(|x| crate::linalg::combine(x, &p_frame)).collect();
    let family = [id.clone(), a1.clone(), a2.clone(), a3.clone()];
    let on_q: Vec<ComplexMatrix> = family.iter().map(|m| compress_to_frame(&q_frame, m)).collect();
    if relative_gap(&on_q) > MARGIN {
        trace.push(String::from("two-clique: Q already separates I, A1, A2, A3"));
        return finish(v, q_frame, tol);
    }

    // (d) Q A3 Q = alpha Q + beta Q A1 Q + gamma Q A2 Q; enlarge Q by a vector
    // from a rank-2 separator that breaks this relation.
    let cols: Vec<&[C64]> = on_q[..3].iter().map(|m| m.entries()).collect();
    let coef = lstsq(&cols, 4, on_q[3].entries(), 1e-12);
    let b = {
        let span = real_orthonormalize(&[id.clone(), a1.clone(), a2.clone()], n, 1e-9);
        span.iter().fold(a3.clone(), |acc, e| &acc - &e.scale_real(re_tr(a3, e)))
    };
    let c = rank2_separator(a1, a2, &b, rng.next_u64(), tol)?;
    let (vals, vecs) = eigh(&c);
    let violation = |x: &CVector| -> f64 {
        (a3.form(x, x) - coef[0] * x.inner(x) - coef[1] * a1.form(x, x) - coef[2] * a2.form(x, x)).norm()
    };
    let top = vecs[vals.len() - 1].clone();
    let bottom = vecs[0].clone();
    let x = if violation(&top) >= violation(&bottom) { top } else { bottom };
    let mut enlarged = q_frame.clone();
    enlarged.push(x);
    let q3 = orthonormalize_at(&enlarged, 1e-9)?;
    if q3.len() != 3 {
        trace.push(String::from("two-clique: separator vector already lies in ran(Q)"));
        return Ok(None);
    }
    let on_q3: Vec<ComplexMatrix> = family.iter().map(|m| compress_to_frame(&q3, m)).collect();
    let local = threedim_clique(&on_q3, rng.next_u64(), tol)?;
    trace.push(String::from("two-clique: enlarged Q by a separator vector and reapplied the M_3 step"));
    let frame: Vec<CVector> = local.frame().iter().map(|y| crate::linalg::combine(y, &q3)).collect();
    finish(v, frame, tol)
}

fn finish(v: &OperatorSystem, frame: Vec<CVector>, tol: &Tolerance) -> Result<Option<Certificate>> {
    let p = Projection::from_orthonormal_frame(frame, tol)?;
    let cert = certify(v, &p, 2, tol)?;
    Ok(if cert.kind == Kind::Clique { Some(cert) } else { None })
}

/// Orthonormal 3-frame on which `I`, `A1`, `A2` compress to independent
/// matrices: three eigenvectors chosen from a common eigenbasis when `A1`
/// and `A2` commute, or from an eigenbasis of `A1` otherwise.
fn rank3_frame(a1: &ComplexMatrix, a2: &ComplexMatrix, rng: &mut SeededRng, trace: &mut Vec<String>) -> Vec<CVector> {
    let n = a1.n();
    if n == 3 {
        return (0..3).map(|i| CVector::basis(3, i)).collect();
    }
    let comm = &a1.matmul(a2) - &a2.matmul(a1);
    let commuting = comm.hs_norm() <= 1e-9 * a1.hs_norm() * a2.hs_norm();
    let basis = if commuting {
        let mix = a1 + &a2.scale_real(0.5 + rng.uniform());
        eigh(&mix).1
    } else {
        eigh(a1).1
    };
    trace.push(String::from(if commuting {
        "two-clique: A1, A2 commute; using a common eigenbasis"
    } else {
        "two-clique: A1, A2 do not commute; using an eigenbasis of A1"
    }));
    let m1 = compress_to_frame(&basis, a1);
    let m2 = compress_to_frame(&basis, a2);
    let sub = |m: &ComplexMatrix, t: &[usize; 3]| ComplexMatrix::from_fn(3, |i, j| m[(t[i], t[j])]);
    let mut candidates: Vec<[usize; 3]> = Vec::new();
    if n <= 24 {
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    candidates.push([i, j, l]);
                }
            }
        }
    } else {
        for _ in 0..2000 {
            let i = rng.below(n);
            let j = rng.below(n);
            let l = rng.below(n);
            if i != j && j != l && i != l {
                candidates.push([i, j, l]);
            }
        }
    }
    let i3 = ComplexMatrix::identity(3);
    let mut best = (0.0, [0, 1, 2]);
    for t in candidates {
        let g = relative_gap(&[i3.clone(), sub(&m1, &t), sub(&m2, &t)]);
        if g > best.0 {
            best = (g, t);
        }
    }
    if best.0 > MARGIN {
        best.1.iter().map(|&i| basis[i].clone()).collect()
    } else {
        trace.push(String::from("two-clique: no eigenvector triple separated I, A1, A2; using a random frame"));
        rng.frame(n, 3)
    }
}
