//! Cliques from sparsity-patterned families of matrices.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::constructions::diagonal::normalized_completion;
use crate::error::{Error, Result};
use crate::linalg::{
    complete_basis, compress_to_frame, eigh, hermitian_split, item_singular_values, orth_complement, CVector,
    ComplexMatrix, Projection, Tolerance, C64,
};
use crate::opsys::{certify, rank_of_spectrum, Certificate, Kind, OperatorSystem};
use crate::random::SeededRng;
use crate::ramsey::diagonal_route;

/// Per-step sample budget when choosing the vectors `v_i`.
pub const BLOCKS_SAMPLE_BUDGET: usize = 64;

/// Smallest accepted `sigma_min / sigma_max` for the partial family `A'_1..A'_i`, each scaled to unit norm.
const STEP_CONDITION: f64 = 1e-7;
const STEP_CANDIDATES: usize = 8;

/// `k^2` Hermitian matrices in `M_n`, `n = k^2 + k - 1`, with `(A_i)_ii = 1`
/// and `(A_i)_rs = 0` whenever `max(r, s) > i`.
#[derive(Clone, Debug)]
pub struct BlockHypothesisInput {
    pub k: usize,
    pub matrices: Vec<ComplexMatrix>,
}

fn hyp_slack(a: &ComplexMatrix) -> f64 {
    1e-9 * a.max_abs().max(1.0)
}

impl BlockHypothesisInput {
    pub fn new(k: usize, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        let input = BlockHypothesisInput { k, matrices };
        input.validate()?;
        Ok(input)
    }

    pub fn n(&self) -> usize {
        self.k * self.k + self.k - 1
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.k;
        if k == 0 {
            return Err(Error::invalid("k must be positive"));
        }
        if self.matrices.len() != k * k {
            return Err(Error::DimensionMismatch { expected: k * k, found: self.matrices.len() });
        }
        let n = self.n();
        for (i, a) in self.matrices.iter().enumerate() {
            if a.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: a.n() });
            }
            let slack = hyp_slack(a);
            if !a.is_hermitian(slack) {
                return Err(Error::precondition(format!("A_{} is not Hermitian", i + 1)));
            }
            if (a[(i, i)] - C64::new(1.0, 0.0)).norm() > slack {
                return Err(Error::precondition(format!("<A_{0} e_{0}, e_{0}> != 1", i + 1)));
            }
            for r in 0..n {
                for s in 0..n {
                    if r.max(s) > i && a[(r, s)].norm() > slack {
                        return Err(Error::precondition(format!(
                            "A_{} has a nonzero entry at ({}, {}) outside its leading block",
                            i + 1,
                            r + 1,
                            s + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `sum_{r,s} a_rs v_r v_s^*` over the leading `vs.len()` indices.
fn pushed_forward(a: &ComplexMatrix, vs: &[CVector], k: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(k);
    for (r, vr) in vs.iter().enumerate() {
        for (s, vs_) in vs.iter().enumerate() {
            let c = a[(r, s)];
            if c.norm() == 0.0 {
                continue;
            }
            for x in 0..k {
                for y in 0..k {
                    out[(x, y)] += c * vr[x] * vs_[y].conj();
                }
            }
        }
    }
    out
}

/// Each item scaled to unit HS norm; independence does not see the scale.
fn unit_scaled(items: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
    items.iter().map(|a| a.scale_real(1.0 / a.hs_norm().max(f64::MIN_POSITIVE))).collect()
}

fn condition(items: &[ComplexMatrix]) -> f64 {
    let sigma = item_singular_values(&unit_scaled(items)).unwrap_or_default();
    match (sigma.first(), sigma.last()) {
        (Some(&top), Some(&low)) if top > 0.0 => low / top,
        _ => 0.0,
    }
}

/// Quantum `k`-clique of `span{I, A_1, ..., A_{k^2}}`.
///
/// Chooses `v_i` in `C^k` one at a time so that the pushed-forward matrices
/// `A'_i = sum a_rs v_r v_s^*` stay independent, completes the `v_i` to an
/// orthonormal family in `C^n`, and certifies the resulting projection.
pub fn blocks_clique(input: &BlockHypothesisInput, seed: u64, tol: &Tolerance) -> Result<Certificate> {
    input.validate()?;
    let k = input.k;
    let n = input.n();
    let mut rng = SeededRng::derive(seed, 0xb10c);
    let mut trace: Vec<String> = Vec::new();
    let mut vs: Vec<CVector> = alloc::vec![rng.unit_vector(k)];
    let mut pushed: Vec<ComplexMatrix> = alloc::vec![pushed_forward(&input.matrices[0], &vs, k)];
    for i in 1..k * k {
        let a = &input.matrices[i];
        let b = pushed_forward(a, &vs, k);
        let mut u = CVector::zeros(k);
        for (r, vr) in vs.iter().enumerate() {
            u.axpy(a[(r, i)], vr);
        }
        let b_prime = &b - &ComplexMatrix::outer(&u, &u);
        // Best-conditioned of the first few samples; a merely admissible
        // choice lets the conditioning decay over the k^2 steps.
        let mut chosen: Option<(f64, CVector, ComplexMatrix)> = None;
        for attempt in 0..BLOCKS_SAMPLE_BUDGET {
            if attempt >= STEP_CANDIDATES && chosen.is_some() {
                break;
            }
            let tilde = rng.gaussian_vector(k);
            let candidate = &b_prime + &ComplexMatrix::outer(&tilde, &tilde);
            pushed.push(candidate);
            let cond = condition(&pushed);
            let cand = pushed.pop().unwrap();
            if cond > STEP_CONDITION && chosen.as_ref().is_none_or(|(c, _, _)| cond > *c) {
                if attempt >= STEP_CANDIDATES {
                    trace.push(format!("blocks: step {} accepted after {} samples", i + 1, attempt + 1));
                }
                chosen = Some((cond, &tilde - &u, cand));
            }
        }
        let (_, v, cand) = chosen.ok_or_else(|| {
            trace.push(format!("blocks: no admissible vector at step {} in {BLOCKS_SAMPLE_BUDGET} samples", i + 1));
            Error::SearchExhausted { what: "blocks_clique", trace: trace.clone() }
        })?;
        vs.push(v);
        pushed.push(cand);
    }
    // Earlier A'_i only involve earlier v's; recompute all of them to confirm.
    let final_pushed: Vec<ComplexMatrix> = input.matrices.iter().map(|a| pushed_forward(a, &vs, k)).collect();
    let sigma = item_singular_values(&unit_scaled(&final_pushed))?;
    if rank_of_spectrum(&sigma, tol.rank_rel) != k * k {
        trace.push(String::from("blocks: pushed-forward family lost rank after completion"));
        return Err(Error::SearchExhausted { what: "blocks_clique", trace });
    }
    let frame = normalized_completion(&vs)?;
    let basis = complete_basis(&frame, n);
    let local: Vec<CVector> = (0..k).map(|a| CVector::new((0..n).map(|j| basis[j][a].conj()).collect())).collect();
    let p = Projection::from_orthonormal_frame(local, tol)?;
    let v = OperatorSystem::from_span(&input.matrices, n, tol)?;
    let mut cert = certify(&v, &p, k, tol)?;
    trace.push(format!("blocks: {} vectors in C^{k} with independent pushed-forward family", k * k));
    cert.trace.splice(0..0, trace);
    Ok(cert)
}

/// Parameters of the chain lemma for a given `k`.
pub fn blocks2_sizes(k: usize) -> (usize, usize) {
    let m = k * k * k * k + k * k * k;
    (m + k - 1, m)
}

fn check_chain(v: &OperatorSystem, chain: &[ComplexMatrix], k: usize, tol: &Tolerance) -> Result<()> {
    if k < 2 {
        return Err(Error::invalid("the chain construction needs k >= 2"));
    }
    let (n, m) = blocks2_sizes(k);
    if v.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.n() });
    }
    if chain.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: chain.len() });
    }
    for (i, a) in chain.iter().enumerate() {
        if a.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.n() });
        }
        let slack = hyp_slack(a);
        if a[(i + 1, i)].norm() <= slack {
            return Err(Error::precondition(format!("<A_{0} e_{0}, e_{1}> vanishes", i + 1, i + 2)));
        }
        for r in 0..n {
            for s in 0..n {
                if r != s && r.max(s) > i + 1 && a[(r, s)].norm() > slack {
                    return Err(Error::precondition(format!(
                        "A_{} has a nonzero off-diagonal entry at ({}, {})",
                        i + 1,
                        r + 1,
                        s + 1
                    )));
                }
            }
        }
        if !v.contains(a, tol) {
            return Err(Error::precondition(format!("A_{} does not lie in the operator system", i + 1)));
        }
    }
    Ok(())
}

/// Quantum `k`-clique of an operator system in `M_n`, `n = k^4 + k^3 + k - 1`,
/// that contains a chain `A_1..A_m`, `m = k^4 + k^3`, with
/// `<A_i e_i, e_{i+1}> != 0` and off-diagonal entries vanishing beyond index `i + 1`.
///
/// Blocks of `k^2 + k - 1` consecutive chain elements are examined in turn.
/// If a block has independent tails, the diagonal compression on the tail
/// window already has a clique. Otherwise each block yields one vector
/// `v_b` and one Hermitian `B_b` with `<B_b v_b, v_b> = 1`, and after `k^2`
/// blocks the `B_b` satisfy the hypotheses of [`blocks_clique`].
pub fn blocks2_clique(
    v: &OperatorSystem,
    chain: &[ComplexMatrix],
    k: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<Certificate> {
    check_chain(v, chain, k, tol)?;
    let (n, m) = blocks2_sizes(k);
    let s = k * k + k;
    let mut trace: Vec<String> = Vec::new();
    let mut vs: Vec<CVector> = Vec::with_capacity(k * k);
    let mut bs: Vec<ComplexMatrix> = Vec::with_capacity(k * k);
    for b in 0..k * k {
        let idx: Vec<usize> = (b * s..b * s + s - 1).collect();
        let w0 = (b + 1) * s;
        let tails: Vec<CVector> =
            idx.iter().map(|&i| CVector::new((w0..n).map(|q| chain[i][(q, q)]).collect())).collect();
        let sigma = item_singular_values(&tails)?;
        let full_search = rank_of_spectrum(&sigma, tol.rank_rel) == idx.len();
        let full_cert = rank_of_spectrum(&sigma, tol.cert_rel) == idx.len();
        if full_search != full_cert {
            trace.push(format!("blocks2: tail independence of block {} depends on tolerance", b + 1));
            return Err(Error::ToleranceAmbiguous { what: "blocks2_clique", trace });
        }
        if full_search {
            trace.push(format!("blocks2: block {} has independent tails; diagonal route on e_{}..e_{n}", b + 1, w0 + 1));
            let window: Vec<CVector> = (w0..n).map(|q| CVector::basis(n, q)).collect();
            let diag: Vec<ComplexMatrix> = tails.iter().map(|t| ComplexMatrix::from_diag(t.entries())).collect();
            let w = OperatorSystem::from_span(&diag, n - w0, tol)?;
            let local = diagonal_route(&w, k, seed, tol)?;
            if local.kind != Kind::Clique {
                trace.extend(local.trace);
                trace.push(String::from("blocks2: diagonal route did not produce a clique"));
                return Err(Error::SearchExhausted { what: "blocks2_clique", trace });
            }
            let p = Projection::lift(local.projection.frame(), &window);
            return Ok(certify(v, &p, k, tol)?.with_trace_prefix(trace));
        }
        let null = orth_complement(&row_conjugates(&tails), idx.len(), tol.rank_rel);
        let alpha = null.first().ok_or_else(|| {
            trace.push(format!("blocks2: no null combination for block {}", b + 1));
            Error::SearchExhausted { what: "blocks2_clique", trace: trace.clone() }
        })?;
        let amax = alpha.entries().iter().map(|z| z.norm()).fold(0.0, f64::max);
        let pivot = (0..idx.len()).rev().find(|&t| alpha[t].norm() > 1e-8 * amax).unwrap_or(0);
        let mut combo = ComplexMatrix::zeros(n);
        for (t, &i) in idx.iter().enumerate() {
            combo = &combo + &chain[i].scale(alpha[t]);
        }
        let window: Vec<CVector> = (b * s..w0).map(|q| CVector::basis(n, q)).collect();
        let (re, im) = hermitian_split(&combo);
        let mut best: Option<(f64, ComplexMatrix, CVector)> = None;
        for h in [re, im] {
            let (vals, vecs) = eigh(&compress_to_frame(&window, &h));
            for (lam, x) in vals.iter().zip(vecs) {
                if best.as_ref().is_none_or(|(l, _, _)| lam.abs() > l.abs()) {
                    best = Some((*lam, h.clone(), x));
                }
            }
        }
        let (lam, h, x) = best.expect("window is nonempty");
        if lam.abs() <= tol.rank_rel * combo.hs_norm() {
            trace.push(format!("blocks2: block {} combination vanishes on its window", b + 1));
            return Err(Error::SearchExhausted { what: "blocks2_clique", trace });
        }
        trace.push(format!(
            "blocks2: block {} dependent; pivot A_{}, <B v, v> scaled from {lam:.3e}",
            b + 1,
            idx[pivot] + 1
        ));
        vs.push(crate::linalg::combine(&x, &window));
        bs.push(h.scale_real(1.0 / lam));
    }
    let mut frame = vs.clone();
    frame.extend((m..n).map(|q| CVector::basis(n, q)));
    let compressed: Vec<ComplexMatrix> = bs.iter().map(|b| compress_to_frame(&frame, b)).collect();
    let input = BlockHypothesisInput::new(k, compressed)?;
    let local = blocks_clique(&input, seed, tol)?;
    let p = Projection::lift(local.projection.frame(), &frame);
    trace.extend(local.trace);
    Ok(certify(v, &p, k, tol)?.with_trace_prefix(trace))
}

/// For vectors `t_i` (columns of `T`), the conjugated rows of `T`; their
/// orthogonal complement is the null space of `T`.
fn row_conjugates(cols: &[CVector]) -> Vec<CVector> {
    let len = cols.first().map_or(0, CVector::len);
    (0..len).map(|q| CVector::new(cols.iter().map(|c| c[q].conj()).collect())).collect()
}
