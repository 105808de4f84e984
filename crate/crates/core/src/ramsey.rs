//! Clique-or-anticlique search: the diagonal route and the two-phase
//! vector search with adjustable thresholds.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::constructions::{anticlique_lowdim, blocks2_clique, blocks2_sizes, diagonal_clique_at};
use crate::error::{Error, Result};
use crate::linalg::{
    combine, compress_to_frame, eigh, orth_complement, rank_at, svd, CVector, ComplexMatrix, Projection, Tolerance, C64,
};
use crate::opsys::{certify, compress_to_frame_system, Certificate, Kind, OperatorSystem};
use crate::random::SeededRng;

/// Thresholds and budgets for [`find_clique_or_anticlique`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchParams {
    /// Phase 1 accepts a vector whose projected orbit has dimension below this.
    pub orbit_threshold: usize,
    /// Number of phase-1 vectors after which the diagonal route is taken.
    pub phase1_steps: usize,
    /// Maximum chain length built in phase 2.
    pub phase2_steps: usize,
    /// Whole-pipeline attempts; attempt `a` uses seed `seed + a`.
    pub retry_budget: usize,
    pub seed: u64,
}

impl SearchParams {
    /// The values that make the dichotomy provable in `M_{8k^11}`:
    /// threshold `8k^8`, `k^3` phase-1 steps, chains of length `2k^4`.
    pub fn proof_scale(k: usize) -> Self {
        let k = k as u64;
        SearchParams {
            orbit_threshold: (8 * k.pow(8)) as usize,
            phase1_steps: k.pow(3) as usize,
            phase2_steps: (2 * k.pow(4)) as usize,
            retry_budget: 3,
            seed: 0,
        }
    }

    /// Small thresholds for runs in dimensions far below the proof scale.
    pub fn desk_scale(k: usize) -> Self {
        let phase1 = (k * k * k - k + 1).max(k);
        SearchParams { orbit_threshold: phase1, phase1_steps: phase1, phase2_steps: phase1, retry_budget: 3, seed: 0 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.orbit_threshold == 0 || self.phase1_steps == 0 || self.phase2_steps == 0 || self.retry_budget == 0 {
            return Err(Error::invalid("search parameters must be positive"));
        }
        Ok(())
    }
}

fn diagonal_slack(a: &ComplexMatrix) -> f64 {
    1e-9 * a.hs_norm().max(1e-300)
}

/// Fallback certificate on the coordinate projection `e_1..e_k`.
fn coordinate_certificate(v: &OperatorSystem, k: usize, tol: &Tolerance) -> Result<Certificate> {
    certify(v, &Projection::coordinate(v.n(), &(0..k).collect::<Vec<_>>())?, k, tol)
}

/// Clique or anticlique of an operator system contained in the diagonal
/// algebra `D_n`.
///
/// If `dim(V) >= k^2 + k - 1`, picks `k^2 + k - 1` coordinates on which `V`
/// restricts to the full diagonal algebra and embeds a diagonal clique
/// there; if `dim(V) <= (n - k)/(k - 1)`, extracts an anticlique. For
/// `n >= k^3 - k + 1` one of the two always applies.
pub fn diagonal_route(v: &OperatorSystem, k: usize, seed: u64, tol: &Tolerance) -> Result<Certificate> {
    let n = v.n();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    if let Some(bad) = v.basis().iter().position(|a| !a.is_diagonal(diagonal_slack(a))) {
        return Err(Error::precondition(format!("basis element {} is not diagonal", bad + 1)));
    }
    let d = v.dim();
    let m = k * k + k - 1;
    if d >= m {
        let coords = select_coordinates(v, m);
        if coords.len() < m {
            let mut c = coordinate_certificate(v, k, tol)?;
            c.kind = Kind::Neither;
            c.note(format!("diagonal route: only {} independent coordinates found", coords.len()));
            return Ok(c);
        }
        let dc = diagonal_clique_at(m, k, tol)?;
        let outer: Vec<CVector> = coords.iter().map(|&i| CVector::basis(n, i)).collect();
        let p = Projection::lift(&dc.standard_frame(), &outer);
        let mut c = certify(v, &p, k, tol)?;
        c.note(format!(
            "diagonal route: dim(V) = {d} >= {m}; clique on coordinates {:?}",
            coords.iter().map(|i| i + 1).collect::<Vec<_>>()
        ));
        return Ok(c);
    }
    if k >= 2 && d * (k - 1) <= n - k {
        let mut c = anticlique_lowdim(v, k, seed, tol)?;
        c.note(format!("diagonal route: dim(V) = {d} <= (n - k)/(k - 1); anticlique"));
        return Ok(c);
    }
    let mut c = coordinate_certificate(v, k, tol)?;
    c.note(format!(
        "diagonal route: dim(V) = {d} is between (n - k)/(k - 1) and k^2 + k - 2 for n = {n}; neither branch applies"
    ));
    if c.kind != Kind::Neither {
        c.note("diagonal route: the coordinate fallback happens to certify");
    }
    Ok(c)
}

/// Greedy pivoted choice of `m` coordinates on which the diagonals of `V`
/// have full rank.
fn select_coordinates(v: &OperatorSystem, m: usize) -> Vec<usize> {
    let n = v.n();
    // Column i holds coordinate i of every basis diagonal.
    let mut cols: Vec<CVector> =
        (0..n).map(|i| CVector::new(v.basis().iter().map(|a| a[(i, i)]).collect())).collect();
    let scale = cols.iter().map(CVector::norm).fold(0.0, f64::max);
    let mut chosen = Vec::with_capacity(m);
    while chosen.len() < m {
        let (best, norm) = cols
            .iter()
            .enumerate()
            .filter(|(i, _)| !chosen.contains(i))
            .map(|(i, c)| (i, c.norm()))
            .fold((usize::MAX, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best == usize::MAX || norm <= 1e-9 * scale {
            break;
        }
        chosen.push(best);
        let q = cols[best].scale(C64::new(1.0 / norm, 0.0));
        for c in cols.iter_mut() {
            let proj = c.inner(&q);
            c.axpy(-proj, &q);
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Orthonormal basis of `(V x_1)^⊥ ∩ ... ∩ (V x_r)^⊥`.
fn joint_orbit_complement(v: &OperatorSystem, existing: &[CVector], tol: &Tolerance) -> Vec<CVector> {
    let images: Vec<CVector> = existing.iter().flat_map(|x| v.basis().iter().map(move |a| a.apply(x))).collect();
    orth_complement(&images, v.n(), tol.rank_rel)
}

/// Dimension of the orbit `V x` projected onto the span of the orthonormal list `f`.
fn projected_orbit_dim(v: &OperatorSystem, f: &[CVector], x: &CVector, tol: &Tolerance) -> usize {
    let images: Vec<CVector> = v
        .basis()
        .iter()
        .map(|a| {
            let ax = a.apply(x);
            CVector::new(f.iter().map(|fi| ax.inner(fi)).collect())
        })
        .collect();
    rank_at(&images, tol.rank_rel).unwrap_or(0)
}

/// Unit vector in the joint orbit complement of `existing` whose orbit,
/// projected onto that complement, has dimension below `threshold`.
///
/// Candidates, in order: the complement's own basis vectors, eigenvectors of
/// a random Hermitian element compressed to the complement, approximate
/// common eigenvectors from an alternating least-squares iteration, and a
/// few random vectors.
pub fn phase1_vector_search(
    v: &OperatorSystem,
    existing: &[CVector],
    threshold: usize,
    seed: u64,
    tol: &Tolerance,
) -> Option<CVector> {
    let f = joint_orbit_complement(v, existing, tol);
    if f.is_empty() {
        return None;
    }
    let mut rng = SeededRng::derive(seed, 0x9a5e + existing.len() as u64);
    let accept = |x: &CVector| projected_orbit_dim(v, &f, x, tol) < threshold;
    for x in &f {
        if accept(x) {
            return Some(x.clone());
        }
    }
    let herm = v.hermitian_basis(tol);
    let local: Vec<ComplexMatrix> = herm.iter().map(|h| compress_to_frame(&f, h)).collect();
    let mix = local.iter().fold(ComplexMatrix::zeros(f.len()), |acc, h| &acc + &h.scale_real(rng.normal()));
    let (_, eig) = eigh(&mix);
    for y in &eig {
        let x = combine(y, &f);
        if accept(&x) {
            return Some(x);
        }
    }
    for _ in 0..4 {
        let y = common_eigenvector(&local, &mut rng);
        let x = combine(&y, &f);
        if accept(&x) {
            return Some(x);
        }
    }
    for _ in 0..4 {
        let x = combine(&rng.unit_vector(f.len()), &f);
        if accept(&x) {
            return Some(x);
        }
    }
    None
}

/// Approximate common eigenvector: alternately fix `c_t = <H_t y, y>` and take
/// `y` as the smallest right singular vector of the stacked `H_t - c_t I`,
/// read off the Gram matrix `sum_t (H_t - c_t I)^2`.
fn common_eigenvector(local: &[ComplexMatrix], rng: &mut SeededRng) -> CVector {
    let m = local.first().map_or(0, ComplexMatrix::n);
    let mut y = rng.unit_vector(m);
    for _ in 0..20 {
        let gram = local.iter().fold(ComplexMatrix::zeros(m), |acc, h| {
            let c = h.form(&y, &y).re;
            let s = h - &ComplexMatrix::identity(m).scale_real(c);
            &acc + &s.matmul(&s)
        });
        let (_, vecs) = eigh(&gram);
        match vecs.into_iter().next() {
            Some(first) => y = first,
            None => break,
        }
    }
    y
}

/// Chain `w_1, w_2 = A_1 w_1, ...` inside the span of the orthonormal list
/// `f`, each new vector orthogonal to every `w_j`, `A_i w_j`, `A_i^* w_j`
/// built so far. Returns the orthonormal `w`'s and the chain matrices
/// compressed to `f`.
pub(crate) fn build_chain(
    v: &OperatorSystem,
    f: &[CVector],
    steps: usize,
    rng: &mut SeededRng,
    tol: &Tolerance,
) -> (Vec<CVector>, Vec<ComplexMatrix>) {
    let dim_f = f.len();
    if dim_f == 0 {
        return (Vec::new(), Vec::new());
    }
    let local: Vec<ComplexMatrix> = v.basis().iter().map(|a| compress_to_frame(f, a)).collect();
    let mut ws = alloc::vec![rng.unit_vector(dim_f)];
    let mut chain: Vec<ComplexMatrix> = Vec::new();
    while chain.len() < steps {
        let r = ws.len();
        let w = &ws[r - 1];
        let mut forbidden: Vec<CVector> = ws.clone();
        for a in &chain {
            let adj = a.adjoint();
            for wj in &ws {
                forbidden.push(a.apply(wj));
                forbidden.push(adj.apply(wj));
            }
        }
        let kf = crate::linalg::orthonormalize_at(&forbidden, tol.rank_rel).unwrap_or_default();
        // Coefficient vectors c with A(c) w orthogonal to the forbidden span.
        let images: Vec<CVector> = local.iter().map(|b| b.apply(w)).collect();
        let rows: Vec<CVector> =
            kf.iter().map(|q| CVector::new(images.iter().map(|img| img.inner(q).conj()).collect())).collect();
        let null = orth_complement(&rows, local.len(), tol.rank_rel);
        if null.is_empty() {
            break;
        }
        let mapped: Vec<CVector> = null.iter().map(|c| combine(c, &images)).collect();
        let refs: Vec<&[C64]> = mapped.iter().map(|x| x.entries()).collect();
        let d = svd(&refs, dim_f);
        let top = d.sigma.first().copied().unwrap_or(0.0);
        if top <= tol.rank_rel {
            break;
        }
        let coeffs = combine(&CVector::new(d.v[0].clone()), &null);
        let a = local.iter().zip(coeffs.entries()).fold(ComplexMatrix::zeros(dim_f), |acc, (b, c)| &acc + &b.scale(*c));
        let next = a.apply(w);
        let nn = next.norm();
        if nn <= tol.rank_rel * a.hs_norm() {
            break;
        }
        ws.push(next.scale(C64::new(1.0 / nn, 0.0)));
        chain.push(a);
    }
    (ws.iter().map(|w| combine(w, f)).collect(), chain)
}

/// Searches for a quantum `k`-clique or `k`-anticlique.
///
/// Phase 1 collects vectors with small projected orbits; once
/// `phase1_steps` are found, `V` compresses to a diagonal system on their
/// span and [`diagonal_route`] decides. Otherwise phase 2 builds a chain in
/// the residual subspace and, if it is long enough, applies
/// [`blocks2_clique`]. Below the guaranteed dimension neither phase need
/// succeed; the remaining candidates are certified directly, then the
/// low-dimension anticlique extractor is tried when `dim(V)(k - 1) + k <= n`.
/// The result may be `Neither` with the full trace.
pub fn find_clique_or_anticlique(
    v: &OperatorSystem,
    k: usize,
    params: &SearchParams,
    tol: &Tolerance,
) -> Result<Certificate> {
    params.validate()?;
    if k == 0 || k > v.n() {
        return Err(Error::invalid(format!("need 1 <= k <= n, got k = {k}, n = {}", v.n())));
    }
    let mut trace: Vec<String> = Vec::new();
    let mut last: Option<Certificate> = None;
    for attempt in 0..params.retry_budget {
        let seed = params.seed.wrapping_add(attempt as u64);
        trace.push(format!("attempt {} (seed {seed})", attempt + 1));
        let cert = search_once(v, k, params, seed, tol, &mut trace)?;
        if cert.is_success() {
            return Ok(cert.with_trace_prefix(trace).with_seed(seed));
        }
        trace.extend(cert.trace.iter().cloned());
        last = Some(cert);
    }
    let mut cert = match last {
        Some(c) => c,
        None => coordinate_certificate(v, k, tol)?,
    };
    cert.kind = Kind::Neither;
    cert.trace = trace;
    cert.note(format!("no certified clique or anticlique in {} attempts", params.retry_budget));
    Ok(cert.with_seed(params.seed))
}

fn search_once(
    v: &OperatorSystem,
    k: usize,
    params: &SearchParams,
    seed: u64,
    tol: &Tolerance,
    trace: &mut Vec<String>,
) -> Result<Certificate> {
    let n = v.n();
    let mut found: Vec<CVector> = Vec::new();
    while found.len() < params.phase1_steps {
        match phase1_vector_search(v, &found, params.orbit_threshold, seed, tol) {
            Some(x) => found.push(x),
            None => break,
        }
    }
    trace.push(format!("phase 1: {} vector(s) with projected orbit below {}", found.len(), params.orbit_threshold));

    if found.len() >= k {
        let diag = compress_to_frame_system(v, &found, tol);
        match diagonal_route(&diag, k, seed, tol) {
            Ok(local) if local.is_success() => {
                let p = Projection::lift(local.projection.frame(), &found);
                let mut cert = certify(v, &p, k, tol)?;
                if cert.is_success() {
                    let label = if found.len() >= params.phase1_steps { "" } else { " (phase 1 stopped early)" };
                    cert.trace.splice(0..0, local.trace);
                    cert.note(format!("phase 1: diagonal route on {} vectors{label}", found.len()));
                    return Ok(cert);
                }
            }
            Ok(local) => trace.extend(local.trace),
            Err(e) => trace.push(format!("phase 1: diagonal route failed: {e}")),
        }
    }

    // Phase 2 in F = joint orbit complement of the phase-1 vectors.
    let f = joint_orbit_complement(v, &found, tol);
    let mut rng = SeededRng::derive(seed, 0xc4a1);
    let (n2, m2) = if k >= 2 { blocks2_sizes(k) } else { (0, 0) };
    let steps = params.phase2_steps.min(f.len().saturating_sub(1));
    let wanted = if k >= 2 { m2.max(n2 - 1) } else { 0 };
    let (ws, chain) = build_chain(v, &f, steps.max(wanted.min(f.len().saturating_sub(1))), &mut rng, tol);
    trace.push(format!("phase 2: dim F = {}, chain of {} matrices", f.len(), chain.len()));
    if k >= 2 && ws.len() >= n2 && chain.len() >= m2 {
        let frame = &ws[..n2];
        let sub = compress_to_frame_system(v, frame, tol);
        // Chain matrices rewritten in the w-coordinates.
        let fw: Vec<CVector> = frame
            .iter()
            .map(|w| CVector::new(f.iter().map(|fi| w.inner(fi)).collect()))
            .collect();
        let local_chain: Vec<ComplexMatrix> = chain[..m2].iter().map(|a| compress_to_frame(&fw, a)).collect();
        match blocks2_clique(&sub, &local_chain, k, seed, tol) {
            Ok(local) if local.is_success() => {
                let p = Projection::lift(local.projection.frame(), frame);
                let mut cert = certify(v, &p, k, tol)?;
                if cert.is_success() {
                    cert.trace.splice(0..0, local.trace);
                    cert.note("phase 2: chain reduction");
                    return Ok(cert);
                }
            }
            Ok(_) => trace.push(String::from("phase 2: chain reduction did not certify")),
            Err(e) => trace.push(format!("phase 2: chain reduction failed: {e}")),
        }
    }

    // Below the guaranteed scale: certify the natural candidates directly.
    let mut candidates: Vec<(&str, Vec<CVector>)> = Vec::new();
    if found.len() >= k {
        candidates.push(("first phase-1 vectors", found[..k].to_vec()));
    }
    if ws.len() >= k {
        candidates.push(("first chain vectors", ws[..k].to_vec()));
    }
    candidates.push(("coordinate vectors", (0..k).map(|i| CVector::basis(n, i)).collect()));
    let mut last = None;
    for (label, frame) in candidates {
        let p = Projection::from_orthonormal_frame(frame, tol)?;
        let mut cert = certify(v, &p, k, tol)?;
        if cert.is_success() {
            cert.note(format!("direct certification of the {label}"));
            return Ok(cert);
        }
        trace.push(format!("direct certification of the {label}: dim(PVP) = {}", cert.compressed_dim));
        last = Some(cert);
    }
    if k >= 2 && v.dim() * (k - 1) + k <= n {
        match anticlique_lowdim(v, k, seed, tol) {
            Ok(mut cert) if cert.is_success() => {
                cert.note("low-dimension anticlique extraction");
                return Ok(cert);
            }
            Ok(_) => trace.push(String::from("low-dimension anticlique extraction did not certify")),
            Err(e) => trace.push(format!("low-dimension anticlique extraction failed: {e}")),
        }
    }
    Ok(last.expect("coordinate candidate always present"))
}
