//! Quantum graphs over block-structured *-algebras.
//!
//! A unital *-subalgebra of `M_n` is, up to a unitary, a direct sum
//! `(M_{n_1} ⊗ I_{d_1}) ⊕ ... ⊕ (M_{n_r} ⊗ I_{d_r})`. [`MatrixAlgebra`]
//! stores that block list together with the coordinate layout, so
//! commutants, membership and minimal projections are read off directly.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::constructions::SimpleGraph;
use crate::error::{Error, Result};
use crate::linalg::{compress_to_frame, item_singular_values, CVector, ComplexMatrix, Projection, Tolerance, C64};
use crate::opsys::{compress_to_frame_system, compressed_spectrum, rank_of_spectrum, Certificate, Kind, OperatorSystem};
use crate::ramsey::{find_clique_or_anticlique, SearchParams};

/// How the two tensor factors of each block are laid out in coordinates.
///
/// With block offset `o`, factor index `a < n_i` and multiplicity index
/// `b < d_i`, the coordinate is `o + a*d_i + b` for `FactorMajor` and
/// `o + b*n_i + a` for `MultiplicityMajor`. Taking the commutant swaps both
/// the pairs and the layout, so the two descriptions name the same
/// coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Layout {
    #[default]
    FactorMajor,
    MultiplicityMajor,
}

impl Layout {
    pub fn as_str(self) -> &'static str {
        match self {
            Layout::FactorMajor => "factor-major",
            Layout::MultiplicityMajor => "multiplicity-major",
        }
    }

    pub fn parse(s: &str) -> Option<Layout> {
        match s {
            "factor-major" => Some(Layout::FactorMajor),
            "multiplicity-major" => Some(Layout::MultiplicityMajor),
            _ => None,
        }
    }

    fn flipped(self) -> Layout {
        match self {
            Layout::FactorMajor => Layout::MultiplicityMajor,
            Layout::MultiplicityMajor => Layout::FactorMajor,
        }
    }
}

/// `⊕_i M_{n_i} ⊗ I_{d_i}` inside `M_n`, `n = Σ n_i d_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAlgebra {
    blocks: Vec<(usize, usize)>,
    layout: Layout,
}

impl MatrixAlgebra {
    pub fn new(blocks: Vec<(usize, usize)>) -> Result<Self> {
        Self::with_layout(blocks, Layout::FactorMajor)
    }

    pub fn with_layout(blocks: Vec<(usize, usize)>, layout: Layout) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::EmptyInput);
        }
        if blocks.iter().any(|&(n, d)| n == 0 || d == 0) {
            return Err(Error::invalid("block sizes and multiplicities must be positive"));
        }
        Ok(MatrixAlgebra { blocks, layout })
    }

    /// `M_n`.
    pub fn full(n: usize) -> Result<Self> {
        Self::new(alloc::vec![(n, 1)])
    }

    /// The diagonal algebra `D_n`.
    pub fn diagonal(n: usize) -> Result<Self> {
        Self::new(alloc::vec![(1, 1); n])
    }

    /// `C I_n`.
    pub fn scalars(n: usize) -> Result<Self> {
        Self::new(alloc::vec![(1, n)])
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|&(n, d)| n * d).sum()
    }

    /// `Σ n_i^2`.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|&(n, _)| n * n).sum()
    }

    pub fn offset(&self, block: usize) -> usize {
        self.blocks[..block].iter().map(|&(n, d)| n * d).sum()
    }

    /// Coordinate of factor index `a` and multiplicity index `b` in `block`.
    pub fn index(&self, block: usize, a: usize, b: usize) -> usize {
        let (n, d) = self.blocks[block];
        self.offset(block) + self.local_index(n, d, a, b)
    }

    fn local_index(&self, n: usize, d: usize, a: usize, b: usize) -> usize {
        match self.layout {
            Layout::FactorMajor => a * d + b,
            Layout::MultiplicityMajor => b * n + a,
        }
    }

    /// Blocks `(d_i, n_i)` on the same coordinates.
    pub fn commutant(&self) -> MatrixAlgebra {
        MatrixAlgebra {
            blocks: self.blocks.iter().map(|&(n, d)| (d, n)).collect(),
            layout: self.layout.flipped(),
        }
    }

    /// `A ⊗ I_d` placed in `block`, for `A` in `M_{n_block}`.
    pub fn embed(&self, block: usize, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        let (nb, d) = self.blocks[block];
        if a.n() != nb {
            return Err(Error::DimensionMismatch { expected: nb, found: a.n() });
        }
        let mut out = ComplexMatrix::zeros(self.n());
        for x in 0..nb {
            for y in 0..nb {
                for c in 0..d {
                    out[(self.index(block, x, c), self.index(block, y, c))] = a[(x, y)];
                }
            }
        }
        Ok(out)
    }

    /// Hilbert-Schmidt orthonormal basis `E_ab ⊗ I_d / sqrt(d)`.
    pub fn basis(&self) -> Vec<ComplexMatrix> {
        let n = self.n();
        let mut out = Vec::with_capacity(self.dim());
        for (i, &(nb, d)) in self.blocks.iter().enumerate() {
            let w = C64::new(1.0 / (d as f64).sqrt(), 0.0);
            for a in 0..nb {
                for b in 0..nb {
                    let mut m = ComplexMatrix::zeros(n);
                    for c in 0..d {
                        m[(self.index(i, a, c), self.index(i, b, c))] = w;
                    }
                    out.push(m);
                }
            }
        }
        out
    }

    /// Orthogonal projection of `x` onto the algebra.
    pub fn project(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.n());
        for (i, &(nb, d)) in self.blocks.iter().enumerate() {
            for a in 0..nb {
                for b in 0..nb {
                    let mean = (0..d).map(|c| x[(self.index(i, a, c), self.index(i, b, c))]).sum::<C64>() / d as f64;
                    for c in 0..d {
                        out[(self.index(i, a, c), self.index(i, b, c))] = mean;
                    }
                }
            }
        }
        out
    }

    /// Largest of the distance from `x` to the algebra and the commutators
    /// `‖[x, G]‖` over the basis of the commutant.
    pub fn membership_residual(&self, x: &ComplexMatrix) -> Result<f64> {
        if x.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: x.n() });
        }
        let mut worst = (x - &self.project(x)).hs_norm();
        for g in self.commutant().basis() {
            let comm = &x.matmul(&g) - &g.matmul(x);
            worst = worst.max(comm.hs_norm());
        }
        Ok(worst)
    }

    pub fn contains(&self, x: &ComplexMatrix, tol: &Tolerance) -> bool {
        self.membership_residual(x).map(|r| r <= tol.identity_slack(self.n()) * x.hs_norm().max(1.0)).unwrap_or(false)
    }

    /// Frame of `(x x^*) ⊗ I_d` in `block`, for a unit vector `x` in `C^{n_block}`.
    pub fn tensor_frame(&self, block: usize, x: &CVector) -> Vec<CVector> {
        let n = self.n();
        let (nb, d) = self.blocks[block];
        (0..d)
            .map(|c| {
                let mut f = CVector::zeros(n);
                for a in 0..nb {
                    f[self.index(block, a, c)] = x[a];
                }
                f
            })
            .collect()
    }

    /// Coordinates of `block`, in local order.
    fn block_coordinates(&self, block: usize) -> Vec<CVector> {
        let n = self.n();
        let (nb, d) = self.blocks[block];
        let off = self.offset(block);
        (0..nb * d).map(|l| CVector::basis(n, off + l)).collect()
    }

    /// `W ⊗ M_d` written in the local coordinates of `block`.
    pub fn tensor_with_full(&self, block: usize, w: &OperatorSystem) -> Result<Vec<ComplexMatrix>> {
        let (nb, d) = self.blocks[block];
        if w.n() != nb {
            return Err(Error::DimensionMismatch { expected: nb, found: w.n() });
        }
        let mut out = Vec::with_capacity(w.dim() * d * d);
        for a in w.basis() {
            for p in 0..d {
                for q in 0..d {
                    let e = ComplexMatrix::unit(d, p, q);
                    out.push(match self.layout {
                        Layout::FactorMajor => a.kron(&e),
                        Layout::MultiplicityMajor => e.kron(a),
                    });
                }
            }
        }
        Ok(out)
    }
}

/// `span{X A Y : X, Y in M', A in V} = V`. Since `I` lies in `M'`, this is
/// checked as membership of every product in `V`.
pub fn is_bimodule(v: &OperatorSystem, m: &MatrixAlgebra, tol: &Tolerance) -> Result<bool> {
    if v.n() != m.n() {
        return Err(Error::DimensionMismatch { expected: m.n(), found: v.n() });
    }
    let gens = m.commutant().basis();
    for a in v.basis() {
        for x in &gens {
            let xa = x.matmul(a);
            for y in &gens {
                if !v.contains(&xa.matmul(y), tol) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// An operator system together with an algebra it is a quantum graph on.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumGraph {
    algebra: MatrixAlgebra,
    system: OperatorSystem,
}

impl QuantumGraph {
    pub fn new(algebra: MatrixAlgebra, system: OperatorSystem, tol: &Tolerance) -> Result<Self> {
        if !is_bimodule(&system, &algebra, tol)? {
            return Err(Error::precondition("operator system is not a bimodule over the commutant"));
        }
        Ok(QuantumGraph { algebra, system })
    }

    /// The classical graph `G` as a quantum graph on `D_n`.
    pub fn from_graph(g: &SimpleGraph) -> Result<Self> {
        let system = crate::constructions::graph_operator_system(g)?;
        Ok(QuantumGraph { algebra: MatrixAlgebra::diagonal(g.n_vertices())?, system })
    }

    pub fn algebra(&self) -> &MatrixAlgebra {
        &self.algebra
    }

    pub fn system(&self) -> &OperatorSystem {
        &self.system
    }

    /// `P_i V P_i` for the central projection of `block`, in local coordinates.
    pub fn block_system(&self, block: usize, tol: &Tolerance) -> OperatorSystem {
        compress_to_frame_system(&self.system, &self.algebra.block_coordinates(block), tol)
    }

    /// The factor `W ⊆ M_{n_i}` with `P_i V P_i = W ⊗ M_{d_i}`: the corner of
    /// `V` at multiplicity index 0.
    pub fn block_factor(&self, block: usize, tol: &Tolerance) -> OperatorSystem {
        let (nb, _) = self.algebra.blocks[block];
        let n = self.algebra.n();
        let corner: Vec<CVector> = (0..nb).map(|a| CVector::basis(n, self.algebra.index(block, a, 0))).collect();
        compress_to_frame_system(&self.system, &corner, tol)
    }
}

/// Verdict for a projection `P` in the algebra: clique if `PVP = P M_n P`,
/// anticlique if `PVP = P M' P`.
///
/// `M' ⊆ V` always, so both tests are dimension comparisons. Dimensions are
/// computed at both tolerances; a disagreement gives `Neither` with a trace
/// note. For `M = M_n` the verdict is exactly that of [`crate::certify`].
pub fn generalized_certify(qg: &QuantumGraph, p: &Projection, k: usize, tol: &Tolerance) -> Result<Certificate> {
    let n = qg.algebra.n();
    if p.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: p.n() });
    }
    if p.rank() != k {
        return Err(Error::DimensionMismatch { expected: k, found: p.rank() });
    }
    let residual = qg.algebra.membership_residual(p.matrix())?;
    if residual > tol.identity_slack(n) * (k as f64).sqrt().max(1.0) {
        return Err(Error::NotInAlgebra { residual });
    }
    let sigma = compressed_spectrum(&qg.system, p.frame());
    let comm: Vec<ComplexMatrix> =
        qg.algebra.commutant().basis().iter().map(|g| compress_to_frame(p.frame(), g)).collect();
    let sigma_comm = item_singular_values(&comm)?;
    let verdict = |rel: f64| {
        let d = rank_of_spectrum(&sigma, rel);
        let floor = rank_of_spectrum(&sigma_comm, rel);
        let kind = if d == k * k {
            Kind::Clique
        } else if d == floor {
            Kind::Anticlique
        } else {
            Kind::Neither
        };
        (kind, d, floor)
    };
    let (kind_search, d_search, _) = verdict(tol.rank_rel);
    let (kind_cert, d_cert, floor) = verdict(tol.cert_rel);
    let mut trace: Vec<String> = Vec::new();
    trace.push(format!("dim(PVP) = {d_cert}, dim(PM'P) = {floor}, full = {}", k * k));
    let kind = if kind_search == kind_cert && d_search == d_cert {
        kind_cert
    } else {
        trace.push(format!(
            "certify: dim(PVP) is {d_search} at rank_rel={:e} but {d_cert} at cert_rel={:e}; verdict withheld",
            tol.rank_rel, tol.cert_rel
        ));
        Kind::Neither
    };
    Ok(Certificate { projection: p.clone(), kind, compressed_dim: d_cert, k, tol: *tol, seed: None, trace })
}

/// A set of `k` vertices (1-indexed) spanning a complete or an empty subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalWitness {
    pub vertices: Vec<usize>,
    pub kind: Kind,
}

/// Backtracking search for a `k`-clique, then a `k`-independent set.
/// Returns `None` when neither exists.
pub fn classical_ramsey_extract(g: &SimpleGraph, k: usize) -> Option<ClassicalWitness> {
    let n = g.n_vertices();
    for (kind, adjacent) in [(Kind::Clique, true), (Kind::Anticlique, false)] {
        let mut chosen = Vec::with_capacity(k);
        let candidates: Vec<usize> = (1..=n).collect();
        if extend(g, k, adjacent, &mut chosen, &candidates) {
            return Some(ClassicalWitness { vertices: chosen, kind });
        }
    }
    None
}

fn extend(g: &SimpleGraph, k: usize, adjacent: bool, chosen: &mut Vec<usize>, candidates: &[usize]) -> bool {
    if chosen.len() == k {
        return true;
    }
    for (pos, &v) in candidates.iter().enumerate() {
        if chosen.len() + candidates.len() - pos < k {
            return false;
        }
        let next: Vec<usize> =
            candidates[pos + 1..].iter().copied().filter(|&u| g.has_edge(u, v) == adjacent).collect();
        chosen.push(v);
        if extend(g, k, adjacent, chosen, &next) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Searches for a projection in the algebra of rank at least `k` that is a
/// clique or an anticlique.
///
/// Routes, in order: the tensor route on the largest block that can hold
/// rank `k` (find a `⌈k/d⌉` clique or anticlique `Q` of the factor `W` and
/// return `Q ⊗ I_d`); the classical route when there are at least `k`
/// blocks (compress by a rank-one projection per block, read off the
/// induced graph and extract a classical clique or independent set); then
/// the tensor route on the remaining blocks. A single block with `d = 1` is
/// `M_n` itself and delegates to [`find_clique_or_anticlique`] unchanged.
/// If nothing succeeds the result certifies `P = I` and is usually
/// `Neither`.
pub fn general_find(qg: &QuantumGraph, k: usize, params: &SearchParams, tol: &Tolerance) -> Result<Certificate> {
    params.validate()?;
    let m = &qg.algebra;
    let n = m.n();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    if m.blocks.len() == 1 && m.blocks[0].1 == 1 {
        return find_clique_or_anticlique(&qg.system, k, params, tol);
    }
    let mut order: Vec<usize> = (0..m.blocks.len()).filter(|&i| m.blocks[i].0 * m.blocks[i].1 >= k).collect();
    order.sort_by_key(|&i| core::cmp::Reverse(m.blocks[i].0 * m.blocks[i].1));
    let mut trace: Vec<String> = Vec::new();
    let mut routes: Vec<Option<usize>> = order.iter().take(1).map(|&i| Some(i)).collect();
    if m.blocks.len() >= k {
        routes.push(None);
    }
    routes.extend(order.iter().skip(1).map(|&i| Some(i)));
    for route in routes {
        let found = match route {
            Some(i) => tensor_route(qg, i, k, params, tol, &mut trace)?,
            None => classical_route(qg, k, tol, &mut trace)?,
        };
        if let Some(cert) = found {
            return Ok(cert.with_trace_prefix(trace).with_seed(params.seed));
        }
    }
    let mut cert = generalized_certify(qg, &Projection::identity(n), n, tol)?;
    cert.note("no route produced a clique or anticlique; certified the identity");
    Ok(cert.with_trace_prefix(trace).with_seed(params.seed))
}

fn tensor_route(
    qg: &QuantumGraph,
    block: usize,
    k: usize,
    params: &SearchParams,
    tol: &Tolerance,
    trace: &mut Vec<String>,
) -> Result<Option<Certificate>> {
    let (nb, d) = qg.algebra.blocks[block];
    let w = qg.block_factor(block, tol);
    let local = if d >= k {
        trace.push(format!("tensor route on block {block} ({nb}, {d}): d >= k, rank-one factor"));
        Some(CVector::basis(nb, 0)).into_iter().collect::<Vec<_>>()
    } else {
        let k_loc = k.div_ceil(d);
        trace.push(format!("tensor route on block {block} ({nb}, {d}): searching W (dim {}) for k = {k_loc}", w.dim()));
        let found = find_clique_or_anticlique(&w, k_loc, params, tol)?;
        if !found.is_success() {
            trace.push(format!("tensor route on block {block}: no {k_loc}-clique or anticlique in W"));
            return Ok(None);
        }
        found.projection.frame().to_vec()
    };
    let frame: Vec<CVector> = local.iter().flat_map(|x| qg.algebra.tensor_frame(block, x)).collect();
    let rank = frame.len();
    let cert = generalized_certify(qg, &Projection::from_orthonormal_frame(frame, tol)?, rank, tol)?;
    trace.push(format!("tensor route on block {block}: rank {rank} projection is {}", cert.kind));
    Ok(cert.is_success().then_some(cert))
}

fn classical_route(qg: &QuantumGraph, k: usize, tol: &Tolerance, trace: &mut Vec<String>) -> Result<Option<Certificate>> {
    let m = &qg.algebra;
    let r = m.blocks.len();
    let frames: Vec<Vec<CVector>> = (0..r).map(|i| m.tensor_frame(i, &CVector::basis(m.blocks[i].0, 0))).collect();
    let all: Vec<CVector> = frames.iter().flatten().cloned().collect();
    let compressed = compress_to_frame_system(&qg.system, &all, tol);
    let starts: Vec<usize> = frames.iter().scan(0, |acc, f| {
        let s = *acc;
        *acc += f.len();
        Some(s)
    }).collect();
    // Weight of E_xy in the compression; 1 when the (i, j) block is full, 0 when absent.
    let weight = |x: usize, y: usize| -> f64 { compressed.basis().iter().map(|a| a[(x, y)].norm_sqr()).sum() };
    let mut g = SimpleGraph::empty(r);
    for i in 0..r {
        for j in i + 1..r {
            let wgt = weight(starts[i], starts[j]);
            if wgt > 1e-6 && wgt < 1.0 - 1e-6 {
                return Err(Error::precondition("compressed system is not a block graph"));
            }
            if wgt > 0.5 {
                g.add_edge(i + 1, j + 1)?;
            }
        }
    }
    trace.push(format!("classical route: {r} blocks, induced graph has {} edges", g.edge_count()));
    let Some(witness) = classical_ramsey_extract(&g, k) else {
        trace.push(format!("classical route: no {k}-clique or independent set"));
        return Ok(None);
    };
    let frame: Vec<CVector> = witness.vertices.iter().flat_map(|&v| frames[v - 1].iter().cloned()).collect();
    let rank = frame.len();
    let cert = generalized_certify(qg, &Projection::from_orthonormal_frame(frame, tol)?, rank, tol)?;
    trace.push(format!("classical route: {} on blocks {:?} gives {}", witness.kind, witness.vertices, cert.kind));
    Ok(cert.is_success().then_some(cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::graph_operator_system;
    use crate::opsys::{certify, random_system};
    use crate::random::SeededRng;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn commutant_examples() {
        let full = MatrixAlgebra::full(4).unwrap();
        assert_eq!(full.commutant().blocks(), &[(1, 4)]);
        let diag = MatrixAlgebra::diagonal(3).unwrap();
        assert_eq!(diag.commutant().blocks(), diag.blocks());
        let m = MatrixAlgebra::new(alloc::vec![(2, 3)]).unwrap();
        assert_eq!(m.commutant().blocks(), &[(3, 2)]);
        assert_eq!(m.commutant().commutant(), m);
    }

    #[test]
    fn commutant_commutes() {
        let m = MatrixAlgebra::new(alloc::vec![(2, 2), (1, 3), (3, 1)]).unwrap();
        let c = m.commutant();
        assert_eq!(c.n(), m.n());
        for a in m.basis() {
            for b in c.basis() {
                assert!((&a.matmul(&b) - &b.matmul(&a)).hs_norm() < 1e-14);
            }
        }
        for a in m.basis() {
            assert!(m.membership_residual(&a).unwrap() < 1e-14);
        }
    }

    #[test]
    fn bimodule_examples() {
        let v = random_system(3, 4, 2).unwrap();
        assert!(is_bimodule(&v, &MatrixAlgebra::full(3).unwrap(), &tol()).unwrap());
        let g = SimpleGraph::cycle(5);
        let vg = graph_operator_system(&g).unwrap();
        assert!(is_bimodule(&vg, &MatrixAlgebra::diagonal(5).unwrap(), &tol()).unwrap());
        let off = &ComplexMatrix::unit(2, 0, 1) + &ComplexMatrix::unit(2, 1, 0);
        let v = OperatorSystem::from_span(&[off], 2, &tol()).unwrap();
        assert!(!is_bimodule(&v, &MatrixAlgebra::diagonal(2).unwrap(), &tol()).unwrap());
    }

    #[test]
    fn classical_correspondence() {
        let g = SimpleGraph::new(5, &[(1, 2), (2, 3), (1, 3), (4, 5)]).unwrap();
        let qg = QuantumGraph::from_graph(&g).unwrap();
        let tri = Projection::coordinate(5, &[0, 1, 2]).unwrap();
        assert_eq!(generalized_certify(&qg, &tri, 3, &tol()).unwrap().kind, Kind::Clique);
        let ind = Projection::coordinate(5, &[0, 3]).unwrap();
        assert_eq!(generalized_certify(&qg, &ind, 2, &tol()).unwrap().kind, Kind::Anticlique);
        let mixed = Projection::coordinate(5, &[0, 1, 3]).unwrap();
        assert_eq!(generalized_certify(&qg, &mixed, 3, &tol()).unwrap().kind, Kind::Neither);
    }

    #[test]
    fn projection_outside_algebra_rejected() {
        let qg = QuantumGraph::from_graph(&SimpleGraph::cycle(4)).unwrap();
        let x = CVector::from_real(&[1.0, 1.0, 0.0, 0.0]).normalized().unwrap();
        let p = Projection::from_vectors(&[x], &tol()).unwrap();
        assert!(matches!(generalized_certify(&qg, &p, 1, &tol()), Err(Error::NotInAlgebra { .. })));
    }

    #[test]
    fn full_algebra_matches_certify() {
        let mut rng = SeededRng::new(5);
        for s in 0..20 {
            let v = random_system(5, 1 + s % 6, s as u64).unwrap();
            let qg = QuantumGraph::new(MatrixAlgebra::full(5).unwrap(), v.clone(), &tol()).unwrap();
            let k = 1 + s % 3;
            let p = Projection::from_orthonormal_frame(rng.frame(5, k), &tol()).unwrap();
            let a = generalized_certify(&qg, &p, k, &tol()).unwrap();
            let b = certify(&v, &p, k, &tol()).unwrap();
            assert_eq!((a.kind, a.compressed_dim), (b.kind, b.compressed_dim));
        }
    }

    #[test]
    fn ramsey_extract_small_cases() {
        let w = classical_ramsey_extract(&SimpleGraph::new(2, &[(1, 2)]).unwrap(), 2).unwrap();
        assert_eq!((w.vertices, w.kind), (alloc::vec![1, 2], Kind::Clique));
        let w = classical_ramsey_extract(&SimpleGraph::empty(2), 2).unwrap();
        assert_eq!(w.kind, Kind::Anticlique);
        assert!(classical_ramsey_extract(&SimpleGraph::cycle(5), 3).is_none());
    }

    #[test]
    fn general_find_full_algebra_delegates() {
        let v = random_system(6, 3, 8).unwrap();
        let qg = QuantumGraph::new(MatrixAlgebra::full(6).unwrap(), v.clone(), &tol()).unwrap();
        let params = SearchParams { seed: 4, ..SearchParams::desk_scale(2) };
        let a = general_find(&qg, 2, &params, &tol()).unwrap();
        let b = find_clique_or_anticlique(&v, 2, &params, &tol()).unwrap();
        assert_eq!(a.kind, b.kind);
        assert_eq!(a.projection, b.projection);
    }

    #[test]
    fn general_find_planted_clique() {
        let mut g = SimpleGraph::cycle(7);
        for (i, j) in [(2, 4), (2, 5), (4, 5), (3, 5)] {
            g.add_edge(i, j).unwrap();
        }
        let qg = QuantumGraph::from_graph(&g).unwrap();
        let cert = general_find(&qg, 4, &SearchParams::desk_scale(4), &tol()).unwrap();
        assert_eq!(cert.kind, Kind::Clique);
        assert_eq!(cert.projection, Projection::coordinate(7, &[1, 2, 3, 4]).unwrap());
    }

    #[test]
    fn tensor_route_full_factor() {
        let m = MatrixAlgebra::new(alloc::vec![(2, 2)]).unwrap();
        let w = OperatorSystem::full(2);
        let span = m.tensor_with_full(0, &w).unwrap();
        let v = OperatorSystem::from_span(&span, 4, &tol()).unwrap();
        assert_eq!(v.dim(), 16);
        let qg = QuantumGraph::new(m, v, &tol()).unwrap();
        let cert = general_find(&qg, 2, &SearchParams::desk_scale(2), &tol()).unwrap();
        assert_eq!(cert.kind, Kind::Clique);
        assert!(cert.projection.rank() >= 2);
    }

    #[test]
    fn block_factor_reconstructs() {
        let m = MatrixAlgebra::with_layout(alloc::vec![(3, 2)], Layout::MultiplicityMajor).unwrap();
        let w = random_system(3, 4, 11).unwrap();
        let v = OperatorSystem::from_span(&m.tensor_with_full(0, &w).unwrap(), 6, &tol()).unwrap();
        let qg = QuantumGraph::new(m, v, &tol()).unwrap();
        assert!(qg.block_factor(0, &tol()).same_span(&w, &tol()));
    }
}
