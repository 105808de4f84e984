//! Operator systems built from graphs and coordinate patterns.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Tolerance};
use crate::opsys::OperatorSystem;

/// Finite simple graph on vertices `1..=n`. Loops are implicit and never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph { n, edges: BTreeSet::new() }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        SimpleGraph { n, edges }
    }

    /// Cycle `1 - 2 - ... - n - 1`.
    pub fn cycle(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        for i in 1..=n {
            let j = if i == n { 1 } else { i + 1 };
            if i != j {
                g.edges.insert(norm_edge(i, j));
            }
        }
        g
    }

    /// Builds a graph from 1-indexed edges; duplicates collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::empty(n);
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i == j {
            return Err(Error::invalid(format!("self-loop at vertex {i}")));
        }
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::invalid(format!("edge ({i}, {j}) out of range 1..={}", self.n)));
        }
        self.edges.insert(norm_edge(i, j));
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&norm_edge(i, j))
    }

    /// Graph on `n` vertices whose edge set is encoded by the bits of `mask`
    /// over pairs `(i, j)`, `i < j`, in lexicographic order. Pairs past the
    /// 64th are left out.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut g = SimpleGraph::empty(n);
        let mut bit = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                if bit < 64 && mask >> bit & 1 == 1 {
                    g.edges.insert((i, j));
                }
                bit += 1;
            }
        }
        g
    }
}

fn norm_edge(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// `span{E_ij : i = j or {i, j} an edge}`; dimension `n + 2|E|`.
pub fn graph_operator_system(g: &SimpleGraph) -> Result<OperatorSystem> {
    let n = g.n;
    if n == 0 {
        return Err(Error::invalid("graph needs at least one vertex"));
    }
    let mut basis: Vec<ComplexMatrix> = (0..n).map(|i| ComplexMatrix::unit(n, i, i)).collect();
    for (i, j) in g.edges() {
        basis.push(ComplexMatrix::unit(n, i - 1, j - 1));
        basis.push(ComplexMatrix::unit(n, j - 1, i - 1));
    }
    Ok(OperatorSystem::from_orthonormal_unchecked(n, basis))
}

/// The diagonal operator system `D_n`.
pub fn diagonal_system(n: usize) -> Result<OperatorSystem> {
    graph_operator_system(&SimpleGraph::empty(n))
}

/// `span{I_n, E_11, E_1i, E_i1}`: dimension `2n` for `n >= 2`.
pub fn rowcolumn_system(n: usize) -> Result<OperatorSystem> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let mut items = alloc::vec![ComplexMatrix::unit(n, 0, 0)];
    for i in 1..n {
        items.push(ComplexMatrix::unit(n, 0, i));
    }
    OperatorSystem::from_span(&items, n, &Tolerance::default())
}
