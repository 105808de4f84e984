//! JSON encodings of the library's objects.
//!
//! Complex numbers are `[re, im]` pairs; matrices are row-major.

use opsys_core::constructions::SimpleGraph;
use opsys_core::qgraph::Layout;
use opsys_core::{
    CVector, Certificate, ComplexMatrix, Kind, MatrixAlgebra, OperatorSystem, Projection, QuantumGraph, SearchParams,
    Tolerance, C64,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("unknown kind {0:?}")]
    UnknownKind(String),
    #[error("unknown layout {0:?}")]
    UnknownLayout(String),
    #[error(transparent)]
    Core(#[from] opsys_core::Error),
}

type Result<T> = std::result::Result<T, FormatError>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    pub n: usize,
    pub entries: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    pub n: usize,
    pub basis: Vec<MatrixJson>,
    /// Tolerances the basis was computed at, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<ToleranceJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectionJson {
    pub frame: Vec<VectorJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceJson {
    pub rank_rel: f64,
    pub cert_rel: f64,
}

impl From<&Tolerance> for ToleranceJson {
    fn from(t: &Tolerance) -> Self {
        ToleranceJson { rank_rel: t.rank_rel, cert_rel: t.cert_rel }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: String,
    pub k: usize,
    pub compressed_dim: usize,
    pub projection: ProjectionJson,
    pub seed: Option<u64>,
    pub trace: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<ToleranceJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParamsJson {
    pub orbit_threshold: usize,
    pub phase1_steps: usize,
    pub phase2_steps: usize,
    pub retry_budget: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub blocks: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantumGraphJson {
    pub algebra: AlgebraJson,
    pub system: SystemJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

fn pairs(z: &[C64]) -> Vec<[f64; 2]> {
    z.iter().map(|c| [c.re, c.im]).collect()
}

fn complex(p: &[[f64; 2]]) -> Vec<C64> {
    p.iter().map(|&[re, im]| C64::new(re, im)).collect()
}

impl MatrixJson {
    pub fn encode(a: &ComplexMatrix) -> Self {
        MatrixJson { n: a.n(), entries: pairs(a.entries()) }
    }

    pub fn decode(&self) -> Result<ComplexMatrix> {
        if self.entries.len() != self.n * self.n {
            return Err(FormatError::Shape { expected: self.n * self.n, found: self.entries.len() });
        }
        Ok(ComplexMatrix::from_entries(self.n, complex(&self.entries))?)
    }
}

impl VectorJson {
    pub fn encode(v: &CVector) -> Self {
        VectorJson { n: v.len(), entries: pairs(v.entries()) }
    }

    pub fn decode(&self) -> Result<CVector> {
        if self.entries.len() != self.n {
            return Err(FormatError::Shape { expected: self.n, found: self.entries.len() });
        }
        Ok(CVector::try_new(complex(&self.entries))?)
    }
}

impl SystemJson {
    pub fn encode(v: &OperatorSystem) -> Self {
        SystemJson { n: v.n(), basis: v.basis().iter().map(MatrixJson::encode).collect(), tol: None }
    }

    pub fn with_tol(mut self, tol: &Tolerance) -> Self {
        self.tol = Some(ToleranceJson::from(tol));
        self
    }

    /// Checks that the listed matrices span an operator system.
    pub fn decode(&self, tol: &Tolerance) -> Result<OperatorSystem> {
        let basis = self.basis.iter().map(MatrixJson::decode).collect::<Result<Vec<_>>>()?;
        Ok(OperatorSystem::from_basis(self.n, &basis, tol)?)
    }
}

impl ProjectionJson {
    pub fn encode(p: &Projection) -> Self {
        ProjectionJson { frame: p.frame().iter().map(VectorJson::encode).collect() }
    }

    pub fn decode(&self, tol: &Tolerance) -> Result<Projection> {
        let frame = self.frame.iter().map(VectorJson::decode).collect::<Result<Vec<_>>>()?;
        Ok(Projection::from_orthonormal_frame(frame, tol)?)
    }
}

impl CertificateJson {
    pub fn encode(c: &Certificate) -> Self {
        CertificateJson {
            kind: c.kind.as_str().to_string(),
            k: c.k,
            compressed_dim: c.compressed_dim,
            projection: ProjectionJson::encode(&c.projection),
            seed: c.seed,
            trace: c.trace.clone(),
            tol: Some(ToleranceJson::from(&c.tol)),
        }
    }

    /// Restores the recorded fields as they are; use
    /// [`Certificate::recheck`] to trust the verdict.
    pub fn decode(&self, fallback_tol: &Tolerance) -> Result<Certificate> {
        let kind = Kind::parse(&self.kind).ok_or_else(|| FormatError::UnknownKind(self.kind.clone()))?;
        let tol = match self.tol {
            Some(t) => Tolerance::new(t.rank_rel, t.cert_rel)?,
            None => *fallback_tol,
        };
        Ok(Certificate {
            projection: self.projection.decode(&tol)?,
            kind,
            compressed_dim: self.compressed_dim,
            k: self.k,
            tol,
            seed: self.seed,
            trace: self.trace.clone(),
        })
    }
}

impl SearchParamsJson {
    pub fn encode(p: &SearchParams) -> Self {
        SearchParamsJson {
            orbit_threshold: p.orbit_threshold,
            phase1_steps: p.phase1_steps,
            phase2_steps: p.phase2_steps,
            retry_budget: p.retry_budget,
            seed: p.seed,
        }
    }

    pub fn decode(&self) -> Result<SearchParams> {
        let p = SearchParams {
            orbit_threshold: self.orbit_threshold,
            phase1_steps: self.phase1_steps,
            phase2_steps: self.phase2_steps,
            retry_budget: self.retry_budget,
            seed: self.seed,
        };
        p.validate()?;
        Ok(p)
    }
}

impl AlgebraJson {
    pub fn encode(m: &MatrixAlgebra) -> Self {
        let layout = match m.layout() {
            Layout::FactorMajor => None,
            other => Some(other.as_str().to_string()),
        };
        AlgebraJson { blocks: m.blocks().iter().map(|&(n, d)| [n, d]).collect(), layout }
    }

    pub fn decode(&self) -> Result<MatrixAlgebra> {
        let layout = match &self.layout {
            None => Layout::FactorMajor,
            Some(s) => Layout::parse(s).ok_or_else(|| FormatError::UnknownLayout(s.clone()))?,
        };
        Ok(MatrixAlgebra::with_layout(self.blocks.iter().map(|&[n, d]| (n, d)).collect(), layout)?)
    }
}

impl QuantumGraphJson {
    pub fn encode(q: &QuantumGraph) -> Self {
        QuantumGraphJson { algebra: AlgebraJson::encode(q.algebra()), system: SystemJson::encode(q.system()) }
    }

    /// Also checks the bimodule law.
    pub fn decode(&self, tol: &Tolerance) -> Result<QuantumGraph> {
        let algebra = self.algebra.decode()?;
        let system = self.system.decode(tol)?;
        if algebra.n() != system.n() {
            return Err(FormatError::Shape { expected: algebra.n(), found: system.n() });
        }
        Ok(QuantumGraph::new(algebra, system, tol)?)
    }
}

impl GraphJson {
    pub fn encode(g: &SimpleGraph) -> Self {
        GraphJson { n: g.n_vertices(), edges: g.edges().map(|(i, j)| [i, j]).collect() }
    }

    pub fn decode(&self) -> Result<SimpleGraph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[i, j]| (i, j)).collect();
        Ok(SimpleGraph::new(self.n, &edges)?)
    }
}
