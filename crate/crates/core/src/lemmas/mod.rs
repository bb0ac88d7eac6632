//! Machine-checkable descriptors for the auxiliary cluster bounds on
//! `C(n, ±{1,2,3,4})`, plus the two general lower bounds, each validated by
//! exhaustive search on small orders.

mod check;
mod registry;
pub mod template;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{GraphError, Vertex};
use crate::resolve::ResolveError;
use crate::solver::SolverError;

pub use check::{check_lemma, Counts, InstanceReport, LemmaReport, Tightness, Verdict};
pub use registry::{find, registry, REGISTRY_SIZE};
pub use template::{Instance, Params};

use template::ClusterTemplate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("unknown lemma id {0:?}")]
    UnknownId(String),
    #[error("parameters {params:?} are out of range for n = {n}, k = {k}")]
    ParamsOutOfRange { n: usize, k: usize, params: Params },
    #[error("template offsets collide at vertex {vertex} (mod {n})")]
    Degenerate { n: usize, vertex: Vertex },
    #[error("k range must start at 1 and be nonempty")]
    BadRange,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// What a descriptor asserts, and how it is checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LemmaKind {
    /// Every instantiation needs at least `claimed_min` resolvers from the
    /// allowed set. With `presumes_s_cluster`, instantiations that no `S`
    /// induces are reported as vacuous.
    Cluster {
        template: ClusterTemplate,
        presumes_s_cluster: bool,
        claimed_min: usize,
    },
    /// Every `ℓ`-subset of `t + 1` consecutive vertices needs `ℓ - 1` resolvers.
    WindowSubsets { t: usize },
    /// Any two members of a 5-element metric basis are at cyclic distance at
    /// least `r - 5`.
    MinDistBasis,
    /// `dim C(n, ±{1..t}) >= t + plus` for `t` in `2..=5` and
    /// `n = 2kt + r` with `r` in `lo_r(t)..=2t + 1`.
    DimensionBound { plus: usize, residue_from_t: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaDescriptor {
    pub id: &'static str,
    pub statement: &'static str,
    /// Admissible `r` in `n = 8k + r`; empty for the general-`t` bounds.
    pub residues: Vec<usize>,
    pub kind: LemmaKind,
}

impl LemmaDescriptor {
    /// Smallest bound the descriptor asserts, always at least 1.
    pub fn claimed_min(&self) -> usize {
        match &self.kind {
            LemmaKind::Cluster { claimed_min, .. } => *claimed_min,
            LemmaKind::WindowSubsets { .. } => 1,
            LemmaKind::MinDistBasis => 2,
            LemmaKind::DimensionBound { plus, .. } => 2 + plus,
        }
    }

    pub fn claim(&self) -> String {
        match &self.kind {
            LemmaKind::Cluster { claimed_min, .. } => format!("|X| >= {claimed_min}"),
            LemmaKind::WindowSubsets { .. } => "|X| >= l - 1".to_string(),
            LemmaKind::MinDistBasis => "gaps >= r - 5".to_string(),
            LemmaKind::DimensionBound { plus: 0, .. } => "dim >= t".to_string(),
            LemmaKind::DimensionBound { plus, .. } => format!("dim >= t + {plus}"),
        }
    }
}

/// One row of the human-readable registry manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifestEntry {
    pub id: &'static str,
    pub statement: &'static str,
    pub residues: Vec<usize>,
    pub claim: String,
    pub claimed_min: usize,
}

pub fn manifest() -> Vec<ManifestEntry> {
    registry()
        .iter()
        .map(|d| ManifestEntry {
            id: d.id,
            statement: d.statement,
            residues: d.residues.clone(),
            claim: d.claim(),
            claimed_min: d.claimed_min(),
        })
        .collect()
}
