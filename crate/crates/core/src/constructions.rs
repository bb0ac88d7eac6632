//! Explicit metric bases for `C(n, ±{1,2,3,4})`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::formulas::formula_dim;
use crate::graph::{CirculantGraph, GraphError, Vertex};
use crate::resolve::{is_resolving, ResolveError};
use crate::solver::{exact_dim, find_resolving_set, SearchOptions, SolverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("constructions start at n = 5, got {0}")]
    OrderTooSmall(usize),
    #[error("range verification covers residues 7 and 9 only, got {0}")]
    UnsupportedResidue(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Small5,
    Small11,
    Small19,
    Upper8k7,
    Upper8k9,
    SearchFallback,
}

impl Source {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Small5 => "small-5",
            Self::Small11 => "small-11",
            Self::Small19 => "small-19",
            Self::Upper8k7 => "upper-8k7",
            Self::Upper8k9 => "upper-8k9",
            Self::SearchFallback => "search-fallback",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub n: usize,
    pub basis: Vec<Vertex>,
    pub source: Source,
    pub verified: bool,
    pub matches_formula: bool,
    /// The set as it is usually printed, when it differs from `basis`.
    pub printed: Option<Vec<usize>>,
    pub anomaly: Option<String>,
}

/// The witness usually printed for `n = 19`. Vertex 19 is vertex 0 again.
pub const PRINTED_19: [usize; 4] = [0, 2, 7, 19];

/// Explicit basis for `n = 8k + 9`, `k >= 1`.
pub fn upper_8k9(k: usize) -> Vec<Vertex> {
    vec![0, 1, 4, 7, 4 * k + 6, 4 * k + 7]
}

/// Explicit basis for `n = 8k + 7`, `k >= 1`.
pub fn upper_8k7() -> Vec<Vertex> {
    vec![0, 1, 2, 3, 4, 5]
}

/// A metric basis of `C(n, ±{1,2,3,4})` with its provenance, re-verified.
pub fn basis_t4(n: usize) -> Result<ConstructionReport, ConstructionError> {
    basis_t4_with(n, &SearchOptions::default())
}

/// [`basis_t4`] with explicit options for the search fallback.
pub fn basis_t4_with(
    n: usize,
    opts: &SearchOptions,
) -> Result<ConstructionReport, ConstructionError> {
    if n < 5 {
        return Err(ConstructionError::OrderTooSmall(n));
    }
    let g = CirculantGraph::consecutive(n, 4)?;
    let formula = formula_dim(n, 4);
    let (basis, source) = match n {
        5 => (vec![0, 1, 2, 3], Source::Small5),
        11 => (vec![0, 2, 3, 10], Source::Small11),
        19 => (searched(&g, formula, opts)?, Source::Small19),
        n if n >= 17 && n % 8 == 1 => (upper_8k9((n - 9) / 8), Source::Upper8k9),
        n if n >= 15 && n % 8 == 7 => (upper_8k7(), Source::Upper8k7),
        _ => (searched(&g, formula, opts)?, Source::SearchFallback),
    };
    let (printed, anomaly) = if n == 19 {
        (Some(PRINTED_19.to_vec()), Some(printed_anomaly(n, &PRINTED_19)))
    } else {
        (None, None)
    };
    let verified = is_resolving(&g, &basis)?.is_resolved();
    Ok(ConstructionReport {
        n,
        matches_formula: formula == Some(basis.len()),
        basis,
        source,
        verified,
        printed,
        anomaly,
    })
}

fn searched(
    g: &CirculantGraph,
    formula: Option<usize>,
    opts: &SearchOptions,
) -> Result<Vec<Vertex>, SolverError> {
    if let Some(k) = formula {
        if let (Some(basis), _) = find_resolving_set(g, k, opts)? {
            return Ok(basis);
        }
    }
    Ok(exact_dim(g, opts)?.basis)
}

fn printed_anomaly(n: usize, printed: &[usize]) -> String {
    let mut reduced: Vec<usize> = printed.iter().map(|v| v % n).collect();
    reduced.sort_unstable();
    reduced.dedup();
    let clash = printed
        .iter()
        .enumerate()
        .find(|&(i, v)| printed[..i].iter().any(|u| u % n == v % n))
        .map(|(_, &v)| v);
    match clash {
        Some(v) => format!(
            "printed vertex {v} is {} mod {n}, a duplicate; the printed set has only {} distinct vertices",
            v % n,
            reduced.len()
        ),
        None => String::new(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RangeVerdict {
    pub k: usize,
    pub n: usize,
    pub basis: Vec<Vertex>,
    pub resolving: bool,
    pub size_matches: bool,
}

impl RangeVerdict {
    pub fn passed(&self) -> bool {
        self.resolving && self.size_matches
    }
}

/// Checks the explicit basis for `n = 8k + residue` at every `k` in `1..=k_max`.
pub fn verify_construction_range(
    residue: usize,
    k_max: usize,
) -> Result<Vec<RangeVerdict>, ConstructionError> {
    if residue != 7 && residue != 9 {
        return Err(ConstructionError::UnsupportedResidue(residue));
    }
    (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let n = 8 * k + residue;
            let g = CirculantGraph::consecutive(n, 4)?;
            let basis = if residue == 9 { upper_8k9(k) } else { upper_8k7() };
            let resolving = is_resolving(&g, &basis)?.is_resolved();
            Ok(RangeVerdict {
                k,
                n,
                size_matches: formula_dim(n, 4) == Some(basis.len()),
                basis,
                resolving,
            })
        })
        .collect()
}
