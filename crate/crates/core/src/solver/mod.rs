//! Exact metric dimension.
//!
//! [`exact_dim`] runs a symmetry-reduced branch-and-prune search; the
//! independent [`brute_force_dim`] oracle enumerates plainly and shares no
//! search code with it. [`min_resolvers`] answers the cluster version of the
//! question: the fewest landmarks from an allowed set that separate every
//! pair inside every block.

mod cluster;
mod oracle;
mod search;

use serde::Serialize;
use thiserror::Error;

use crate::formulas::known_bounds;
use crate::graph::{CirculantGraph, Vertex};
use crate::resolve::ResolveError;

pub use cluster::{min_resolvers, min_resolvers_bounded, MinResolvers};
pub use oracle::{brute_force_dim, brute_force_dim_below, DEFAULT_ORACLE_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("no resolving set of size <= {max_k} exists")]
    CapExceeded { max_k: usize },
    #[error("search budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("allowed vertex set is empty")]
    EmptyAllowed,
    #[error(transparent)]
    Resolve(#[from] ResolveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Formula,
    Search,
    Oracle,
}

/// Why no smaller resolving set exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Minimality {
    /// `(diameter + 1)^(dim - 1) < n`, so `dim - 1` landmarks cannot give
    /// `n` distinct representations.
    CountingBound,
    /// Every set of this size was ruled out by search.
    Exhausted { size: usize },
    /// Taken from a closed form, not certified here.
    Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimResult {
    pub dim: usize,
    /// Sorted metric basis.
    pub basis: Vec<Vertex>,
    pub method: Method,
    pub nodes_explored: u64,
    pub lower_bound_used: usize,
    pub minimality: Minimality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOptions {
    pub max_k: Option<usize>,
    /// Fix the reflection `v -> -v` by keeping only sets with `S <= -S`.
    pub use_symmetry: bool,
    /// Prune when `classes * (diameter + 1)^remaining < n`.
    pub use_class_bound: bool,
    /// Require every completed set to meet every `R_i` (consecutive steps only).
    pub use_hitting_sets: bool,
    /// Start deepening just below the general lower bounds.
    pub use_known_bounds: bool,
    pub worker_count: usize,
    /// Cap on explored search nodes.
    pub node_budget: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            max_k: None,
            use_symmetry: true,
            use_class_bound: true,
            use_hitting_sets: true,
            use_known_bounds: true,
            worker_count: 1,
            node_budget: None,
        }
    }
}

impl SearchOptions {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.worker_count = workers.max(1);
        self
    }

    pub fn with_max_k(mut self, max_k: usize) -> Self {
        self.max_k = Some(max_k.max(1));
        self
    }

    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = Some(budget);
        self
    }
}

/// Least `k` with `(diameter + 1)^k >= n`.
pub fn counting_lower_bound(g: &CirculantGraph) -> usize {
    let base = u128::from(g.diameter()) + 1;
    let n = g.order() as u128;
    let mut k = 0;
    let mut reach = 1u128;
    while reach < n {
        reach = reach.saturating_mul(base);
        k += 1;
    }
    k.max(1)
}

fn theory_lower_bound(g: &CirculantGraph) -> Option<usize> {
    let t = g.max_consecutive_step()?;
    known_bounds(g.order(), t).ok().map(|b| b.lower)
}

/// Searches for a resolving set of exactly `k` vertices. Returns the
/// lexicographically least one, which always contains 0.
pub fn find_resolving_set(
    g: &CirculantGraph,
    k: usize,
    opts: &SearchOptions,
) -> Result<(Option<Vec<Vertex>>, u64), SolverError> {
    search::search_size(g, k, opts)
}

/// Exact metric dimension by iterative deepening over the basis size.
///
/// Deepening starts at the counting bound, or one below the general lower
/// bound when that is larger, so that the reported dimension always rests on
/// an exhausted smaller size or on the counting bound.
pub fn exact_dim(g: &CirculantGraph, opts: &SearchOptions) -> Result<DimResult, SolverError> {
    let n = g.order();
    let counting = counting_lower_bound(g);
    let theory = if opts.use_known_bounds {
        theory_lower_bound(g).unwrap_or(0)
    } else {
        0
    };
    let lower_bound_used = counting.max(theory);
    let start = counting.max(theory.saturating_sub(1));
    let cap = opts.max_k.unwrap_or(n - 1).min(n - 1);

    let mut nodes = 0u64;
    let mut k = start;
    let (mut dim, mut basis) = loop {
        if k > cap {
            return Err(SolverError::CapExceeded { max_k: cap });
        }
        let (hit, used) = search::search_size(g, k, opts)?;
        nodes += used;
        if let Some(basis) = hit {
            break (k, basis);
        }
        k += 1;
    };

    // Sizes start..dim are exhausted. If the answer landed on `start` itself
    // the size below still needs ruling out, unless counting already does it.
    // Finding a set there would mean a general lower bound was wrong.
    let minimality = loop {
        if dim <= counting {
            break Minimality::CountingBound;
        }
        if dim > start {
            break Minimality::Exhausted { size: dim - 1 };
        }
        let (hit, used) = search::search_size(g, dim - 1, opts)?;
        nodes += used;
        match hit {
            Some(smaller) => {
                dim -= 1;
                basis = smaller;
            }
            None => break Minimality::Exhausted { size: dim - 1 },
        }
    };

    Ok(DimResult {
        dim,
        basis,
        method: Method::Search,
        nodes_explored: nodes,
        lower_bound_used,
        minimality,
    })
}
