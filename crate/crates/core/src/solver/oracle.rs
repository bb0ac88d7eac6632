//! Plain lexicographic enumeration, used as a reference for the pruned search.

use super::{DimResult, Method, Minimality, SolverError};
use crate::graph::{CirculantGraph, Vertex};

/// Default cap on the number of subsets the oracle will test per size.
pub const DEFAULT_ORACLE_BUDGET: u64 = 5_000_000;

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

fn resolves(g: &CirculantGraph, set: &[Vertex]) -> bool {
    let n = g.order();
    let w = set.len();
    let mut flat = vec![0u16; n * w];
    for v in 0..n {
        for (j, &s) in set.iter().enumerate() {
            flat[v * w + j] = g.dist(v, s);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| flat[a * w..(a + 1) * w].cmp(&flat[b * w..(b + 1) * w]));
    order
        .windows(2)
        .all(|p| flat[p[0] * w..(p[0] + 1) * w] != flat[p[1] * w..(p[1] + 1) * w])
}

/// Smallest `k` such that some `k`-set containing 0 resolves `g`, found by
/// testing every such set in lexicographic order. Vertex transitivity makes
/// fixing 0 lossless.
///
/// Fails with [`SolverError::BudgetExceeded`] before starting any size whose
/// subset count exceeds `budget`.
pub fn brute_force_dim(g: &CirculantGraph, budget: u64) -> Result<DimResult, SolverError> {
    Ok(brute_force_dim_below(g, g.order() + 1, budget)?
        .expect("the full vertex set always resolves"))
}

/// Like [`brute_force_dim`], but only tries sizes below `bound`. `None` means
/// every such size was exhausted, so the dimension is at least `bound`.
pub fn brute_force_dim_below(
    g: &CirculantGraph,
    bound: usize,
    budget: u64,
) -> Result<Option<DimResult>, SolverError> {
    let n = g.order();
    let mut nodes = 0u64;
    for k in 1..bound.min(n + 1) {
        let count = binomial(n as u64 - 1, k as u64 - 1);
        if count > budget {
            return Err(SolverError::BudgetExceeded { budget });
        }
        let mut set: Vec<Vertex> = (0..k).collect();
        loop {
            nodes += 1;
            if resolves(g, &set) {
                return Ok(Some(DimResult {
                    dim: k,
                    basis: set,
                    method: Method::Oracle,
                    nodes_explored: nodes,
                    lower_bound_used: 1,
                    minimality: if k == 1 {
                        Minimality::CountingBound
                    } else {
                        Minimality::Exhausted { size: k - 1 }
                    },
                }));
            }
            // next combination of set[1..] from 1..n
            let mut i = k;
            while i > 1 && set[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i <= 1 {
                break;
            }
            set[i - 1] += 1;
            for j in i..k {
                set[j] = set[j - 1] + 1;
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(40, 5), 658_008);
        assert_eq!(binomial(3, 4), 0);
    }

    #[test]
    fn small_dimensions() {
        let c13 = CirculantGraph::consecutive(13, 4).unwrap();
        let r = brute_force_dim(&c13, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(r.dim, 5);
        let k8 = CirculantGraph::consecutive(8, 4).unwrap();
        assert_eq!(brute_force_dim(&k8, DEFAULT_ORACLE_BUDGET).unwrap().dim, 7);
        let cycle = CirculantGraph::new(9, &[1]).unwrap();
        let r = brute_force_dim(&cycle, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!((r.dim, r.basis), (2, vec![0, 1]));
    }

    #[test]
    fn enumerates_every_subset_in_order() {
        // K_6 needs 5 landmarks: C(5,0)+C(5,1)+C(5,2)+C(5,3)+1 tests
        let k6 = CirculantGraph::new(6, &[1, 2, 3]).unwrap();
        let r = brute_force_dim(&k6, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(r.dim, 5);
        assert_eq!(r.basis, vec![0, 1, 2, 3, 4]);
        assert_eq!(r.nodes_explored, 1 + 5 + 10 + 10 + 1);
    }

    #[test]
    fn below_stops_at_the_bound() {
        let c13 = CirculantGraph::consecutive(13, 4).unwrap();
        assert_eq!(brute_force_dim_below(&c13, 5, DEFAULT_ORACLE_BUDGET).unwrap(), None);
        let hit = brute_force_dim_below(&c13, 6, DEFAULT_ORACLE_BUDGET).unwrap().unwrap();
        assert_eq!(hit.dim, 5);
    }

    #[test]
    fn budget_is_checked_per_size() {
        let g = CirculantGraph::consecutive(40, 4).unwrap();
        assert_eq!(
            brute_force_dim(&g, 100).unwrap_err(),
            SolverError::BudgetExceeded { budget: 100 }
        );
    }
}
