//! Circulant graphs on `Z_n` with a precomputed distance table.
//!
//! A circulant `C(n, ±S)` joins `i` and `j` whenever `|i - j| mod n` lies in the
//! step set `S`. Steps are canonicalized on construction: each step `s` is
//! folded to `min(s mod n, n - s mod n)`, zeros are dropped and duplicates
//! merged, so inputs such as `C(6, ±{1,2,3,4})` are well defined.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

/// Vertex of a circulant graph, always in `0..n`.
pub type Vertex = usize;

/// Hop count between two vertices.
pub type Hops = u16;

/// Largest order accepted. The distance table is `n * n` entries.
pub const MAX_ORDER: usize = 8192;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("order must be at least 3, got {0}")]
    OrderTooSmall(usize),
    #[error("order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("maximum step must be at least 1, got {0}")]
    StepTooSmall(usize),
    #[error("step set is empty after reduction modulo {0}")]
    EmptySteps(usize),
    #[error("steps {steps:?} do not generate Z_{n}; graph is disconnected")]
    Disconnected { n: usize, steps: Vec<usize> },
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("diameter set needs steps {{1,2,3,4}} and n = 8k + r with k >= 1, r in 2..=9 (got n = {n})")]
    NotT4Family { n: usize },
}

/// `n = 8k + r` with `k >= 1` and `r` in `2..=9`, the parametrization used
/// throughout the `t = 4` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrderSplit {
    pub k: usize,
    pub r: usize,
}

impl OrderSplit {
    pub fn of(n: usize) -> Option<Self> {
        if n < 10 {
            return None;
        }
        let k = (n - 2) / 8;
        Some(Self { k, r: n - 8 * k })
    }

    pub fn order(self) -> usize {
        8 * self.k + self.r
    }
}

/// Folds a step list into its canonical residue set.
pub fn canonical_steps(n: usize, steps: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = steps
        .iter()
        .map(|&s| {
            let s = s % n;
            s.min(n - s)
        })
        .filter(|&s| s != 0)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Closed-form distance in `C(n, ±{1..t})`.
///
/// With `delta = |j - i|`, the distance is `ceil(delta / t)` when
/// `delta <= n/2` and `ceil((n - delta) / t)` otherwise. At `delta = n/2`
/// (even `n`) both branches coincide.
///
/// # Panics
///
/// Panics if `t == 0` or either vertex is not in `0..n`.
pub fn distance_closed_form(n: usize, t: usize, i: Vertex, j: Vertex) -> Hops {
    assert!(t >= 1, "step bound must be positive");
    assert!(i < n && j < n, "vertices ({i}, {j}) out of range for n = {n}");
    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
    let delta = hi - lo;
    let span = if delta <= n / 2 { delta } else { n - delta };
    span.div_ceil(t) as Hops
}

/// Breadth-first distance, independent of the cached table.
///
/// # Panics
///
/// Panics if either vertex is out of range.
pub fn distance_bfs(g: &CirculantGraph, i: Vertex, j: Vertex) -> Hops {
    let n = g.n;
    assert!(i < n && j < n, "vertices ({i}, {j}) out of range for n = {n}");
    if i == j {
        return 0;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([(i, 0 as Hops)]);
    seen[i] = true;
    while let Some((v, d)) = queue.pop_front() {
        for w in g.neighbors(v) {
            if w == j {
                return d + 1;
            }
            if !seen[w] {
                seen[w] = true;
                queue.push_back((w, d + 1));
            }
        }
    }
    unreachable!("circulant graphs are connected by construction")
}

fn bfs_row(n: usize, steps: &[usize], source: Vertex) -> Vec<Hops> {
    let mut row = vec![Hops::MAX; n];
    row[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = row[v];
        for &s in steps {
            for w in [(v + s) % n, (v + n - s) % n] {
                if row[w] == Hops::MAX {
                    row[w] = d + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    row
}

/// Immutable circulant graph with an eagerly built `n x n` distance table.
#[derive(Debug, Clone)]
pub struct CirculantGraph {
    n: usize,
    steps: Vec<usize>,
    /// `Some(t)` when the canonical steps are exactly `{1..t}`.
    consecutive: Option<usize>,
    dist: Vec<Hops>,
    diameter: Hops,
}

impl CirculantGraph {
    /// `C(n, ±steps)` for an arbitrary step list. Distances come from BFS
    /// unless the canonical steps happen to be `{1..t}`.
    pub fn new(n: usize, steps: &[usize]) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::OrderTooSmall(n));
        }
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        let steps = canonical_steps(n, steps);
        if steps.is_empty() {
            return Err(GraphError::EmptySteps(n));
        }
        if steps.iter().fold(n, |acc, &s| gcd(acc, s)) != 1 {
            return Err(GraphError::Disconnected { n, steps });
        }
        let consecutive = steps
            .iter()
            .enumerate()
            .all(|(idx, &s)| s == idx + 1)
            .then_some(steps.len());

        let mut dist = vec![0 as Hops; n * n];
        match consecutive {
            Some(t) => {
                for i in 0..n {
                    for j in 0..n {
                        dist[i * n + j] = distance_closed_form(n, t, i, j);
                    }
                }
            }
            None => {
                for i in 0..n {
                    dist[i * n..(i + 1) * n].copy_from_slice(&bfs_row(n, &steps, i));
                }
            }
        }
        let diameter = dist.iter().copied().max().unwrap_or(0);
        Ok(Self {
            n,
            steps,
            consecutive,
            dist,
            diameter,
        })
    }

    /// `C(n, ±{1..t})`, the family this crate is about.
    pub fn consecutive(n: usize, t: usize) -> Result<Self, GraphError> {
        if t < 1 {
            return Err(GraphError::StepTooSmall(t));
        }
        if n < 3 {
            return Err(GraphError::OrderTooSmall(n));
        }
        // Steps beyond n/2 only fold back onto {1..n/2}.
        let t = t.min(n / 2);
        let steps: Vec<usize> = (1..=t).collect();
        Self::new(n, &steps)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    /// `Some(t)` when the step set is `{1..t}`.
    pub fn max_consecutive_step(&self) -> Option<usize> {
        self.consecutive
    }

    pub fn is_complete(&self) -> bool {
        self.diameter == 1
    }

    #[inline]
    pub fn dist(&self, i: Vertex, j: Vertex) -> Hops {
        self.dist[i * self.n + j]
    }

    /// Distances from `v` to every vertex.
    #[inline]
    pub fn row(&self, v: Vertex) -> &[Hops] {
        &self.dist[v * self.n..(v + 1) * self.n]
    }

    pub fn diameter(&self) -> Hops {
        self.diameter
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let n = self.n;
        self.steps.iter().flat_map(move |&s| {
            let fwd = (v + s) % n;
            let back = (v + n - s) % n;
            // s = n/2 for even n reaches the same vertex both ways
            std::iter::once(fwd).chain((back != fwd).then_some(back))
        })
    }

    /// `D_v`: the vertices at diameter distance from `v` in
    /// `C(8k + r, ±{1,2,3,4})`, namely `{v + 4k + j : j = 1..r-1}`.
    pub fn diameter_set(&self, v: Vertex) -> Result<Vec<Vertex>, GraphError> {
        self.check_vertex(v)?;
        let split = match (self.consecutive, OrderSplit::of(self.n)) {
            (Some(4), Some(split)) => split,
            _ => return Err(GraphError::NotT4Family { n: self.n }),
        };
        let mut out: Vec<Vertex> = (1..split.r)
            .map(|j| (v + 4 * split.k + j) % self.n)
            .collect();
        out.sort_unstable();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consecutive_canonicalization() {
        assert_eq!(CirculantGraph::consecutive(13, 4).unwrap().steps(), &[1, 2, 3, 4]);

        let g8 = CirculantGraph::consecutive(8, 4).unwrap();
        assert_eq!(g8.steps(), &[1, 2, 3, 4]);
        assert!(g8.is_complete());

        let g6 = CirculantGraph::consecutive(6, 4).unwrap();
        assert_eq!(g6.steps(), &[1, 2, 3]);
        assert!(g6.is_complete());
        assert_eq!(g6.max_consecutive_step(), Some(3));
        // 4 = -2 mod 6 via the generic constructor as well
        assert_eq!(canonical_steps(6, &[1, 2, 3, 4]), vec![1, 2, 3]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            CirculantGraph::consecutive(2, 1).unwrap_err(),
            GraphError::OrderTooSmall(2)
        );
        assert_eq!(
            CirculantGraph::consecutive(10, 0).unwrap_err(),
            GraphError::StepTooSmall(0)
        );
        assert!(matches!(
            CirculantGraph::new(12, &[3, 6]),
            Err(GraphError::Disconnected { .. })
        ));
        assert_eq!(CirculantGraph::new(7, &[7, 14]).unwrap_err(), GraphError::EmptySteps(7));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(distance_closed_form(13, 4, 0, 6), 2);
        assert_eq!(distance_closed_form(13, 4, 0, 7), 2);
        assert_eq!(distance_closed_form(13, 4, 7, 0), 2);
        for v in 0..13 {
            assert_eq!(distance_closed_form(13, 4, v, v), 0);
        }
    }

    #[test]
    fn antipodal_branch_for_even_order() {
        // delta = n/2 sits on both branches of the closed form
        for (n, t) in [(10, 4), (12, 5), (20, 3), (16, 1)] {
            let g = CirculantGraph::consecutive(n, t).unwrap();
            let half = n / 2;
            let expected = half.div_ceil(t) as Hops;
            assert_eq!(distance_closed_form(n, t, 0, half), expected);
            assert_eq!(distance_bfs(&g, 0, half), expected);
            assert_eq!(distance_bfs(&g, half, 0), expected);
        }
    }

    #[test]
    fn bfs_examples() {
        let g13 = CirculantGraph::consecutive(13, 4).unwrap();
        assert_eq!(distance_bfs(&g13, 0, 6), 2);
        let g10 = CirculantGraph::consecutive(10, 4).unwrap();
        assert_eq!(distance_bfs(&g10, 0, 5), 2);
        assert_eq!(distance_bfs(&g10, 3, 3), 0);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(CirculantGraph::consecutive(13, 4).unwrap().diameter(), 2);
        assert_eq!(CirculantGraph::consecutive(8, 4).unwrap().diameter(), 1);
        assert_eq!(CirculantGraph::consecutive(20, 4).unwrap().diameter(), 3);
    }

    #[test]
    fn diameter_set_examples() {
        let g13 = CirculantGraph::consecutive(13, 4).unwrap();
        assert_eq!(g13.diameter_set(0).unwrap(), vec![5, 6, 7, 8]);
        assert_eq!(g13.diameter_set(1).unwrap(), vec![6, 7, 8, 9]);

        let g23 = CirculantGraph::consecutive(23, 4).unwrap();
        let d0 = g23.diameter_set(0).unwrap();
        assert_eq!(d0, (9..=14).collect::<Vec<_>>());
        let brute: Vec<Vertex> = (0..23).filter(|&u| g23.dist(0, u) == g23.diameter()).collect();
        assert_eq!(d0, brute);
    }

    #[test]
    fn diameter_set_rejects_other_families() {
        let g = CirculantGraph::consecutive(13, 3).unwrap();
        assert_eq!(g.diameter_set(0).unwrap_err(), GraphError::NotT4Family { n: 13 });
        let small = CirculantGraph::consecutive(9, 4).unwrap();
        assert!(small.diameter_set(0).is_err());
        let g = CirculantGraph::consecutive(13, 4).unwrap();
        assert!(matches!(g.diameter_set(13), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn order_split() {
        assert_eq!(OrderSplit::of(13), Some(OrderSplit { k: 1, r: 5 }));
        assert_eq!(OrderSplit::of(17), Some(OrderSplit { k: 1, r: 9 }));
        assert_eq!(OrderSplit::of(18), Some(OrderSplit { k: 2, r: 2 }));
        assert_eq!(OrderSplit::of(9), None);
    }

    #[test]
    fn generic_steps_use_bfs() {
        let g = CirculantGraph::new(12, &[1, 5]).unwrap();
        assert_eq!(g.max_consecutive_step(), None);
        for i in 0..12 {
            for j in 0..12 {
                assert_eq!(g.dist(i, j), distance_bfs(&g, i, j));
            }
        }
    }
}
