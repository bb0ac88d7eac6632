//! Fewest landmarks from an allowed set that resolve a cluster.

use serde::Serialize;

use super::SolverError;
use crate::graph::{CirculantGraph, Vertex};
use crate::resolve::{Cluster, ResolveError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum MinResolvers {
    /// `witness` is the lexicographically least set of the minimum size.
    Found { size: usize, witness: Vec<Vertex> },
    /// Some pair inside a block is equidistant from every allowed vertex.
    Unresolvable,
}

impl MinResolvers {
    pub fn size(&self) -> Option<usize> {
        match self {
            Self::Found { size, .. } => Some(*size),
            Self::Unresolvable => None,
        }
    }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Same as [`min_resolvers_bounded`] with no size cap.
pub fn min_resolvers(
    g: &CirculantGraph,
    cluster: &Cluster,
    allowed: &[Vertex],
) -> Result<MinResolvers, SolverError> {
    min_resolvers_bounded(g, cluster, allowed, usize::MAX)
}

/// Least `m <= max_size` such that `m` vertices of `allowed` separate every
/// pair inside every block of `cluster`.
///
/// Returns [`SolverError::CapExceeded`] when the pairs can be separated but
/// not within `max_size` vertices.
pub fn min_resolvers_bounded(
    g: &CirculantGraph,
    cluster: &Cluster,
    allowed: &[Vertex],
    max_size: usize,
) -> Result<MinResolvers, SolverError> {
    if allowed.is_empty() {
        return Err(SolverError::EmptyAllowed);
    }
    for &v in allowed {
        g.check_vertex(v).map_err(ResolveError::from)?;
    }
    let mut allowed = allowed.to_vec();
    allowed.sort_unstable();
    allowed.dedup();

    let pairs: Vec<(Vertex, Vertex)> = cluster
        .blocks()
        .iter()
        .flat_map(|b| {
            b.iter()
                .enumerate()
                .flat_map(move |(i, &u)| b[i + 1..].iter().map(move |&v| (u, v)))
        })
        .collect();
    if pairs.is_empty() {
        return Ok(MinResolvers::Found {
            size: 0,
            witness: Vec::new(),
        });
    }

    let mut candidates: Vec<(Vertex, Bits)> = Vec::new();
    let mut union = Bits::zeros(pairs.len());
    for &x in &allowed {
        let mut bits = Bits::zeros(pairs.len());
        let mut any = false;
        for (p, &(u, v)) in pairs.iter().enumerate() {
            if g.dist(x, u) != g.dist(x, v) {
                bits.set(p);
                any = true;
            }
        }
        if any {
            union.or_assign(&bits);
            candidates.push((x, bits));
        }
    }
    if union.count() < pairs.len() {
        return Ok(MinResolvers::Unresolvable);
    }

    let cap = max_size.min(candidates.len());
    for m in 1..=cap {
        let mut picked = Vec::with_capacity(m);
        if choose(&candidates, pairs.len(), m, 0, &Bits::zeros(pairs.len()), &mut picked) {
            return Ok(MinResolvers::Found {
                size: m,
                witness: picked,
            });
        }
    }
    Err(SolverError::CapExceeded { max_k: max_size })
}

fn choose(
    candidates: &[(Vertex, Bits)],
    total: usize,
    m: usize,
    from: usize,
    covered: &Bits,
    picked: &mut Vec<Vertex>,
) -> bool {
    if picked.len() == m {
        return covered.count() == total;
    }
    let need = m - picked.len();
    for idx in from..=candidates.len().saturating_sub(need) {
        let (x, bits) = &candidates[idx];
        let mut next = covered.clone();
        next.or_assign(bits);
        picked.push(*x);
        if choose(candidates, total, m, idx + 1, &next, picked) {
            return true;
        }
        picked.pop();
    }
    false
}
