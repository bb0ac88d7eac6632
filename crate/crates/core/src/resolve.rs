//! Representations, resolving sets, `~_S` classes, blocks, clusters and the
//! pair-resolver sets `R_i`.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{CirculantGraph, GraphError, Hops, OrderSplit, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("landmark list is empty")]
    EmptyLandmarks,
    #[error("cluster has no blocks")]
    EmptyCluster,
    #[error("cluster block {0} is empty")]
    EmptyBlock(usize),
    #[error("vertex {0} appears more than once in the cluster")]
    OverlappingBlocks(Vertex),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `r(v|X)`: distances from `v` to the landmarks, in landmark order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RepresentationVector {
    pub landmarks: Vec<Vertex>,
    pub coords: Vec<Hops>,
}

/// Two distinct vertices with identical representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct WitnessPair {
    pub u: Vertex,
    pub v: Vertex,
}

/// Outcome of a resolution check. The witness is always the
/// lexicographically least unresolved pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Resolution {
    Resolved,
    Unresolved(WitnessPair),
}

impl Resolution {
    pub fn is_resolved(&self) -> bool {
        matches!(self, Resolution::Resolved)
    }

    pub fn witness(&self) -> Option<WitnessPair> {
        match self {
            Resolution::Resolved => None,
            Resolution::Unresolved(w) => Some(*w),
        }
    }
}

fn check_all(g: &CirculantGraph, vs: &[Vertex]) -> Result<(), ResolveError> {
    vs.iter().try_for_each(|&v| g.check_vertex(v).map_err(ResolveError::from))
}

pub fn representation(
    g: &CirculantGraph,
    v: Vertex,
    landmarks: &[Vertex],
) -> Result<RepresentationVector, ResolveError> {
    if landmarks.is_empty() {
        return Err(ResolveError::EmptyLandmarks);
    }
    g.check_vertex(v)?;
    check_all(g, landmarks)?;
    Ok(RepresentationVector {
        landmarks: landmarks.to_vec(),
        coords: landmarks.iter().map(|&x| g.dist(v, x)).collect(),
    })
}

fn coords(g: &CirculantGraph, v: Vertex, landmarks: &[Vertex]) -> Vec<Hops> {
    landmarks.iter().map(|&x| g.dist(v, x)).collect()
}

/// Groups `vertices` by representation. Classes come out ordered by their
/// least member when `vertices` is ascending.
fn group_by_representation(
    g: &CirculantGraph,
    landmarks: &[Vertex],
    vertices: impl IntoIterator<Item = Vertex>,
) -> Vec<Vec<Vertex>> {
    let mut index: HashMap<Vec<Hops>, usize> = HashMap::new();
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    for v in vertices {
        let key = coords(g, v, landmarks);
        match index.get(&key) {
            Some(&c) => classes[c].push(v),
            None => {
                index.insert(key, classes.len());
                classes.push(vec![v]);
            }
        }
    }
    classes
}

fn least_collision(classes: &[Vec<Vertex>]) -> Option<WitnessPair> {
    classes
        .iter()
        .filter(|c| c.len() >= 2)
        .map(|c| {
            let mut sorted = c.clone();
            sorted.sort_unstable();
            WitnessPair { u: sorted[0], v: sorted[1] }
        })
        .min()
}

/// Checks whether `landmarks` resolves the whole graph.
pub fn is_resolving(g: &CirculantGraph, landmarks: &[Vertex]) -> Result<Resolution, ResolveError> {
    check_all(g, landmarks)?;
    let classes = group_by_representation(g, landmarks, 0..g.order());
    Ok(match least_collision(&classes) {
        None => Resolution::Resolved,
        Some(w) => Resolution::Unresolved(w),
    })
}

/// The partition of `V` induced by `~_S`, classes ordered by least member.
pub fn equivalence_classes(
    g: &CirculantGraph,
    landmarks: &[Vertex],
) -> Result<Vec<Vec<Vertex>>, ResolveError> {
    check_all(g, landmarks)?;
    Ok(group_by_representation(g, landmarks, 0..g.order()))
}

/// True when every vertex of `block` has the same representation under `landmarks`.
pub fn is_block(
    g: &CirculantGraph,
    landmarks: &[Vertex],
    block: &[Vertex],
) -> Result<bool, ResolveError> {
    check_all(g, landmarks)?;
    check_all(g, block)?;
    Ok(block
        .iter()
        .all(|&a| landmarks.iter().all(|&s| g.dist(a, s) == g.dist(block[0], s))))
}

/// Ordered tuple of pairwise disjoint, nonempty vertex sets that must be
/// resolved simultaneously.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cluster {
    blocks: Vec<Vec<Vertex>>,
}

impl Cluster {
    pub fn new(g: &CirculantGraph, blocks: Vec<Vec<Vertex>>) -> Result<Self, ResolveError> {
        if blocks.is_empty() {
            return Err(ResolveError::EmptyCluster);
        }
        let mut seen = vec![false; g.order()];
        let mut blocks = blocks;
        for (idx, block) in blocks.iter_mut().enumerate() {
            if block.is_empty() {
                return Err(ResolveError::EmptyBlock(idx));
            }
            block.sort_unstable();
            for &v in block.iter() {
                g.check_vertex(v)?;
                if std::mem::replace(&mut seen[v], true) {
                    return Err(ResolveError::OverlappingBlocks(v));
                }
            }
        }
        Ok(Self { blocks })
    }

    pub fn single(g: &CirculantGraph, block: Vec<Vertex>) -> Result<Self, ResolveError> {
        Self::new(g, vec![block])
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.blocks.iter().flatten().copied()
    }

    pub fn all_singletons(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }
}

/// Checks that `landmarks` separates every pair inside each block. Pairs
/// drawn from different blocks may collide. An empty landmark list resolves
/// a cluster only when every block is a singleton.
pub fn resolves_cluster(
    g: &CirculantGraph,
    landmarks: &[Vertex],
    cluster: &Cluster,
) -> Result<Resolution, ResolveError> {
    check_all(g, landmarks)?;
    let witness = cluster
        .blocks()
        .iter()
        .filter_map(|b| least_collision(&group_by_representation(g, landmarks, b.iter().copied())))
        .min();
    Ok(match witness {
        None => Resolution::Resolved,
        Some(w) => Resolution::Unresolved(w),
    })
}

/// True when each block is an `S`-block and distinct blocks lie in distinct
/// `~_S` classes.
pub fn is_s_cluster(
    g: &CirculantGraph,
    landmarks: &[Vertex],
    cluster: &Cluster,
) -> Result<bool, ResolveError> {
    for b in cluster.blocks() {
        if !is_block(g, landmarks, b)? {
            return Ok(false);
        }
    }
    let reps: Vec<Vec<Hops>> = cluster
        .blocks()
        .iter()
        .map(|b| coords(g, b[0], landmarks))
        .collect();
    for (i, a) in reps.iter().enumerate() {
        if reps[i + 1..].contains(a) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest `S` for which every block of `cluster` is an `S`-block, returned
/// only if that `S` also places the blocks in distinct classes.
///
/// The block condition is per landmark, so every admissible `S` is a subset
/// of this maximal one, while class separation only improves as `S` grows.
/// Hence some `S` induces the cluster iff the maximal one does.
pub fn inducing_landmarks(g: &CirculantGraph, cluster: &Cluster) -> Option<Vec<Vertex>> {
    let landmarks: Vec<Vertex> = (0..g.order())
        .filter(|&s| {
            cluster
                .blocks()
                .iter()
                .all(|b| b.iter().all(|&a| g.dist(a, s) == g.dist(b[0], s)))
        })
        .collect();
    if cluster.blocks().len() == 1 {
        return Some(landmarks);
    }
    // validity of the vertices was checked when the cluster was built
    is_s_cluster(g, &landmarks, cluster)
        .unwrap_or(false)
        .then_some(landmarks)
}

/// `R_i = {x : d(x, i) != d(x, i + 1)}`, found by scanning every vertex.
pub fn pair_resolvers(g: &CirculantGraph, i: Vertex) -> Result<Vec<Vertex>, ResolveError> {
    g.check_vertex(i)?;
    let next = (i + 1) % g.order();
    Ok((0..g.order()).filter(|&x| g.dist(x, i) != g.dist(x, next)).collect())
}

/// Closed form of `R_i` in `C(8k + r, ±{1,2,3,4})`:
/// `{i - 4j : 0 <= j <= k} ∪ {i + 1 + 4j : 0 <= j <= k}`, sorted.
/// `None` when `n` is not of the form `8k + r` with `k >= 1`, `r` in `2..=9`.
pub fn pair_resolvers_closed_form_t4(n: usize, i: Vertex) -> Option<Vec<Vertex>> {
    let split = OrderSplit::of(n)?;
    let mut out: Vec<Vertex> = (0..=split.k)
        .flat_map(|j| [(i + n * (j + 1) - 4 * j) % n, (i + 1 + 4 * j) % n])
        .collect();
    out.sort_unstable();
    out.dedup();
    Some(out)
}
