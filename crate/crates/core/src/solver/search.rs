//! Branch-and-prune enumeration of `k`-sets containing vertex 0.
//!
//! Candidates are built in ascending order, so the first resolving set found
//! is the lexicographically least one. Every prune below only discards sets
//! that cannot be that least set, which keeps the answer identical across
//! pruning configurations and worker counts.
//!
//! The partition `~_S` is refined one landmark at a time: a vertex's new class
//! is the pair (old class, distance to the new landmark).

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use super::{SearchOptions, SolverError};
use crate::graph::{CirculantGraph, Vertex};

const UNSET: u32 = u32::MAX;

/// Shared, read-only facts about the instance.
struct Instance<'g> {
    g: &'g CirculantGraph,
    n: usize,
    k: usize,
    base: u128,
    symmetry: bool,
    class_bound: bool,
    /// `resolver_max[i]` = largest member of `R_i`, when hitting sets are on.
    resolver_max: Option<Vec<Vertex>>,
    budget: Option<u64>,
    spent: AtomicU64,
    over_budget: AtomicBool,
}

impl Instance<'_> {
    fn capacity(&self, remaining: usize) -> u128 {
        self.base.saturating_pow(remaining as u32)
    }

    #[inline]
    fn resolves_pair(&self, x: Vertex, i: Vertex) -> bool {
        let next = if i + 1 == self.n { 0 } else { i + 1 };
        self.g.dist(x, i) != self.g.dist(x, next)
    }

    fn charge(&self, nodes: u64) -> bool {
        let total = self.spent.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if self.budget.is_some_and(|b| total > b) {
            self.over_budget.store(true, Ordering::Relaxed);
        }
        !self.over_budget.load(Ordering::Relaxed)
    }
}

/// Per-branch mutable search state.
struct Branch<'a, 'g> {
    inst: &'a Instance<'g>,
    chosen: Vec<Vertex>,
    /// `labels[d]` is the class of every vertex after `d + 1` landmarks.
    labels: Vec<Vec<u32>>,
    classes: Vec<usize>,
    /// Number of chosen landmarks inside each `R_i`.
    hits: Vec<u32>,
    scratch: Vec<u32>,
    nodes: u64,
    pending: u64,
    cancel: &'a dyn Fn() -> bool,
}

impl<'a, 'g> Branch<'a, 'g> {
    fn new(inst: &'a Instance<'g>, cancel: &'a dyn Fn() -> bool) -> Self {
        let n = inst.n;
        let mut b = Self {
            inst,
            chosen: Vec::with_capacity(inst.k),
            labels: vec![vec![0; n]; inst.k],
            classes: vec![0; inst.k],
            hits: vec![0; n],
            scratch: vec![UNSET; n * (inst.base as usize).min(n + 1)],
            nodes: 0,
            pending: 0,
            cancel,
        };
        b.push(0);
        b
    }

    /// Adds landmark `x` at depth `chosen.len()`.
    fn push(&mut self, x: Vertex) {
        let depth = self.chosen.len();
        let n = self.inst.n;
        let g = self.inst.g;
        let row = g.row(x);
        let base = self.inst.base as usize;
        let mut next = 0u32;
        if depth == 0 {
            for (v, label) in self.labels[0].iter_mut().enumerate() {
                *label = row[v] as u32;
            }
            let mut seen = vec![false; base];
            for &d in row {
                seen[d as usize] = true;
            }
            next = seen.iter().filter(|&&s| s).count() as u32;
        } else {
            let (before, after) = self.labels.split_at_mut(depth);
            let prev = &before[depth - 1];
            let cur = &mut after[0];
            for v in 0..n {
                let key = prev[v] as usize * base + row[v] as usize;
                if self.scratch[key] == UNSET {
                    self.scratch[key] = next;
                    next += 1;
                }
                cur[v] = self.scratch[key];
            }
            for v in 0..n {
                self.scratch[prev[v] as usize * base + row[v] as usize] = UNSET;
            }
        }
        self.classes[depth] = next as usize;
        if self.inst.resolver_max.is_some() {
            for i in 0..n {
                if self.inst.resolves_pair(x, i) {
                    self.hits[i] += 1;
                }
            }
        }
        self.chosen.push(x);
    }

    fn pop(&mut self) {
        let x = self.chosen.pop().expect("pop on empty branch");
        if self.inst.resolver_max.is_some() {
            for i in 0..self.inst.n {
                if self.inst.resolves_pair(x, i) {
                    self.hits[i] -= 1;
                }
            }
        }
    }

    fn classes(&self) -> usize {
        self.classes[self.chosen.len() - 1]
    }

    /// Every `R_i` missed so far must still be reachable by a later, larger element.
    fn hitting_feasible(&self) -> bool {
        let Some(maxes) = &self.inst.resolver_max else {
            return true;
        };
        let last = *self.chosen.last().unwrap();
        let complete = self.chosen.len() == self.inst.k;
        self.hits
            .iter()
            .zip(maxes)
            .all(|(&h, &m)| h > 0 || (!complete && m > last))
    }

    fn canonical_under_reflection(&self) -> bool {
        let n = self.inst.n;
        let mut mirrored: Vec<Vertex> = self.chosen.iter().map(|&v| (n - v) % n).collect();
        mirrored.sort_unstable();
        self.chosen <= mirrored
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.pending += 1;
        if self.pending >= 4096 {
            let ok = self.inst.charge(self.pending);
            self.pending = 0;
            return ok && !(self.cancel)();
        }
        true
    }

    fn flush(&mut self) -> bool {
        let ok = self.inst.charge(self.pending);
        self.pending = 0;
        ok
    }

    /// Depth-first extension of the current partial set. Returns `Some(set)`
    /// on the first success and `None` on exhaustion or interruption.
    fn descend(&mut self, limit: Vertex) -> Option<Vec<Vertex>> {
        if !self.tick() {
            return None;
        }
        let depth = self.chosen.len();
        let inst = self.inst;
        if depth == inst.k {
            let resolved = self.classes() == inst.n;
            let canonical = !inst.symmetry || self.canonical_under_reflection();
            return (resolved && canonical).then(|| self.chosen.clone());
        }
        let remaining_after = inst.k - depth - 1;
        let last = *self.chosen.last().unwrap();
        // keep room for the remaining (strictly increasing) elements
        let hi = limit.min(inst.n - 1 - remaining_after);
        for x in last + 1..=hi {
            self.push(x);
            let bound_ok = !inst.class_bound
                || (self.classes() as u128).saturating_mul(inst.capacity(remaining_after))
                    >= inst.n as u128;
            let found = if bound_ok && self.hitting_feasible() {
                self.descend(limit)
            } else {
                self.tick();
                None
            };
            self.pop();
            if found.is_some() {
                return found;
            }
            if inst.over_budget.load(Ordering::Relaxed) || (self.cancel)() {
                return None;
            }
        }
        None
    }
}

fn build_instance<'g>(g: &'g CirculantGraph, k: usize, opts: &SearchOptions) -> Instance<'g> {
    let n = g.order();
    let resolver_max = (opts.use_hitting_sets && g.max_consecutive_step().is_some()).then(|| {
        (0..n)
            .map(|i| {
                let next = (i + 1) % n;
                (0..n)
                    .rev()
                    .find(|&x| g.dist(x, i) != g.dist(x, next))
                    .expect("i itself always separates i and i + 1")
            })
            .collect()
    });
    Instance {
        g,
        n,
        k,
        base: u128::from(g.diameter()) + 1,
        symmetry: opts.use_symmetry,
        class_bound: opts.use_class_bound,
        resolver_max,
        budget: opts.node_budget,
        spent: AtomicU64::new(0),
        over_budget: AtomicBool::new(false),
    }
}

struct BranchOutcome {
    second: Vertex,
    nodes: u64,
    basis: Option<Vec<Vertex>>,
}

fn run_branch(inst: &Instance<'_>, second: Vertex, cancel: &dyn Fn() -> bool) -> BranchOutcome {
    let mut b = Branch::new(inst, cancel);
    // With S <= -S, the largest element is at most n - second.
    let limit = if inst.symmetry { inst.n - second } else { inst.n - 1 };
    let mut basis = None;
    if second <= limit {
        b.push(second);
        let ok = !inst.class_bound
            || (b.classes() as u128).saturating_mul(inst.capacity(inst.k - 2)) >= inst.n as u128;
        basis = if ok && b.hitting_feasible() {
            b.descend(limit)
        } else {
            b.tick();
            None
        };
    } else {
        b.tick();
    }
    b.flush();
    BranchOutcome {
        second,
        nodes: b.nodes,
        basis,
    }
}

/// Looks for a resolving set of size exactly `k` (containing 0). Returns the
/// lexicographically least one together with the node count.
pub(super) fn search_size(
    g: &CirculantGraph,
    k: usize,
    opts: &SearchOptions,
) -> Result<(Option<Vec<Vertex>>, u64), SolverError> {
    let n = g.order();
    if k == 0 || k > n {
        return Ok((None, 0));
    }
    let inst = build_instance(g, k, opts);
    let never = || false;

    if k == 1 {
        let mut root = Branch::new(&inst, &never);
        root.tick();
        root.flush();
        let hit = (root.classes() == n && root.hitting_feasible()).then(|| vec![0]);
        return Ok((hit, root.nodes));
    }

    // the root {0} itself
    let mut nodes = 1u64;
    inst.charge(1);
    let seconds: Vec<Vertex> = (1..=n - k + 1).collect();

    let outcomes: Vec<BranchOutcome> = if opts.worker_count <= 1 {
        let mut out = Vec::new();
        for &s in &seconds {
            let o = run_branch(&inst, s, &never);
            let done = o.basis.is_some();
            out.push(o);
            if done || inst.over_budget.load(Ordering::Relaxed) {
                break;
            }
        }
        out
    } else {
        let best = AtomicUsize::new(usize::MAX);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.worker_count)
            .build()
            .expect("thread pool");
        let mut out: Vec<BranchOutcome> = pool.install(|| {
            seconds
                .par_iter()
                .filter_map(|&s| {
                    if s > best.load(Ordering::Relaxed) {
                        return None;
                    }
                    let cancel = || s > best.load(Ordering::Relaxed);
                    let o = run_branch(&inst, s, &cancel);
                    if o.basis.is_some() {
                        best.fetch_min(s, Ordering::Relaxed);
                    }
                    Some(o)
                })
                .collect()
        });
        out.sort_by_key(|o| o.second);
        // Replay in serial order: branches past the winner never ran serially.
        let winner = best.load(Ordering::Relaxed);
        out.retain(|o| o.second <= winner);
        out
    };

    if inst.over_budget.load(Ordering::Relaxed) {
        return Err(SolverError::BudgetExceeded {
            budget: opts.node_budget.unwrap_or(0),
        });
    }
    let mut basis = None;
    for o in outcomes {
        nodes += o.nodes;
        if o.basis.is_some() {
            basis = o.basis;
            break;
        }
    }
    Ok((basis, nodes))
}
