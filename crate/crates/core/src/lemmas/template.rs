//! Affine templates for clusters and allowed sets, and their instantiation.

use serde::Serialize;

use super::LemmaError;
use crate::graph::{CirculantGraph, Vertex};
use crate::resolve::Cluster;

/// `c + k·K + l·L + m·M + mp·M' + i·I` over the template variables.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Affine {
    pub c: i64,
    pub k: i64,
    pub l: i64,
    pub m: i64,
    pub mp: i64,
    pub i: i64,
}

impl Affine {
    pub const fn c(c: i64) -> Self {
        Self { c, k: 0, l: 0, m: 0, mp: 0, i: 0 }
    }

    pub const fn plus_k(self, k: i64) -> Self {
        Self { k, ..self }
    }

    pub const fn plus_l(self, l: i64) -> Self {
        Self { l, ..self }
    }

    pub const fn plus_m(self, m: i64) -> Self {
        Self { m, ..self }
    }

    pub const fn plus_mp(self, mp: i64) -> Self {
        Self { mp, ..self }
    }

    pub const fn plus_i(self, i: i64) -> Self {
        Self { i, ..self }
    }

    pub fn eval(&self, env: &Env) -> i64 {
        self.c + self.k * env.k + self.l * env.l + self.m * env.m + self.mp * env.mp + self.i * env.i
    }
}

/// Values bound to the template variables.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Env {
    pub k: i64,
    pub l: i64,
    pub m: i64,
    pub mp: i64,
    pub i: i64,
}

/// One block, or with `family = Some((lo, hi))` one block per `i` in `lo..=hi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockTemplate {
    pub family: Option<(Affine, Affine)>,
    pub members: Vec<Affine>,
}

impl BlockTemplate {
    pub fn fixed(members: impl IntoIterator<Item = i64>) -> Self {
        Self {
            family: None,
            members: members.into_iter().map(Affine::c).collect(),
        }
    }

    pub fn of(members: Vec<Affine>) -> Self {
        Self { family: None, members }
    }

    pub fn family(lo: Affine, hi: Affine, members: Vec<Affine>) -> Self {
        Self {
            family: Some((lo, hi)),
            members,
        }
    }

    fn expand(&self, env: &Env) -> Vec<Vec<i64>> {
        match self.family {
            None => vec![self.members.iter().map(|e| e.eval(env)).collect()],
            Some((lo, hi)) => (lo.eval(env)..=hi.eval(env))
                .map(|i| {
                    let env = Env { i, ..*env };
                    self.members.iter().map(|e| e.eval(&env)).collect()
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "vertices", rename_all = "snake_case")]
pub enum AllowedTemplate {
    All,
    Exclude(Vec<BlockTemplate>),
}

/// Whether offsets are added to a rotation `a` or used as absolute vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Anchor {
    /// `a + sign · offset` for every `a` in `0..n`.
    Rotated { mirror: bool },
    Absolute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    L,
    M,
    Mp,
}

/// `lo..=hi`; bounds may refer to `k` and to parameters listed earlier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamRange {
    pub param: Param,
    pub lo: Affine,
    pub hi: Affine,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterTemplate {
    pub anchor: Anchor,
    pub params: Vec<ParamRange>,
    pub blocks: Vec<BlockTemplate>,
    pub allowed: AllowedTemplate,
}

/// Parameters of one instantiation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Params {
    pub a: usize,
    pub sign: i8,
    pub l: i64,
    pub m: i64,
    pub mp: i64,
}

impl Params {
    fn env(&self, k: usize) -> Env {
        Env {
            k: k as i64,
            l: self.l,
            m: self.m,
            mp: self.mp,
            i: 0,
        }
    }
}

/// A concrete cluster and allowed set on `C(n, ±{1..t})`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: CirculantGraph,
    pub cluster: Cluster,
    pub allowed: Vec<Vertex>,
}

impl ClusterTemplate {
    /// Every admissible parameter tuple for `k`, in a fixed order.
    pub fn param_tuples(&self, n: usize, k: usize) -> Vec<Params> {
        let mut partial = vec![Params {
            sign: 1,
            ..Params::default()
        }];
        for range in &self.params {
            let mut next = Vec::new();
            for p in &partial {
                let env = p.env(k);
                for v in range.lo.eval(&env)..=range.hi.eval(&env) {
                    let mut q = *p;
                    match range.param {
                        Param::L => q.l = v,
                        Param::M => q.m = v,
                        Param::Mp => q.mp = v,
                    }
                    next.push(q);
                }
            }
            partial = next;
        }
        let (rotations, signs): (usize, &[i8]) = match self.anchor {
            Anchor::Rotated { mirror: true } => (n, &[1, -1]),
            Anchor::Rotated { mirror: false } => (n, &[1]),
            Anchor::Absolute => (1, &[1]),
        };
        let mut out = Vec::with_capacity(partial.len() * rotations * signs.len());
        for p in &partial {
            for &sign in signs {
                for a in 0..rotations {
                    out.push(Params { a, sign, ..*p });
                }
            }
        }
        out
    }

    fn in_ranges(&self, k: usize, p: &Params) -> bool {
        let mut env = Env {
            k: k as i64,
            ..Env::default()
        };
        for range in &self.params {
            let v = match range.param {
                Param::L => p.l,
                Param::M => p.m,
                Param::Mp => p.mp,
            };
            if v < range.lo.eval(&env) || v > range.hi.eval(&env) {
                return false;
            }
            match range.param {
                Param::L => env.l = v,
                Param::M => env.m = v,
                Param::Mp => env.mp = v,
            }
        }
        true
    }

    fn place(&self, n: usize, p: &Params, offset: i64) -> Vertex {
        let v = match self.anchor {
            Anchor::Rotated { .. } => p.a as i64 + i64::from(p.sign) * offset,
            Anchor::Absolute => offset,
        };
        v.rem_euclid(n as i64) as Vertex
    }

    /// Builds the concrete cluster on `C(n, ±{1..t})` for order parameter `k`.
    pub fn instantiate(
        &self,
        n: usize,
        t: usize,
        k: usize,
        p: &Params,
    ) -> Result<Instance, LemmaError> {
        if !self.in_ranges(k, p) || p.a >= n || !matches!(p.sign, 1 | -1) {
            return Err(LemmaError::ParamsOutOfRange { n, k, params: *p });
        }
        let env = p.env(k);
        let graph = CirculantGraph::consecutive(n, t)?;
        let mut blocks: Vec<Vec<Vertex>> = Vec::new();
        for b in &self.blocks {
            for offsets in b.expand(&env) {
                blocks.push(offsets.into_iter().map(|o| self.place(n, p, o)).collect());
            }
        }
        let mut seen = vec![false; n];
        for &v in blocks.iter().flatten() {
            if std::mem::replace(&mut seen[v], true) {
                return Err(LemmaError::Degenerate { n, vertex: v });
            }
        }
        let allowed = match &self.allowed {
            AllowedTemplate::All => (0..n).collect(),
            AllowedTemplate::Exclude(templates) => {
                let mut out = vec![true; n];
                for b in templates {
                    for offsets in b.expand(&env) {
                        for o in offsets {
                            out[self.place(n, p, o)] = false;
                        }
                    }
                }
                (0..n).filter(|&v| out[v]).collect()
            }
        };
        let cluster = Cluster::new(&graph, blocks)?;
        Ok(Instance {
            graph,
            cluster,
            allowed,
        })
    }
}
