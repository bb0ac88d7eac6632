//! The descriptor registry.

use std::sync::OnceLock;

use super::template::{
    Affine, AllowedTemplate, Anchor, BlockTemplate, ClusterTemplate, Param, ParamRange,
};
use super::{LemmaDescriptor, LemmaError, LemmaKind};

pub const REGISTRY_SIZE: usize = 23;

const fn o(c: i64) -> Affine {
    Affine::c(c)
}

fn block(offsets: &[i64]) -> BlockTemplate {
    BlockTemplate::fixed(offsets.iter().copied())
}

fn rotated(blocks: Vec<BlockTemplate>) -> ClusterTemplate {
    ClusterTemplate {
        anchor: Anchor::Rotated { mirror: false },
        params: vec![],
        blocks,
        allowed: AllowedTemplate::All,
    }
}

fn range(param: Param, lo: Affine, hi: Affine) -> ParamRange {
    ParamRange { param, lo, hi }
}

fn cluster(
    id: &'static str,
    statement: &'static str,
    residues: &[usize],
    template: ClusterTemplate,
    presumes_s_cluster: bool,
    claimed_min: usize,
) -> LemmaDescriptor {
    LemmaDescriptor {
        id,
        statement,
        residues: residues.to_vec(),
        kind: LemmaKind::Cluster {
            template,
            presumes_s_cluster,
            claimed_min,
        },
    }
}

fn build() -> Vec<LemmaDescriptor> {
    let r25 = [2, 5];
    let mut out = vec![
        LemmaDescriptor {
            id: "L3.1-window",
            statement: "any l vertices among t + 1 consecutive ones need l - 1 resolvers",
            residues: (2..=9).collect(),
            kind: LemmaKind::WindowSubsets { t: 4 },
        },
        cluster(
            "Obs-0123",
            "cluster ({a,a+1},{a+2,a+3}), r != 3",
            &[2, 4, 5, 6, 7, 8, 9],
            rotated(vec![block(&[0, 1]), block(&[2, 3])]),
            true,
            2,
        ),
        cluster(
            "L-2-4-3-r56",
            "cluster ({a,a±1},{a±(j+4l) : j=2,3,4}), 0 <= l <= k",
            &[2, 5, 6],
            ClusterTemplate {
                anchor: Anchor::Rotated { mirror: true },
                params: vec![range(Param::L, o(0), o(0).plus_k(1))],
                blocks: vec![
                    block(&[0, 1]),
                    BlockTemplate::of(vec![o(2).plus_l(4), o(3).plus_l(4), o(4).plus_l(4)]),
                ],
                allowed: AllowedTemplate::All,
            },
            true,
            3,
        ),
        cluster(
            "L-8-AkBk",
            "cluster (A_0..A_k, B_1, B_2, B_3) on 8k+8 with 1 <= m < m' <= k, resolvers outside {0..4m'+1}",
            &[8],
            ClusterTemplate {
                anchor: Anchor::Absolute,
                params: vec![
                    range(Param::M, o(1), o(-1).plus_k(1)),
                    range(Param::Mp, o(1).plus_m(1), o(0).plus_k(1)),
                ],
                blocks: vec![
                    BlockTemplate::of(vec![o(4).plus_k(4), o(5).plus_k(4), o(6).plus_k(4)]),
                    BlockTemplate::family(
                        o(1),
                        o(0).plus_k(1),
                        vec![o(4).plus_k(4).plus_i(4), o(5).plus_k(4).plus_i(4)],
                    ),
                    BlockTemplate::of(vec![o(7).plus_k(8), o(1)]),
                    BlockTemplate::of(vec![o(2).plus_m(4), o(4).plus_m(4)]),
                    BlockTemplate::of(vec![o(1).plus_mp(4), o(3).plus_mp(4)]),
                ],
                allowed: AllowedTemplate::Exclude(vec![BlockTemplate::family(
                    o(0),
                    o(1).plus_mp(4),
                    vec![o(0).plus_i(1)],
                )]),
            },
            true,
            3,
        ),
        cluster(
            "L-7-Ak",
            "cluster (A_0,B_0,..,A_k,B_k,A_{k+1}) of pairs {a+4i,a+4i+1}, {a+4i+2,a+4i+3} on 8k+7",
            &[7],
            rotated(vec![
                BlockTemplate::family(o(0), o(1).plus_k(1), vec![o(0).plus_i(4), o(1).plus_i(4)]),
                BlockTemplate::family(o(0), o(0).plus_k(1), vec![o(2).plus_i(4), o(3).plus_i(4)]),
            ]),
            true,
            3,
        ),
        cluster(
            "L-7-AkBk",
            "cluster (A_0..A_k, B_1, B_2) on 8k+7 with 1 <= m' <= k",
            &[7],
            ClusterTemplate {
                anchor: Anchor::Absolute,
                params: vec![range(Param::Mp, o(1), o(0).plus_k(1))],
                blocks: vec![
                    BlockTemplate::family(
                        o(0),
                        o(-1).plus_k(1),
                        vec![o(3).plus_i(4), o(4).plus_i(4)],
                    ),
                    BlockTemplate::of(vec![o(3).plus_k(4), o(4).plus_k(4), o(5).plus_k(4)]),
                    BlockTemplate::of(vec![o(3).plus_k(4).plus_mp(4), o(4).plus_k(4).plus_mp(4)]),
                    BlockTemplate::of(vec![o(5).plus_k(4).plus_mp(4), o(6).plus_k(4).plus_mp(4)]),
                ],
                allowed: AllowedTemplate::All,
            },
            true,
            3,
        ),
        cluster(
            "L-2-22-3",
            "cluster ({1,2},{4k+2,4k+3},{4k+4,4k+5},{4(k+l)+7..9}) on 8k+7, resolvers outside {2,6,..,2+4l}",
            &[7],
            ClusterTemplate {
                anchor: Anchor::Absolute,
                params: vec![range(Param::L, o(0), o(0).plus_k(1))],
                blocks: vec![
                    block(&[1, 2]),
                    BlockTemplate::of(vec![o(2).plus_k(4), o(3).plus_k(4)]),
                    BlockTemplate::of(vec![o(4).plus_k(4), o(5).plus_k(4)]),
                    BlockTemplate::of(vec![
                        o(7).plus_k(4).plus_l(4),
                        o(8).plus_k(4).plus_l(4),
                        o(9).plus_k(4).plus_l(4),
                    ]),
                ],
                allowed: AllowedTemplate::Exclude(vec![BlockTemplate::family(
                    o(0),
                    o(0).plus_l(1),
                    vec![o(2).plus_i(4)],
                )]),
            },
            true,
            3,
        ),
        cluster(
            "r5-0156",
            "block {a,a+1,a+5,a+6}",
            &r25,
            rotated(vec![block(&[0, 1, 5, 6])]),
            false,
            2,
        ),
        cluster(
            "r5-025-67",
            "cluster ({a,a+2,a+5},{a+6,a+7})",
            &r25,
            rotated(vec![block(&[0, 2, 5]), block(&[6, 7])]),
            true,
            2,
        ),
        cluster(
            "r5-lemma-01",
            "block {a,a+1,a+2,a+5,a+6,a+7}",
            &r25,
            rotated(vec![block(&[0, 1, 2, 5, 6, 7])]),
            false,
            3,
        ),
        cluster(
            "r5-lemma-02",
            "cluster ({a,a+1},{a+2,a+3,a+5,a+7,a+8})",
            &r25,
            rotated(vec![block(&[0, 1]), block(&[2, 3, 5, 7, 8])]),
            true,
            3,
        ),
        cluster(
            "r5-01257",
            "cluster ({a,a+1},{a+2,a+5,a+7})",
            &r25,
            rotated(vec![block(&[0, 1]), block(&[2, 5, 7])]),
            true,
            2,
        ),
        cluster(
            "r5-023568",
            "cluster ({a,a+2},{a+3,a+5},{a+6,a+8})",
            &r25,
            rotated(vec![block(&[0, 2]), block(&[3, 5]), block(&[6, 8])]),
            true,
            2,
        ),
        cluster(
            "r5-lemma-03",
            "cluster ({a,a+1,a+2},{a+3,a+5,a+6,a+8})",
            &r25,
            rotated(vec![block(&[0, 1, 2]), block(&[3, 5, 6, 8])]),
            true,
            3,
        ),
    ];
    let mod3: [(&'static str, &'static str, Vec<BlockTemplate>); 6] = [
        ("m3-2-3-2", "block {a,a+1,a+5,a+6}", vec![block(&[0, 1, 5, 6])]),
        (
            "m3-2-7-2a",
            "cluster ({a,a+1},{a+2,a+5,a+7},{a+9,a+10})",
            vec![block(&[0, 1]), block(&[2, 5, 7]), block(&[9, 10])],
        ),
        ("m3-2-5-2", "cluster ({a,a+1},{a+7,a+8})", vec![block(&[0, 1]), block(&[7, 8])]),
        (
            "m3-222",
            "cluster ({a,a+1},{a+2,a+3},{a+4,a+5})",
            vec![block(&[0, 1]), block(&[2, 3]), block(&[4, 5])],
        ),
        ("m3-2-7-2b", "cluster ({a,a+1},{a+3,a+5,a+8})", vec![block(&[0, 1]), block(&[3, 5, 8])]),
        ("m3-2-1-2", "cluster ({a,a+1},{a+3,a+4})", vec![block(&[0, 1]), block(&[3, 4])]),
    ];
    out.extend(
        mod3.into_iter()
            .map(|(id, statement, blocks)| cluster(id, statement, &[3], rotated(blocks), false, 2)),
    );
    out.push(LemmaDescriptor {
        id: "min-dist-789",
        statement: "members of a 5-element metric basis are pairwise at cyclic distance >= r - 5",
        residues: vec![7, 8, 9],
        kind: LemmaKind::MinDistBasis,
    });
    out.push(LemmaDescriptor {
        id: "thm-general-t",
        statement: "dim C(n, ±{1..t}) >= t for n >= 2t + 2",
        residues: vec![],
        kind: LemmaKind::DimensionBound {
            plus: 0,
            residue_from_t: false,
        },
    });
    out.push(LemmaDescriptor {
        id: "thm-vetrik-lb",
        statement: "dim C(n, ±{1..t}) >= t + 1 for n = 2kt + r, t + 2 <= r <= 2t + 1",
        residues: vec![],
        kind: LemmaKind::DimensionBound {
            plus: 1,
            residue_from_t: true,
        },
    });
    out
}

/// All descriptors, in a fixed order.
pub fn registry() -> &'static [LemmaDescriptor] {
    static REGISTRY: OnceLock<Vec<LemmaDescriptor>> = OnceLock::new();
    REGISTRY.get_or_init(build)
}

pub fn find(id: &str) -> Result<&'static LemmaDescriptor, LemmaError> {
    registry()
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| LemmaError::UnknownId(id.to_string()))
}
