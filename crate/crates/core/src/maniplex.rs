//! Reading a string representation as a reflexible maniplex.
//!
//! Flags are the group elements and the monodromy generator rᵢ acts by left
//! multiplication with ρᵢ, so i-faces are cosets of the parabolic subgroup
//! Gᵢ. Every count below is a subgroup index; the flag graph is only built
//! for export.

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Family, GroupContext, SubgroupKind, SubgroupTag};
use crate::string_rep::{
    intersection_property, parabolic_kind, require_valid, type_vector, StringRep,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassTag {
    Class1,
    Class2,
    Class3,
    NotRank4,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManiplexSummary {
    pub q: u32,
    pub family: Family,
    pub rank: usize,
    #[serde(rename = "type")]
    pub type_vector: Vec<u64>,
    pub flag_count: usize,
    pub face_counts: Vec<usize>,
    pub orientable: bool,
    pub vertex_kind: SubgroupKind,
    pub facet_kind: SubgroupKind,
    pub parabolic_kinds: Vec<SubgroupKind>,
    /// `None` for PGL contexts, where the trichotomy is not defined.
    pub class: Option<ClassTag>,
    pub ip: bool,
}

impl ManiplexSummary {
    pub fn vertices(&self) -> usize {
        self.face_counts[0]
    }

    pub fn facets(&self) -> usize {
        *self.face_counts.last().unwrap()
    }
}

/// Number of i-faces, the index [G : Gᵢ].
pub fn face_count(ctx: &GroupContext, rep: &StringRep, i: usize) -> usize {
    ctx.order() / ctx.subgroup_order(&rep.without(i))
}

/// Orientable iff the subgroup generated by all ρᵢρⱼ has index 2.
pub fn orientable(ctx: &GroupContext, rep: &StringRep) -> bool {
    rotation_index(ctx, rep) == 2
}

pub fn rotation_index(ctx: &GroupContext, rep: &StringRep) -> usize {
    let g = rep.gens();
    let products: Vec<u32> = (0..g.len())
        .flat_map(|i| (i + 1..g.len()).map(move |j| (i, j)))
        .map(|(i, j)| ctx.mul(g[i], g[j]))
        .collect();
    match ctx.closure_bounded(&products, ctx.order() / 2) {
        Some(h) => ctx.order() / h.len(),
        None => 1,
    }
}

fn is_facet_kind(kind: &SubgroupKind) -> bool {
    matches!(kind.tag, SubgroupTag::S4 | SubgroupTag::A5 | SubgroupTag::Full)
}

fn class_from_kinds(vertex: &SubgroupKind, facet: &SubgroupKind) -> Result<ClassTag> {
    for kind in [vertex, facet] {
        if !is_facet_kind(kind) {
            return Err(Error::FacetTheoremViolation {
                kind: kind.to_string(),
            });
        }
    }
    Ok(match (vertex.is_full(), facet.is_full()) {
        (true, true) => ClassTag::Class1,
        (true, false) | (false, true) => ClassTag::Class2,
        (false, false) => ClassTag::Class3,
    })
}

/// Class of a rank-4 PSL₂(q) maniplex by its vertex and facet groups.
pub fn classify(ctx: &GroupContext, rep: &StringRep) -> Result<ClassTag> {
    rep.check_context(ctx)?;
    if rep.rank() != 4 {
        return Err(Error::RankMismatch {
            expected: 4,
            found: rep.rank(),
        });
    }
    if ctx.family() != Family::Psl {
        return Err(Error::UnsupportedFamily(ctx.family()));
    }
    require_valid(ctx, rep)?;
    class_from_kinds(&parabolic_kind(ctx, rep, 0)?, &parabolic_kind(ctx, rep, 3)?)
}

pub fn summarize(ctx: &GroupContext, rep: &StringRep) -> Result<ManiplexSummary> {
    rep.check_context(ctx)?;
    require_valid(ctx, rep)?;
    let n = rep.rank();
    let parabolic_kinds = (0..n)
        .map(|i| parabolic_kind(ctx, rep, i))
        .collect::<Result<Vec<_>>>()?;
    let face_counts: Vec<usize> = parabolic_kinds
        .iter()
        .map(|k| ctx.order() / k.order as usize)
        .collect();
    let vertex_kind = parabolic_kinds[0];
    let facet_kind = parabolic_kinds[n - 1];
    let class = match (ctx.family(), n) {
        (Family::Pgl, _) => None,
        (Family::Psl, 4) => Some(class_from_kinds(&vertex_kind, &facet_kind)?),
        (Family::Psl, _) => Some(ClassTag::NotRank4),
    };
    Ok(ManiplexSummary {
        q: ctx.q(),
        family: ctx.family(),
        rank: n,
        type_vector: type_vector(ctx, rep),
        flag_count: ctx.order(),
        face_counts,
        orientable: orientable(ctx, rep),
        vertex_kind,
        facet_kind,
        parabolic_kinds,
        class,
        ip: intersection_property(ctx, rep),
    })
}

/// Largest q accepted by [`write_flag_graph`].
pub const FLAG_GRAPH_MAX_Q: u32 = 13;

/// Writes the flag-adjacency graph as lines `i u v`: flags u < v are
/// i-adjacent, flags numbered by group table index.
pub fn write_flag_graph<W: Write>(ctx: &GroupContext, rep: &StringRep, out: &mut W) -> Result<()> {
    rep.check_context(ctx)?;
    if ctx.q() > FLAG_GRAPH_MAX_Q {
        return Err(Error::TooLarge {
            order: ctx.order() as u64,
            cap: crate::group::group_order(FLAG_GRAPH_MAX_Q as u64, ctx.family()),
        });
    }
    for (i, &r) in rep.gens().iter().enumerate() {
        for u in 0..ctx.order() as u32 {
            let v = ctx.mul(r, u);
            if u < v {
                writeln!(out, "{i} {u} {v}")?;
            }
        }
    }
    Ok(())
}
