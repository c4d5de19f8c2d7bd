//! Exhaustive enumeration of string representations up to isomorphism.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Family, GroupContext, SubgroupTag};
use crate::io::RepJson;
use crate::maniplex::{classify, orientable, ClassTag};
use crate::string_rep::{canonical_form_unchecked, parabolic_kind, type_vector, StringRep};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Partial assignments visited, including complete tuples.
    pub nodes: u64,
    /// Generation tests performed on complete tuples.
    pub closures: u64,
    pub wall_seconds: f64,
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, other: Self) {
        self.nodes += other.nodes;
        self.closures += other.closures;
        self.wall_seconds += other.wall_seconds;
    }
}

#[derive(Clone, Debug)]
pub struct CensusResult {
    pub q: u32,
    pub family: Family,
    pub rank: usize,
    /// Canonical forms, pairwise non-isomorphic, sorted.
    pub reps: Vec<StringRep>,
    pub stats: SearchStats,
}

impl PartialEq for CensusResult {
    /// Wall time is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
            && self.family == other.family
            && self.rank == other.rank
            && self.reps == other.reps
            && self.stats.nodes == other.stats.nodes
            && self.stats.closures == other.stats.closures
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Restrict ρ₀ to one involution per Aut(G)-orbit.
    pub orbit_reduction: bool,
    /// Collapse the results to canonical forms. Without it every generating
    /// tuple found is returned as is.
    pub canonicalize: bool,
    /// Worker threads for the top-level branches; 1 runs inline.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            orbit_reduction: true,
            canonicalize: true,
            threads: 1,
        }
    }
}

/// Census of rank-`rank` string representations, rank ∈ {3, 4, 5}.
pub fn search(q: u64, family: Family, rank: usize) -> Result<CensusResult> {
    let ctx = GroupContext::enumerate(q, family)?;
    search_in(&ctx, rank, SearchOptions::default())
}

/// Involutions commuting with a given one, indexed by involution position.
struct CommutingLists {
    lists: Vec<Vec<u32>>,
}

impl CommutingLists {
    fn new(ctx: &GroupContext) -> Self {
        let inv = ctx.involutions();
        let lists = inv
            .iter()
            .map(|&a| inv.iter().copied().filter(|&b| b != a && ctx.commute(a, b)).collect())
            .collect();
        CommutingLists { lists }
    }

    fn of(&self, ctx: &GroupContext, x: u32) -> &[u32] {
        &self.lists[ctx.involution_position(x).expect("involution")]
    }
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Assignment order of the positions: 0, 1, n−1, n−2, …, 2. Each later
/// position must commute with every assigned position at distance ≥ 2.
fn position_order(n: usize) -> Vec<usize> {
    let mut order = vec![0, 1];
    order.extend((2..n).rev());
    order
}

struct Branch<'a> {
    ctx: &'a GroupContext,
    commuting: &'a CommutingLists,
    order: Vec<usize>,
    tuple: Vec<u32>,
    stats: SearchStats,
    found: Vec<Vec<u32>>,
}

impl Branch<'_> {
    fn candidates(&self, pos: usize, depth: usize) -> Vec<u32> {
        let mut cand: Option<Vec<u32>> = None;
        for &other in &self.order[..depth] {
            if other.abs_diff(pos) >= 2 {
                let list = self.commuting.of(self.ctx, self.tuple[other]);
                cand = Some(match cand {
                    None => list.to_vec(),
                    Some(c) => intersect_sorted(&c, list),
                });
            }
        }
        let assigned: Vec<u32> = self.order[..depth].iter().map(|&p| self.tuple[p]).collect();
        cand.unwrap_or_else(|| self.ctx.involutions().to_vec())
            .into_iter()
            .filter(|x| !assigned.contains(x))
            .collect()
    }

    fn descend(&mut self, depth: usize) {
        self.stats.nodes += 1;
        if depth == self.order.len() {
            self.stats.closures += 1;
            if self.ctx.generates(&self.tuple) {
                self.found.push(self.tuple.clone());
            }
            return;
        }
        let pos = self.order[depth];
        for x in self.candidates(pos, depth) {
            self.tuple[pos] = x;
            self.descend(depth + 1);
        }
    }
}

/// Search with explicit options inside an existing context.
pub fn search_in(ctx: &GroupContext, rank: usize, opts: SearchOptions) -> Result<CensusResult> {
    if !(3..=5).contains(&rank) {
        return Err(Error::BadRank(rank));
    }
    let start = Instant::now();
    let commuting = CommutingLists::new(ctx);
    let firsts = if opts.orbit_reduction {
        ctx.involution_orbit_reps()
    } else {
        ctx.involutions().to_vec()
    };
    // Warm the lazily built tables before branching out.
    if opts.canonicalize {
        ctx.outer_automorphisms();
        if let Some(&x) = firsts.first() {
            ctx.involution_class(x);
        }
    }
    let branches: Vec<(u32, u32)> = firsts
        .iter()
        .flat_map(|&a| ctx.involutions().iter().filter(move |&&b| b != a).map(move |&b| (a, b)))
        .collect();
    let run = |&(a, b): &(u32, u32)| {
        let mut branch = Branch {
            ctx,
            commuting: &commuting,
            order: position_order(rank),
            tuple: vec![0; rank],
            stats: SearchStats {
                nodes: 1,
                ..SearchStats::default()
            },
            found: Vec::new(),
        };
        branch.tuple[0] = a;
        branch.tuple[1] = b;
        branch.descend(2);
        let reps: Vec<Vec<u32>> = if opts.canonicalize {
            branch
                .found
                .iter()
                .map(|g| canonical_form_unchecked(ctx, &StringRep::from_parts(ctx, g.clone())).gens)
                .collect()
        } else {
            branch.found
        };
        (reps, branch.stats)
    };
    let per_branch: Vec<(Vec<Vec<u32>>, SearchStats)> = if opts.threads <= 1 {
        branches.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::PreconditionFailed(e.to_string()))?;
        pool.install(|| branches.par_iter().map(run).collect())
    };
    let mut stats = SearchStats {
        nodes: firsts.len() as u64 + 1,
        ..SearchStats::default()
    };
    let mut all = BTreeSet::new();
    for (reps, s) in per_branch {
        stats += s;
        all.extend(reps);
    }
    stats.wall_seconds = start.elapsed().as_secs_f64();
    Ok(CensusResult {
        q: ctx.q(),
        family: ctx.family(),
        rank,
        reps: all
            .into_iter()
            .map(|g| StringRep::from_parts(ctx, g))
            .collect(),
        stats,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub scope: String,
    pub applicable: bool,
    pub examined: usize,
    pub pass: bool,
    pub counterexamples: Vec<RepJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub q: u32,
    pub family: Family,
    pub checks: Vec<CheckRecord>,
}

impl TheoremReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Counterexamples kept per failing check.
const MAX_COUNTEREXAMPLES: usize = 5;

struct Check<'a> {
    ctx: &'a GroupContext,
    record: CheckRecord,
}

impl<'a> Check<'a> {
    fn new(ctx: &'a GroupContext, name: &str, scope: String, applicable: bool) -> Self {
        Check {
            ctx,
            record: CheckRecord {
                name: name.to_owned(),
                scope,
                applicable,
                examined: 0,
                pass: true,
                counterexamples: Vec::new(),
            },
        }
    }

    fn observe(&mut self, rep: &StringRep, ok: bool) {
        self.record.examined += 1;
        if !ok {
            self.record.pass = false;
            if self.record.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.record.counterexamples.push(RepJson::from_rep(self.ctx, rep));
            }
        }
    }

    fn fail_with(&mut self, rep: &StringRep) {
        self.observe(rep, false);
    }
}

/// Facet kinds allowed by the structure theorem. For PGL₂(q) the facet can
/// also be the index-2 subgroup PSL₂(q).
fn allowed_facet(family: Family, q: u32, tag: SubgroupTag) -> bool {
    match tag {
        SubgroupTag::S4 | SubgroupTag::A5 | SubgroupTag::Full => true,
        SubgroupTag::Psl(r) => family == Family::Pgl && r == q as u64,
        _ => false,
    }
}

/// Checks the structural theorems against the census at q.
pub fn verify_structure(q: u64, family: Family) -> Result<TheoremReport> {
    let ctx = GroupContext::enumerate(q, family)?;
    verify_structure_in(&ctx, 1)
}

pub fn verify_structure_in(ctx: &GroupContext, threads: usize) -> Result<TheoremReport> {
    let opts = SearchOptions {
        threads,
        ..SearchOptions::default()
    };
    let rank4 = search_in(ctx, 4, opts)?;
    let rank5 = search_in(ctx, 5, opts)?;
    let q = ctx.q();
    let psl = ctx.family() == Family::Psl;
    let mut checks = Vec::new();

    let scope = if psl {
        "all rank-4 census reps; G0 and G3 in {S4, A5, Full}".to_owned()
    } else {
        "all rank-4 census reps; G0 and G3 in {S4, A5, PSL(q), Full}".to_owned()
    };
    let mut a = Check::new(ctx, "facet_kinds", scope, true);
    for rep in &rank4.reps {
        let ok = [0, 3].iter().all(|&i| {
            parabolic_kind(ctx, rep, i).is_ok_and(|k| allowed_facet(ctx.family(), q, k.tag))
        });
        a.observe(rep, ok);
    }
    checks.push(a.record);

    let mut b = Check::new(ctx, "rank5_empty", "exhaustive rank-5 census".to_owned(), true);
    b.record.examined = 1;
    for rep in &rank5.reps {
        b.fail_with(rep);
    }
    checks.push(b.record);

    checks.push(check_dihedral_extension(ctx).record);

    let mut d = Check::new(
        ctx,
        "class3_locations",
        "rank-4 census; exactly one Class3 rep when q is 11 or 19, none otherwise".to_owned(),
        psl,
    );
    if psl {
        let class3: Vec<&StringRep> = rank4
            .reps
            .iter()
            .filter(|r| matches!(classify(ctx, r), Ok(ClassTag::Class3)))
            .collect();
        let expected = if q == 11 || q == 19 { 1 } else { 0 };
        d.record.examined = rank4.reps.len();
        if class3.len() != expected {
            d.record.pass = false;
            d.record.counterexamples = class3
                .iter()
                .take(MAX_COUNTEREXAMPLES)
                .map(|r| RepJson::from_rep(ctx, r))
                .collect();
        }
    }
    checks.push(d.record);

    let mut e = Check::new(
        ctx,
        "non_orientable",
        "all rank-4 census reps, PSL with q > 3".to_owned(),
        psl && q > 3,
    );
    if e.record.applicable {
        for rep in &rank4.reps {
            e.observe(rep, !orientable(ctx, rep));
        }
    }
    checks.push(e.record);

    let mut f = Check::new(
        ctx,
        "adjacent_orders",
        "all rank-4 census reps; every order(ρiρi+1) > 2".to_owned(),
        true,
    );
    for rep in &rank4.reps {
        f.observe(rep, type_vector(ctx, rep).iter().all(|&m| m > 2));
    }
    checks.push(f.record);

    Ok(TheoremReport {
        q,
        family: ctx.family(),
        checks,
    })
}

/// Every triple (ρ₀, ρ₁, ρ₂) with ρ₀ an orbit representative that generates
/// a dihedral group, extended by each involution ρ₃ commuting with ρ₀ and
/// ρ₁, must generate a proper subgroup.
fn check_dihedral_extension(ctx: &GroupContext) -> Check<'_> {
    let mut c = Check::new(
        ctx,
        "dihedral_extension_proper",
        "rank-3 dihedral triples with ρ0 an orbit representative, all commuting ρ3".to_owned(),
        ctx.family() == Family::Psl,
    );
    if !c.record.applicable {
        return c;
    }
    let commuting = CommutingLists::new(ctx);
    let dihedral_max = 2 * (ctx.q() as usize + 1);
    for a in ctx.involution_orbit_reps() {
        let ca = commuting.of(ctx, a);
        for &b in ctx.involutions().iter().filter(|&&b| b != a) {
            let d3: Vec<u32> = intersect_sorted(ca, commuting.of(ctx, b));
            for &r2 in ca.iter().filter(|&&x| x != b) {
                let Some(h) = ctx.closure_bounded(&[a, b, r2], dihedral_max) else {
                    continue;
                };
                let dihedral = crate::group::identify_subgroup(ctx, &h)
                    .is_ok_and(|k| matches!(k.tag, SubgroupTag::Dihedral(_)));
                if !dihedral {
                    continue;
                }
                for &r3 in &d3 {
                    let tuple = StringRep::from_parts(ctx, vec![a, b, r2, r3]);
                    c.observe(&tuple, !ctx.generates(tuple.gens()));
                }
            }
        }
    }
    c
}
