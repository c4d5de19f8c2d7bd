//! The rank-4 census of PSL(2, 11), where the 11-cell appears as the only
//! representation with A5 vertex and facet groups.

use psl_maniplex::census::{search_in, SearchOptions};
use psl_maniplex::group::{Family, GroupContext};
use psl_maniplex::maniplex::summarize;

fn main() -> psl_maniplex::Result<()> {
    let q: u64 = std::env::args().nth(1).map_or(11, |s| s.parse().expect("a prime power"));
    let ctx = GroupContext::enumerate(q, Family::Psl)?;
    let census = search_in(&ctx, 4, SearchOptions::default())?;
    println!(
        "PSL(2,{q}): {} rank-4 representations ({} nodes, {} closures, {:.3}s)",
        census.reps.len(),
        census.stats.nodes,
        census.stats.closures,
        census.stats.wall_seconds
    );
    for rep in &census.reps {
        let s = summarize(&ctx, rep)?;
        println!(
            "  {:<7} type {:<12} {:>4} vertices {:>4} facets  {}/{}  ip={}",
            s.class.unwrap().to_string(),
            format!("{:?}", s.type_vector),
            s.vertices(),
            s.facets(),
            s.vertex_kind,
            s.facet_kind,
            s.ip
        );
    }
    Ok(())
}
