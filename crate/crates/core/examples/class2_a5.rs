//! A rank-4 representation of PSL(2, 41) whose facet group is A5.

use psl_maniplex::constructions::class2_rank4;
use psl_maniplex::maniplex::summarize;

fn main() -> psl_maniplex::Result<()> {
    let p: u64 = std::env::args().nth(1).map_or(41, |s| s.parse().expect("a prime"));
    let (ctx, rep) = class2_rank4(p)?;
    let s = summarize(&ctx, &rep)?;
    println!("PSL(2,{p}), |G| = {}", ctx.order());
    println!("  type {:?}, class {:?}", s.type_vector, s.class.unwrap());
    println!("  vertex group {}, facet group {}", s.vertex_kind, s.facet_kind);
    println!("  {} vertices, {} facets", s.vertices(), s.facets());
    Ok(())
}
