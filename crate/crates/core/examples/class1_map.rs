//! The {3, p} maps on PSL(2, p) and their extension to rank 4.
//!
//! Run with `cargo run --release --example class1_map -- 37`.

use psl_maniplex::constructions::{class1_map, extend_map};
use psl_maniplex::maniplex::summarize;
use psl_maniplex::string_rep::type_vector;

fn main() -> psl_maniplex::Result<()> {
    let p: u64 = std::env::args().nth(1).map_or(13, |s| s.parse().expect("a prime"));
    let (ctx, rep) = class1_map(p)?;
    println!("map on PSL(2,{p}) of type {:?}", type_vector(&ctx, &rep));
    for (i, &g) in rep.gens().iter().enumerate() {
        println!("  rho{i} = {:?}", ctx.matrix(g).coeff_lists(ctx.field()));
    }
    let rep4 = extend_map(&ctx, &rep)?;
    let s = summarize(&ctx, &rep4)?;
    println!(
        "extension: type {:?}, class {:?}, {} vertex, {} facet, faces {:?}",
        s.type_vector,
        s.class.unwrap(),
        s.vertices(),
        s.facets(),
        s.face_counts
    );
    Ok(())
}
