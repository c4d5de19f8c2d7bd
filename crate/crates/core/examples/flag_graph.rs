//! Exports the flag graph of the 11-cell and checks that it is 4-regular.

use psl_maniplex::census::search;
use psl_maniplex::group::{Family, GroupContext};
use psl_maniplex::maniplex::{classify, write_flag_graph, ClassTag};

fn main() -> psl_maniplex::Result<()> {
    let ctx = GroupContext::enumerate(11, Family::Psl)?;
    let census = search(11, Family::Psl, 4)?;
    let cell = census
        .reps
        .iter()
        .find(|r| classify(&ctx, r).ok() == Some(ClassTag::Class3))
        .expect("the 11-cell is in the census");
    let mut buf = Vec::new();
    write_flag_graph(&ctx, cell, &mut buf)?;
    let text = String::from_utf8(buf).expect("ascii");
    let mut degree = vec![0u32; ctx.order()];
    for line in text.lines() {
        let parts: Vec<usize> = line.split(' ').map(|s| s.parse().unwrap()).collect();
        degree[parts[1]] += 1;
        degree[parts[2]] += 1;
    }
    println!("{} flags, {} edges", ctx.order(), text.lines().count());
    println!("every flag has degree 4: {}", degree.iter().all(|&d| d == 4));
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, text)?;
        println!("written to {path}");
    }
    Ok(())
}
