//! Centralizers of involutions and a few generated subgroups of PSL(2, q).

use psl_maniplex::group::{center_order, identify_subgroup, kind_of_generated, Family, GroupContext};

fn main() -> psl_maniplex::Result<()> {
    for q in [5u64, 7, 9, 11, 13, 25] {
        let ctx = GroupContext::enumerate(q, Family::Psl)?;
        let x = ctx.involutions()[0];
        let c = ctx.centralizer(x);
        let kind = identify_subgroup(&ctx, &c)?;
        println!(
            "PSL(2,{q}): order {}, {} involutions, C(x) = {kind} of order {}, centre {}",
            ctx.order(),
            ctx.involutions().len(),
            kind.order,
            center_order(&ctx, &c)
        );
    }

    // Pairs of involutions generate dihedral groups; triples can reach A5.
    let ctx = GroupContext::enumerate(11, Family::Psl)?;
    let inv = ctx.involutions();
    let mut seen = std::collections::BTreeSet::new();
    for &a in inv.iter().take(3) {
        for &b in inv {
            for &c in inv.iter().step_by(5) {
                seen.insert(kind_of_generated(&ctx, &[a, b, c])?.to_string());
            }
        }
    }
    println!("kinds generated by involution triples in PSL(2,11): {seen:?}");
    Ok(())
}
