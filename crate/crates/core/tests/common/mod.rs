//! Brute-force oracles shared by the integration tests and the acceptance
//! suite. They use only matrix arithmetic and full closures, never the
//! pruned search or the class tables behind the fast canonical form.

#![allow(dead_code)]

use std::collections::BTreeSet;

use psl_maniplex::group::{Family, GroupContext, Matrix};

/// Every automorphism of G as an index permutation: conjugation by each
/// element of PGL₂(q), composed with each power of the Frobenius map.
pub fn all_automorphisms(ctx: &GroupContext) -> Vec<Vec<u32>> {
    let pgl = GroupContext::enumerate(ctx.q() as u64, Family::Pgl).unwrap();
    let f = ctx.field();
    let k = f.spec().k();
    let mut maps = BTreeSet::new();
    for a in 0..pgl.order() as u32 {
        let am = pgl.matrix(a);
        let det_inv = f.inv(am.det(f)).unwrap();
        let a_inv = am.adjugate(f).scale(det_inv, f);
        for j in 0..k {
            let map: Vec<u32> = (0..ctx.order() as u32)
                .map(|x| {
                    let mut m = ctx.matrix(x);
                    for _ in 0..j {
                        m = m.frobenius(f);
                    }
                    let img: Matrix = am.mul(&m, f).mul(&a_inv, f);
                    ctx.index_of(&ctx.group().canonicalize(img).unwrap()).unwrap()
                })
                .collect();
            maps.insert(map);
        }
    }
    maps.into_iter().collect()
}

/// Minimum image of a tuple over the given automorphisms.
pub fn brute_canonical(auts: &[Vec<u32>], tuple: &[u32]) -> Vec<u32> {
    auts.iter()
        .map(|m| tuple.iter().map(|&x| m[x as usize]).collect::<Vec<u32>>())
        .min()
        .unwrap()
}

fn tuple_ok(ctx: &GroupContext, t: &[u32]) -> bool {
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if t[i] == t[j] {
                return false;
            }
            if j - i > 1 {
                let p = ctx.mul(t[i], t[j]);
                if ctx.mul(p, p) != ctx.identity() {
                    return false;
                }
            }
        }
    }
    ctx.closure(t).len() == ctx.order()
}

/// All generating string tuples of involutions of the given rank, in
/// lexicographic order.
pub fn naive_tuples(ctx: &GroupContext, rank: usize) -> Vec<Vec<u32>> {
    let inv = ctx.involutions();
    let mut out = Vec::new();
    let mut t = vec![0u32; rank];
    fn rec(ctx: &GroupContext, inv: &[u32], t: &mut Vec<u32>, depth: usize, out: &mut Vec<Vec<u32>>) {
        if depth == t.len() {
            if tuple_ok(ctx, t) {
                out.push(t.clone());
            }
            return;
        }
        for &x in inv {
            t[depth] = x;
            // Commutation with everything two or more steps back.
            let ok = (0..depth.saturating_sub(1)).all(|i| {
                let p = ctx.mul(t[i], x);
                ctx.mul(p, p) == ctx.identity()
            });
            if ok {
                rec(ctx, inv, t, depth + 1, out);
            }
        }
    }
    rec(ctx, inv, &mut t, 0, &mut out);
    out
}

/// The census up to isomorphism computed by brute force.
pub fn naive_census(ctx: &GroupContext, rank: usize) -> Vec<Vec<u32>> {
    let tuples = naive_tuples(ctx, rank);
    if tuples.is_empty() {
        return Vec::new();
    }
    let auts = all_automorphisms(ctx);
    let set: BTreeSet<Vec<u32>> = tuples.iter().map(|t| brute_canonical(&auts, t)).collect();
    set.into_iter().collect()
}
