//! Explicit rank-3 and rank-4 string representations of PSL₂(p).

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::group::{Family, GroupContext, GroupElement, Matrix, MatrixGroup};
use crate::string_rep::{validate, StringRep};

/// Parameters of the dihedral extension of a rank-3 map of type {k, x}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtensionParams {
    /// ±1 with q ≡ alpha (mod 4).
    pub alpha: i64,
    /// (q − alpha)/2, always even.
    pub n: u64,
    /// Order of ρ₀ρ₁.
    pub k: u64,
}

impl ExtensionParams {
    pub fn new(q: u64, k: u64) -> Result<Self> {
        if q.is_multiple_of(2) {
            return Err(Error::PreconditionFailed(format!("q = {q} is even")));
        }
        let alpha: i64 = if q % 4 == 1 { 1 } else { -1 };
        let n = ((q as i64 - alpha) / 2) as u64;
        debug_assert_eq!(n % 2, 0);
        if k.is_multiple_of(2) {
            return Err(Error::PreconditionFailed(format!("order of ρ₀ρ₁ is {k}, not odd")));
        }
        if !n.is_multiple_of(k) {
            return Err(Error::PreconditionFailed(format!("{k} does not divide n = {n}")));
        }
        Ok(ExtensionParams { alpha, n, k })
    }
}

/// ρ̄₀ = [[0,1],[−1,0]], ρ̄₁ = [[a,0],[1,−a]], ρ̄₂ = [[−a,0],[0,a]] with a² = −1,
/// as elements of PSL₂(p).
pub fn class1_generators(group: &MatrixGroup) -> Result<[GroupElement; 3]> {
    let f = group.field();
    let a = f
        .sqrt_minus_one()
        .ok_or_else(|| Error::BadCongruence(format!("−1 is not a square in GF({})", f.order())))?;
    let (zero, one) = (f.zero(), f.one());
    let mats = [
        Matrix::new(zero, one, f.neg(one), zero),
        Matrix::new(a, zero, one, f.neg(a)),
        Matrix::new(f.neg(a), zero, zero, a),
    ];
    let [r0, r1, r2] = mats.map(|m| group.canonicalize(m));
    Ok([r0?, r1?, r2?])
}

fn check_class1_prime(p: u64) -> Result<()> {
    if !is_prime(p) || p % 12 != 1 {
        return Err(Error::BadCongruence(format!(
            "class 1 construction needs a prime p ≡ 1 (mod 12), got {p}"
        )));
    }
    Ok(())
}

/// The reflexible map of type {3, p} on PSL₂(p), p ≡ 1 (mod 12).
pub fn class1_map(p: u64) -> Result<(GroupContext, StringRep)> {
    check_class1_prime(p)?;
    let ctx = GroupContext::enumerate(p, Family::Psl)?;
    let gens = class1_generators(ctx.group())?
        .iter()
        .map(|g| ctx.index_of(g))
        .collect::<Result<Vec<_>>>()?;
    let rep = StringRep::new(&ctx, gens)?;
    let report = validate(&ctx, &rep, true)?;
    if let Some(v) = report.failures.first() {
        return Err(Error::NotValidated(v.to_string()));
    }
    Ok((ctx, rep))
}

/// Adds a fourth generator ρ₃: the involution of smallest index commuting
/// with ρ₀ and ρ₁, outside ⟨ρ₀, ρ₁⟩, distinct from ρ₂, for which the
/// 4-tuple is a generating string representation.
pub fn extend_map(ctx: &GroupContext, rep3: &StringRep) -> Result<StringRep> {
    rep3.check_context(ctx)?;
    if rep3.rank() != 3 {
        return Err(Error::RankMismatch {
            expected: 3,
            found: rep3.rank(),
        });
    }
    if ctx.family() != Family::Psl {
        return Err(Error::UnsupportedFamily(ctx.family()));
    }
    let report = validate(ctx, rep3, false)?;
    if let Some(v) = report.failures.first() {
        return Err(Error::NotValidated(v.to_string()));
    }
    let [r0, r1, r2] = [rep3.gens()[0], rep3.gens()[1], rep3.gens()[2]];
    let k = ctx.element_order(ctx.mul(r0, r1));
    ExtensionParams::new(ctx.q() as u64, k)?;
    let x = ctx.element_order(ctx.mul(r1, r2));
    if x < 3 {
        return Err(Error::PreconditionFailed(format!("order of ρ₁ρ₂ is {x} < 3")));
    }
    let dihedral = ctx.closure(&[r0, r1]);
    for &z in ctx.involutions() {
        if z == r2 || dihedral.binary_search(&z).is_ok() {
            continue;
        }
        if !ctx.commute(z, r0) || !ctx.commute(z, r1) {
            continue;
        }
        let rep4 = StringRep::new(ctx, vec![r0, r1, r2, z])?;
        if validate(ctx, &rep4, true)?.ok {
            return Ok(rep4);
        }
    }
    Err(Error::NotExtendible)
}

/// First involution triple, in index order, with ρ₀ρ₂ = ρ₂ρ₀, |ρ₀ρ₁| = 5,
/// |ρ₁ρ₂| = 3 and ⟨ρ₀, ρ₁, ρ₂⟩ of order 60.
pub fn a5_triple(ctx: &GroupContext) -> Option<[u32; 3]> {
    let id = ctx.identity();
    let inv = ctx.involutions();
    for &a in inv {
        let partners: Vec<u32> = inv
            .iter()
            .copied()
            .filter(|&c| c != a && ctx.commute(a, c))
            .collect();
        for &b in inv {
            let ab = ctx.mul(a, b);
            if ab == id || ctx.pow(ab, 5) != id {
                continue;
            }
            for &c in &partners {
                let bc = ctx.mul(b, c);
                if bc == id || ctx.pow(bc, 3) != id {
                    continue;
                }
                if ctx.closure_bounded(&[a, b, c], 60).is_some_and(|h| h.len() == 60) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// A rank-4 representation of PSL₂(p) with an A₅ facet group,
/// p ≡ ±1 (mod 20), p ≠ 19.
pub fn class2_rank4(p: u64) -> Result<(GroupContext, StringRep)> {
    if !is_prime(p) || p == 19 || !(p % 20 == 1 || p % 20 == 19) {
        return Err(Error::BadCongruence(format!(
            "class 2 construction needs a prime p ≡ ±1 (mod 20), p ≠ 19, got {p}"
        )));
    }
    let ctx = GroupContext::enumerate(p, Family::Psl)?;
    let triple = a5_triple(&ctx).ok_or(Error::SearchExhausted)?;
    let rep3 = StringRep::new(&ctx, triple.to_vec())?;
    let rep4 = extend_map(&ctx, &rep3)?;
    Ok((ctx, rep4))
}
