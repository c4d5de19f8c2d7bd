//! Subgroup identification following Dickson's list for PSL₂(q).

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::prime_power;

use super::context::GroupContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubgroupTag {
    Trivial,
    Cyclic(u64),
    /// Elementary abelian of order p^r.
    ElementaryAbelian { p: u64, r: u32 },
    /// Dihedral of order 2m. The Klein four-group is Dihedral(2).
    Dihedral(u64),
    /// Elementary abelian p-group extended by a cyclic group.
    Borel,
    A4,
    S4,
    A5,
    Psl(u64),
    Pgl(u64),
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupKind {
    pub tag: SubgroupTag,
    pub order: u64,
}

impl SubgroupKind {
    pub fn is_full(&self) -> bool {
        self.tag == SubgroupTag::Full
    }
}

impl fmt::Display for SubgroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupTag::Trivial => write!(f, "Trivial"),
            SubgroupTag::Cyclic(m) => write!(f, "Cyclic({m})"),
            SubgroupTag::ElementaryAbelian { p, r } => write!(f, "ElementaryAbelian({p},{r})"),
            SubgroupTag::Dihedral(m) => write!(f, "Dihedral({m})"),
            SubgroupTag::Borel => write!(f, "Borel"),
            SubgroupTag::A4 => write!(f, "A4"),
            SubgroupTag::S4 => write!(f, "S4"),
            SubgroupTag::A5 => write!(f, "A5"),
            SubgroupTag::Psl(q) => write!(f, "PSL({q})"),
            SubgroupTag::Pgl(q) => write!(f, "PGL({q})"),
            SubgroupTag::Full => write!(f, "Full"),
        }
    }
}

impl fmt::Display for SubgroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.tag.fmt(f)
    }
}

impl Serialize for SubgroupKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            kind: String,
            order: u64,
        }
        Repr {
            kind: self.tag.to_string(),
            order: self.order,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubgroupKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            kind: String,
            order: u64,
        }
        let r = Repr::deserialize(d)?;
        let tag = parse_tag(&r.kind).ok_or_else(|| {
            serde::de::Error::custom(format!("unknown subgroup kind {:?}", r.kind))
        })?;
        Ok(SubgroupKind { tag, order: r.order })
    }
}

fn parse_tag(s: &str) -> Option<SubgroupTag> {
    let (name, args) = match s.find('(') {
        Some(i) => (&s[..i], s[i + 1..].strip_suffix(')')?),
        None => (s, ""),
    };
    let nums: Vec<u64> = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',').map(|a| a.trim().parse().ok()).collect::<Option<_>>()?
    };
    Some(match (name, nums.as_slice()) {
        ("Trivial", []) => SubgroupTag::Trivial,
        ("Cyclic", [m]) => SubgroupTag::Cyclic(*m),
        ("ElementaryAbelian", [p, r]) => SubgroupTag::ElementaryAbelian { p: *p, r: *r as u32 },
        ("Dihedral", [m]) => SubgroupTag::Dihedral(*m),
        ("Borel", []) => SubgroupTag::Borel,
        ("A4", []) => SubgroupTag::A4,
        ("S4", []) => SubgroupTag::S4,
        ("A5", []) => SubgroupTag::A5,
        ("PSL", [q]) => SubgroupTag::Psl(*q),
        ("PGL", [q]) => SubgroupTag::Pgl(*q),
        ("Full", []) => SubgroupTag::Full,
        _ => return None,
    })
}

/// A subgroup given by its sorted element list, with a small generating set.
struct Subgroup<'a> {
    ctx: &'a GroupContext,
    elements: &'a [u32],
    gens: Vec<u32>,
}

impl<'a> Subgroup<'a> {
    fn new(ctx: &'a GroupContext, elements: &'a [u32]) -> Self {
        let mut gens = Vec::new();
        let mut span: HashSet<u32> = HashSet::from([ctx.identity()]);
        for &x in elements {
            if span.len() == elements.len() {
                break;
            }
            if !span.contains(&x) {
                gens.push(x);
                span = ctx.closure(&gens).into_iter().collect();
            }
        }
        Subgroup { ctx, elements, gens }
    }

    fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, &a)| self.gens[i + 1..].iter().all(|&b| self.ctx.commute(a, b)))
    }

    fn center_order(&self) -> usize {
        self.elements
            .iter()
            .filter(|&&x| self.gens.iter().all(|&g| self.ctx.commute(x, g)))
            .count()
    }

    /// Order of the commutator subgroup: the normal closure of the
    /// commutators of generators.
    fn derived_order(&self) -> usize {
        let ctx = self.ctx;
        let mut normal_gens: Vec<u32> = Vec::new();
        for (i, &a) in self.gens.iter().enumerate() {
            for &b in &self.gens[i + 1..] {
                let c = ctx.mul(ctx.mul(ctx.inv(a), ctx.inv(b)), ctx.mul(a, b));
                if c != ctx.identity() {
                    normal_gens.push(c);
                }
            }
        }
        if normal_gens.is_empty() {
            return 1;
        }
        loop {
            let n: HashSet<u32> = ctx.closure(&normal_gens).into_iter().collect();
            let extra: Vec<u32> = normal_gens
                .iter()
                .flat_map(|&c| self.gens.iter().map(move |&g| ctx.conj(g, c)))
                .filter(|x| !n.contains(x))
                .collect();
            if extra.is_empty() {
                return n.len();
            }
            normal_gens.push(extra[0]);
        }
    }

    fn sample_closed(&self) -> bool {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        let n = self.elements.len();
        (0..200).all(|_| {
            let a = self.elements[rng.gen_range(0..n)];
            let b = self.elements[rng.gen_range(0..n)];
            self.contains(self.ctx.mul(a, b)) && self.contains(self.ctx.inv(a))
        })
    }
}

fn psl_order(q: u64) -> u64 {
    let full = q * (q * q - 1);
    if q % 2 == 1 {
        full / 2
    } else {
        full
    }
}

/// Classifies a subgroup of `ctx` given as a sorted list of element indices.
pub fn identify_subgroup(ctx: &GroupContext, elements: &[u32]) -> Result<SubgroupKind> {
    let n = elements.len() as u64;
    let kind = |tag| Ok(SubgroupKind { tag, order: n });
    if n == 0 || elements.binary_search(&ctx.identity()).is_err() {
        return Err(Error::NotASubgroup);
    }
    if n == 1 {
        return kind(SubgroupTag::Trivial);
    }
    if n == ctx.order() as u64 {
        return kind(SubgroupTag::Full);
    }
    let h = Subgroup::new(ctx, elements);
    if cfg!(debug_assertions) && !h.sample_closed() {
        return Err(Error::NotASubgroup);
    }
    let orders: Vec<u64> = elements.iter().map(|&x| ctx.element_order(x)).collect();

    if h.is_abelian() {
        if orders.contains(&n) {
            return kind(SubgroupTag::Cyclic(n));
        }
        if n == 4 {
            return kind(SubgroupTag::Dihedral(2));
        }
        if let Some((p, r)) = prime_power(n) {
            if orders.iter().all(|&o| o == 1 || o == p) {
                return kind(SubgroupTag::ElementaryAbelian { p, r });
            }
        }
        return Err(Error::Unclassified(n as usize));
    }

    if n.is_multiple_of(2) {
        let m = n / 2;
        if let Some(pos) = orders.iter().position(|&o| o == m) {
            let rotations = ctx.closure(&[elements[pos]]);
            let reflections_only = elements
                .iter()
                .zip(&orders)
                .all(|(x, &o)| rotations.binary_search(x).is_ok() || o == 2);
            if reflections_only {
                return kind(SubgroupTag::Dihedral(m));
            }
        }
    }

    let derived = h.derived_order() as u64;
    match (n, derived) {
        (12, 4) => return kind(SubgroupTag::A4),
        (24, 12) => return kind(SubgroupTag::S4),
        (60, 60) => return kind(SubgroupTag::A5),
        _ => {}
    }

    let p = ctx.field().characteristic() as u64;
    let k = ctx.field().spec().k();
    for a in (1..=k).filter(|a| k.is_multiple_of(*a)) {
        let sub = p.pow(a);
        if n == psl_order(sub) && derived == n {
            return kind(SubgroupTag::Psl(sub));
        }
        if n == sub * (sub * sub - 1) && derived < n {
            return kind(SubgroupTag::Pgl(sub));
        }
    }

    // Borel: the p-elements form a normal elementary abelian subgroup with a
    // cyclic complement.
    let p_elements: Vec<u32> = elements
        .iter()
        .zip(&orders)
        .filter(|(_, &o)| o == 1 || o == p)
        .map(|(&x, _)| x)
        .collect();
    let sylow = p_elements.len() as u64;
    if sylow > 1 && prime_power(sylow).map(|(b, _)| b) == Some(p) && ctx.closure(&p_elements).len() as u64 == sylow {
        let complement = n / sylow;
        if n.is_multiple_of(sylow) && orders.contains(&complement) {
            return kind(SubgroupTag::Borel);
        }
    }

    Err(Error::Unclassified(n as usize))
}

/// Order of the centre of a subgroup.
pub fn center_order(ctx: &GroupContext, elements: &[u32]) -> usize {
    Subgroup::new(ctx, elements).center_order()
}

/// Kind of the subgroup generated by `gens`, without materialising it when
/// it is the whole group.
pub fn kind_of_generated(ctx: &GroupContext, gens: &[u32]) -> Result<SubgroupKind> {
    match ctx.proper_closure(gens) {
        None => Ok(SubgroupKind {
            tag: SubgroupTag::Full,
            order: ctx.order() as u64,
        }),
        Some(h) => identify_subgroup(ctx, &h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;

    #[test]
    fn whole_and_trivial() {
        let ctx = GroupContext::enumerate(5, Family::Psl).unwrap();
        let all: Vec<u32> = (0..60).collect();
        assert_eq!(identify_subgroup(&ctx, &all).unwrap().tag, SubgroupTag::Full);
        assert_eq!(
            identify_subgroup(&ctx, &[ctx.identity()]).unwrap().tag,
            SubgroupTag::Trivial
        );
    }

    #[test]
    fn not_a_subgroup() {
        let ctx = GroupContext::enumerate(7, Family::Psl).unwrap();
        assert!(matches!(identify_subgroup(&ctx, &[]), Err(Error::NotASubgroup)));
        let x = ctx.involutions()[3];
        let mut bad = vec![ctx.identity(), x, ctx.involutions()[4]];
        bad.sort_unstable();
        assert!(matches!(identify_subgroup(&ctx, &bad), Err(Error::NotASubgroup)));
    }

    /// Collects every subgroup generated by a pair of elements and checks
    /// that each one is classified with a consistent order.
    #[test]
    fn every_two_generated_subgroup_is_classified() {
        for q in [4u64, 5, 7, 8, 9, 11] {
            let ctx = GroupContext::enumerate(q, Family::Psl).unwrap();
            let n = ctx.order() as u32;
            let mut seen = HashSet::new();
            for a in (0..n).step_by(3) {
                for b in (a..n).step_by(7) {
                    let h = ctx.closure(&[a, b]);
                    if seen.insert(h.clone()) {
                        let kind = identify_subgroup(&ctx, &h)
                            .unwrap_or_else(|e| panic!("q = {q}, order {}: {e}", h.len()));
                        assert_eq!(kind.order, h.len() as u64);
                        let expected = match kind.tag {
                            SubgroupTag::Dihedral(m) => Some(2 * m),
                            SubgroupTag::Cyclic(m) => Some(m),
                            SubgroupTag::A4 => Some(12),
                            SubgroupTag::S4 => Some(24),
                            SubgroupTag::A5 => Some(60),
                            SubgroupTag::Psl(s) => Some(psl_order(s)),
                            SubgroupTag::Pgl(s) => Some(s * (s * s - 1)),
                            _ => None,
                        };
                        if let Some(e) = expected {
                            assert_eq!(e, kind.order, "q = {q}: {kind}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn a5_inside_psl11() {
        let ctx = GroupContext::enumerate(11, Family::Psl).unwrap();
        let inv = ctx.involutions();
        let mut found = None;
        'outer: for &a in inv {
            for &b in inv {
                if ctx.element_order(ctx.mul(a, b)) != 5 {
                    continue;
                }
                for &c in inv {
                    if c != a && ctx.commute(a, c) && ctx.element_order(ctx.mul(b, c)) == 3 {
                        let h = ctx.closure(&[a, b, c]);
                        if h.len() == 60 {
                            found = Some(h);
                            break 'outer;
                        }
                    }
                }
            }
        }
        let h = found.expect("PSL(2,11) contains a {5,3} triple generating A5");
        let sub = Subgroup::new(&ctx, &h);
        assert_eq!(sub.derived_order(), 60);
        assert_eq!(identify_subgroup(&ctx, &h).unwrap().tag, SubgroupTag::A5);
    }

    #[test]
    fn borel_and_subfield_groups() {
        let ctx = GroupContext::enumerate(9, Family::Psl).unwrap();
        // Upper unitriangular [[1,b],[0,1]] and diagonal matrices.
        let f = ctx.field().clone();
        let t = f.from_coeffs(&[0, 1]).unwrap();
        let unipotent = crate::group::Matrix([f.one(), f.one(), f.zero(), f.one()]);
        let unipotent2 = crate::group::Matrix([f.one(), t, f.zero(), f.one()]);
        let mut w = f.zero();
        let mut diag = None;
        for x in f.elements().skip(1) {
            let m = crate::group::Matrix([x, f.zero(), f.zero(), f.inv(x).unwrap()]);
            let i = ctx.index_of_matrix(m).unwrap();
            if ctx.element_order(i) == 4 {
                w = x;
                diag = Some(i);
                break;
            }
        }
        assert_ne!(w, f.zero());
        let gens = [
            ctx.index_of_matrix(unipotent).unwrap(),
            ctx.index_of_matrix(unipotent2).unwrap(),
            diag.unwrap(),
        ];
        let b = ctx.closure(&gens);
        assert_eq!(b.len(), 36);
        assert_eq!(identify_subgroup(&ctx, &b).unwrap().tag, SubgroupTag::Borel);

        // PSL(2,3) ≅ A4 and PGL(2,3) ≅ S4 inside PSL(2,9).
        let sub3 = [
            crate::group::Matrix::from_ints(&f, [1, 1, 0, 1]),
            crate::group::Matrix::from_ints(&f, [0, 1, -1, 0]),
        ]
        .map(|m| ctx.index_of_matrix(m).unwrap());
        let h = ctx.closure(&sub3);
        assert_eq!(identify_subgroup(&ctx, &h).unwrap().tag, SubgroupTag::A4);
    }

    #[test]
    fn psl_of_subfield() {
        let ctx = GroupContext::enumerate(16, Family::Psl).unwrap();
        let f = ctx.field().clone();
        let gens = [
            crate::group::Matrix::from_ints(&f, [1, 1, 0, 1]),
            crate::group::Matrix::from_ints(&f, [0, 1, 1, 0]),
        ];
        // Entries in GF(2): PSL(2,2) ≅ S3.
        let h = ctx.closure(&gens.map(|m| ctx.index_of_matrix(m).unwrap()));
        assert_eq!(identify_subgroup(&ctx, &h).unwrap().tag, SubgroupTag::Dihedral(3));

        let ctx = GroupContext::enumerate(25, Family::Psl).unwrap();
        let f = ctx.field().clone();
        let gens = [
            crate::group::Matrix::from_ints(&f, [1, 1, 0, 1]),
            crate::group::Matrix::from_ints(&f, [0, 1, -1, 0]),
        ];
        let h = ctx.closure(&gens.map(|m| ctx.index_of_matrix(m).unwrap()));
        assert_eq!(h.len(), 60);
        assert_eq!(identify_subgroup(&ctx, &h).unwrap().tag, SubgroupTag::A5);
        let two = crate::group::Matrix::from_ints(&f, [2, 0, 0, 1]);
        // diag(2,1) has non-square determinant in GF(5) but is a square in GF(25).
        let scaled = {
            let s = f.elements().find(|&s| f.mul(s, s) == f.inv(f.from_int(2)).unwrap()).unwrap();
            two.scale(s, &f)
        };
        let mut pg = gens.map(|m| ctx.index_of_matrix(m).unwrap()).to_vec();
        pg.push(ctx.index_of_matrix(scaled).unwrap());
        let h = ctx.closure(&pg);
        assert_eq!(h.len(), 120);
        assert_eq!(identify_subgroup(&ctx, &h).unwrap().tag, SubgroupTag::Pgl(5));
    }

    #[test]
    fn kind_serialization_round_trip() {
        for tag in [
            SubgroupTag::Dihedral(6),
            SubgroupTag::ElementaryAbelian { p: 2, r: 3 },
            SubgroupTag::Psl(5),
            SubgroupTag::Full,
        ] {
            let k = SubgroupKind { tag, order: 7 };
            let s = serde_json::to_string(&k).unwrap();
            assert_eq!(serde_json::from_str::<SubgroupKind>(&s).unwrap(), k);
        }
    }
}
