use std::collections::VecDeque;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

use super::matrix::{Family, GroupElement, Matrix, MatrixGroup};

/// Largest group order that [`GroupContext::enumerate`] will build.
pub const ENUMERATION_CAP: u64 = 1_000_000;

/// |PSL₂(q)| = q(q²−1)/gcd(2, q−1) and |PGL₂(q)| = q(q²−1).
pub fn group_order(q: u64, family: Family) -> u64 {
    let full = q * (q * q - 1);
    match family {
        Family::Psl if q % 2 == 1 => full / 2,
        _ => full,
    }
}

const KEY_BITS: u32 = 16;

fn pack(m: &Matrix) -> u64 {
    m.0.iter()
        .fold(0u64, |acc, x| (acc << KEY_BITS) | x.code() as u64)
}

fn unpack(key: u64) -> Matrix {
    let mask = (1u64 << KEY_BITS) - 1;
    let e = |shift: u32| FieldElement(((key >> (shift * KEY_BITS)) & mask) as u32);
    Matrix([e(3), e(2), e(1), e(0)])
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Conjugacy classes of involutions under inner automorphisms, with a
/// transversal mapping every involution onto its class minimum.
#[derive(Debug)]
struct InvolutionClasses {
    /// Class minimum, indexed by position in the involution list.
    rep: Vec<u32>,
    /// h with h·x·h⁻¹ = rep(x), indexed the same way.
    conjugator: Vec<u32>,
    /// Centralizer of each class minimum, keyed by that minimum.
    rep_centralizers: Vec<(u32, Vec<u32>)>,
}

/// A fully enumerated PSL₂(q) or PGL₂(q). Elements are interned: every
/// query takes and returns positions in the sorted element table.
#[derive(Debug)]
pub struct GroupContext {
    group: MatrixGroup,
    keys: Vec<u64>,
    identity: u32,
    involutions: Vec<u32>,
    generators: OnceLock<Vec<u32>>,
    outer: OnceLock<Vec<Vec<u32>>>,
    classes: OnceLock<InvolutionClasses>,
}

impl GroupContext {
    pub fn enumerate(q: u64, family: Family) -> Result<Self> {
        let order = group_order(q, family);
        if order > ENUMERATION_CAP {
            return Err(Error::TooLarge {
                order,
                cap: ENUMERATION_CAP,
            });
        }
        let field = Field::of_order(q)?;
        let group = MatrixGroup::new(field, family);
        let f = group.field();
        let mut keys = Vec::with_capacity(order as usize);
        if group.scales() {
            // First nonzero entry is 1.
            let one = f.one();
            for b in f.elements() {
                for c in f.elements() {
                    for d in f.elements() {
                        let m = Matrix([one, b, c, d]);
                        if m.det(f) != f.zero() {
                            keys.push(pack(&m));
                        }
                    }
                }
            }
            for c in f.elements().skip(1) {
                for d in f.elements() {
                    keys.push(pack(&Matrix([f.zero(), one, c, d])));
                }
            }
        } else {
            for a in f.elements() {
                for b in f.elements() {
                    for c in f.elements() {
                        let d = if a != f.zero() {
                            f.mul(f.add(f.one(), f.mul(b, c)), f.inv_nonzero(a))
                        } else if f.mul(b, c) == f.neg(f.one()) {
                            // a = 0 leaves d free.
                            for d in f.elements() {
                                let m = Matrix([a, b, c, d]);
                                if group.normalize(m) == m {
                                    keys.push(pack(&m));
                                }
                            }
                            continue;
                        } else {
                            continue;
                        };
                        let m = Matrix([a, b, c, d]);
                        if group.normalize(m) == m {
                            keys.push(pack(&m));
                        }
                    }
                }
            }
        }
        keys.sort_unstable();
        assert_eq!(keys.len() as u64, order, "enumeration disagrees with the order formula");
        let identity = keys
            .binary_search(&pack(&Matrix::identity(f)))
            .expect("identity is canonical") as u32;
        let mut ctx = GroupContext {
            group,
            keys,
            identity,
            involutions: Vec::new(),
            generators: OnceLock::new(),
            outer: OnceLock::new(),
            classes: OnceLock::new(),
        };
        let zero = ctx.field().zero();
        ctx.involutions = (0..ctx.order() as u32)
            .filter(|&i| i != identity && ctx.matrix(i).trace(ctx.field()) == zero)
            .collect();
        Ok(ctx)
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        self.group.field()
    }

    pub fn q(&self) -> u32 {
        self.group.q()
    }

    pub fn family(&self) -> Family {
        self.group.family()
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn matrix(&self, i: u32) -> Matrix {
        unpack(self.keys[i as usize])
    }

    pub fn element(&self, i: u32) -> GroupElement {
        self.group
            .canonicalize(self.matrix(i))
            .expect("table entries are admissible")
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<u32> {
        if g.family() != self.family() {
            return Err(Error::MixedContexts);
        }
        self.keys
            .binary_search(&pack(g.matrix()))
            .map(|i| i as u32)
            .map_err(|_| Error::MixedContexts)
    }

    /// Index of an arbitrary admissible matrix.
    pub fn index_of_matrix(&self, m: Matrix) -> Result<u32> {
        let g = self.group.canonicalize(m)?;
        self.index_of(&g)
    }

    #[inline]
    fn lookup(&self, m: Matrix) -> u32 {
        let key = pack(&self.group.normalize(m));
        match self.keys.binary_search(&key) {
            Ok(i) => i as u32,
            Err(_) => panic!("matrix {m:?} is not in the group table"),
        }
    }

    #[inline]
    pub fn mul(&self, g: u32, h: u32) -> u32 {
        self.lookup(self.matrix(g).mul(&self.matrix(h), self.field()))
    }

    #[inline]
    pub fn inv(&self, g: u32) -> u32 {
        self.lookup(self.matrix(g).adjugate(self.field()))
    }

    /// g·x·g⁻¹.
    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        let f = self.field();
        let gm = self.matrix(g);
        self.lookup(gm.mul(&self.matrix(x), f).mul(&gm.adjugate(f), f))
    }

    #[inline]
    pub fn commute(&self, g: u32, h: u32) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    pub fn pow(&self, g: u32, e: u64) -> u32 {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: u32) -> u64 {
        let mut acc = g;
        let mut m = 1;
        while acc != self.identity {
            acc = self.mul(acc, g);
            m += 1;
        }
        m
    }

    pub fn is_involution(&self, g: u32) -> bool {
        self.involutions.binary_search(&g).is_ok()
    }

    /// All involutions, ascending.
    pub fn involutions(&self) -> &[u32] {
        &self.involutions
    }

    pub fn involution_position(&self, g: u32) -> Option<usize> {
        self.involutions.binary_search(&g).ok()
    }

    /// Everything commuting with g, by a full table scan.
    pub fn centralizer(&self, g: u32) -> Vec<u32> {
        (0..self.order() as u32)
            .filter(|&h| self.commute(g, h))
            .collect()
    }

    /// An upper bound on the order of any proper subgroup.
    pub fn proper_bound(&self) -> usize {
        let n = self.order();
        if self.family() == Family::Pgl && self.field().characteristic() != 2 {
            return n / 2;
        }
        let q = self.q() as u64;
        let borel = (q * (q - 1) / gcd(2, q - 1)) as usize;
        borel.max(60).min(n / 2)
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        self.closure_bounded(gens, usize::MAX)
            .expect("unbounded closure always completes")
    }

    /// Like [`closure`](Self::closure) but gives up, returning `None`, as
    /// soon as more than `limit` elements have been reached.
    pub fn closure_bounded(&self, gens: &[u32], limit: usize) -> Option<Vec<u32>> {
        let n = self.order();
        let mut seen = vec![0u64; n.div_ceil(64)];
        let mark = |seen: &mut [u64], x: u32| {
            let (w, b) = (x as usize / 64, x as usize % 64);
            let fresh = seen[w] & (1 << b) == 0;
            seen[w] |= 1 << b;
            fresh
        };
        let mut out = vec![self.identity];
        mark(&mut seen, self.identity);
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if mark(&mut seen, y) {
                    out.push(y);
                    if out.len() > limit {
                        return None;
                    }
                }
            }
        }
        out.sort_unstable();
        Some(out)
    }

    /// Subgroup generated by `gens`, or `None` when it is the whole group.
    /// Stops early once the proper-subgroup bound is exceeded.
    pub fn proper_closure(&self, gens: &[u32]) -> Option<Vec<u32>> {
        match self.closure_bounded(gens, self.proper_bound()) {
            Some(h) if h.len() < self.order() => Some(h),
            _ => None,
        }
    }

    pub fn generates(&self, gens: &[u32]) -> bool {
        self.proper_closure(gens).is_none()
    }

    /// Order of ⟨gens⟩.
    pub fn subgroup_order(&self, gens: &[u32]) -> usize {
        self.proper_closure(gens).map_or(self.order(), |h| h.len())
    }

    /// A small deterministic generating set of the whole group.
    pub fn generators(&self) -> &[u32] {
        self.generators.get_or_init(|| {
            let n = self.order() as u64;
            let mut gens: Vec<u32> = Vec::new();
            let mut size = 1;
            for t in 0..n {
                let x = ((t * 7919 + 1) % n) as u32;
                let mut cand = gens.clone();
                cand.push(x);
                match self.proper_closure(&cand) {
                    None => return cand,
                    Some(h) if h.len() > size => {
                        size = h.len();
                        gens = cand;
                    }
                    Some(_) => {}
                }
            }
            unreachable!("the element table generates the group")
        })
    }

    /// Automorphisms modulo inner ones, as permutations of the element
    /// table. Entry 0 is the identity; the rest are the Frobenius powers,
    /// composed with the diagonal automorphism diag(ν, 1) for PSL with odd q.
    /// Together with inner automorphisms these realise PΓL₂(q).
    pub fn outer_automorphisms(&self) -> &[Vec<u32>] {
        self.outer.get_or_init(|| {
            let f = self.field();
            let k = f.spec().k();
            let diagonal = match self.family() {
                Family::Psl => self.group.non_square(),
                Family::Pgl => None,
            };
            let mut maps = Vec::new();
            for e in 0..=u32::from(diagonal.is_some()) {
                for j in 0..k {
                    let map = (0..self.order() as u32)
                        .map(|i| {
                            let mut m = self.matrix(i);
                            for _ in 0..j {
                                m = m.frobenius(f);
                            }
                            if e == 1 {
                                let nu = diagonal.unwrap();
                                let delta = Matrix([nu, f.zero(), f.zero(), f.one()]);
                                let delta_inv = Matrix([f.inv_nonzero(nu), f.zero(), f.zero(), f.one()]);
                                m = delta.mul(&m, f).mul(&delta_inv, f);
                            }
                            self.lookup(m)
                        })
                        .collect();
                    maps.push(map);
                }
            }
            maps
        })
    }

    fn classes(&self) -> &InvolutionClasses {
        self.classes.get_or_init(|| {
            let gens = self.generators().to_vec();
            let ginv: Vec<u32> = gens.iter().map(|&s| self.inv(s)).collect();
            let m = self.involutions.len();
            let mut rep = vec![u32::MAX; m];
            let mut conjugator = vec![0u32; m];
            let mut rep_centralizers = Vec::new();
            for start in 0..m {
                if rep[start] != u32::MAX {
                    continue;
                }
                let r = self.involutions[start];
                rep[start] = r;
                conjugator[start] = self.identity;
                let mut queue = VecDeque::from([start]);
                while let Some(pos) = queue.pop_front() {
                    let y = self.involutions[pos];
                    for (&s, &si) in gens.iter().zip(&ginv) {
                        let z = self.conj(s, y);
                        let zp = self.involution_position(z).expect("conjugate of an involution");
                        if rep[zp] == u32::MAX {
                            rep[zp] = r;
                            conjugator[zp] = self.mul(conjugator[pos], si);
                            queue.push_back(zp);
                        }
                    }
                }
                rep_centralizers.push((r, self.centralizer(r)));
            }
            InvolutionClasses {
                rep,
                conjugator,
                rep_centralizers,
            }
        })
    }

    /// For an involution x: the minimum r of its conjugacy class and some h
    /// with h·x·h⁻¹ = r.
    pub fn involution_class(&self, x: u32) -> Option<(u32, u32)> {
        let pos = self.involution_position(x)?;
        let c = self.classes();
        Some((c.rep[pos], c.conjugator[pos]))
    }

    /// Centralizer of a conjugacy-class minimum among involutions.
    pub fn class_rep_centralizer(&self, rep: u32) -> &[u32] {
        &self
            .classes()
            .rep_centralizers
            .iter()
            .find(|(r, _)| *r == rep)
            .expect("not an involution class minimum")
            .1
    }

    /// One representative (the minimum) per Aut(G)-orbit of involutions.
    pub fn involution_orbit_reps(&self) -> Vec<u32> {
        let reps: Vec<u32> = self.classes().rep_centralizers.iter().map(|(r, _)| *r).collect();
        let mut parent: Vec<usize> = (0..reps.len()).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            if parent[i] != i {
                let root = find(parent, parent[i]);
                parent[i] = root;
            }
            parent[i]
        }
        for (i, &r) in reps.iter().enumerate() {
            for map in self.outer_automorphisms() {
                let (image_rep, _) = self.involution_class(map[r as usize]).unwrap();
                let j = reps.iter().position(|&x| x == image_rep).unwrap();
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut out: Vec<u32> = (0..reps.len())
            .filter(|&i| find(&mut parent, i) == i)
            .map(|i| reps[i])
            .collect();
        out.sort_unstable();
        out
    }
}
