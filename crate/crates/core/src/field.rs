//! Arithmetic in GF(p^k).
//!
//! A field is described by a [`FieldSpec`] (characteristic, degree and a monic
//! irreducible modulus) and realised by a [`Field`], which holds complete
//! addition and multiplication tables. Elements are small integer codes; the
//! code of an element orders exactly like its coefficient list compared
//! lexicographically with the constant coefficient first, so sorting codes
//! sorts serialized elements.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order for which arithmetic tables are built.
pub const MAX_FIELD_ORDER: u64 = 2048;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    /// Coefficients of the monic modulus, constant term first (length k+1).
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// Builds GF(p^k) with the lexicographically smallest monic irreducible
    /// modulus of degree `k`, coefficients compared constant term first.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::CompositeP(p));
        }
        if k < 1 {
            return Err(Error::BadDegree(k));
        }
        let order = (p as u128).pow(k);
        if order > MAX_FIELD_ORDER as u128 {
            return Err(Error::FieldTooLarge(order.min(u64::MAX as u128) as u64));
        }
        let p = p as u32;
        let count = (p as u64).pow(k);
        let modulus = (0..count)
            .map(|n| {
                // Constant coefficient is the most significant digit.
                let mut coeffs = digits(n, p, k);
                coeffs.push(1);
                coeffs
            })
            .find(|poly| is_irreducible(poly, p))
            .expect("an irreducible polynomial of every degree exists");
        Ok(FieldSpec { p, k, modulus })
    }

    pub fn for_order(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, k)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.k)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
}

/// Base-`p` digits of `n`, most significant first, padded to `k` digits.
fn digits(mut n: u64, p: u32, k: u32) -> Vec<u32> {
    let mut out = vec![0; k as usize];
    for slot in out.iter_mut().rev() {
        *slot = (n % p as u64) as u32;
        n /= p as u64;
    }
    out
}

fn trim(poly: &mut Vec<u32>) {
    while poly.len() > 1 && *poly.last().unwrap() == 0 {
        poly.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() >= m.len() {
        let lead = *r.last().unwrap();
        let shift = r.len() - m.len();
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Trial division by every monic polynomial of degree at most half the degree.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() as u32 - 1;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        for n in 0..(p as u64).pow(d) {
            let mut divisor = digits(n, p, d);
            divisor.push(1);
            let r = poly_rem(poly, &divisor, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// An element of a [`Field`], stored as its code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub fn code(self) -> u32 {
        self.0
    }
}

/// GF(p^k) with precomputed operation tables.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    one: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    frobenius: Vec<u16>,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let q = spec.order();
        let p = spec.p;
        let k = spec.k;
        let coeffs: Vec<Vec<u32>> = (0..q as u64).map(|n| digits(n, p, k)).collect();
        let encode = |c: &[u32]| c.iter().fold(0u32, |acc, &d| acc * p + d);
        let one = p.pow(k - 1);
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        if k == 1 {
            for x in 0..qs {
                for y in 0..qs {
                    add[x * qs + y] = ((x + y) % qs) as u16;
                    mul[x * qs + y] = ((x * y) % qs) as u16;
                }
            }
        } else {
            let mut prod = vec![0u32; 2 * k as usize - 1];
            for x in 0..qs {
                for y in 0..qs {
                    let sum: Vec<u32> = coeffs[x]
                        .iter()
                        .zip(&coeffs[y])
                        .map(|(a, b)| (a + b) % p)
                        .collect();
                    add[x * qs + y] = encode(&sum) as u16;

                    prod.iter_mut().for_each(|c| *c = 0);
                    for (i, a) in coeffs[x].iter().enumerate() {
                        for (j, b) in coeffs[y].iter().enumerate() {
                            prod[i + j] = (prod[i + j] + a * b) % p;
                        }
                    }
                    let mut r = poly_rem(&prod, &spec.modulus, p);
                    r.resize(k as usize, 0);
                    mul[x * qs + y] = encode(&r) as u16;
                }
            }
        }
        let neg: Vec<u16> = (0..qs)
            .map(|x| (0..qs).find(|&y| add[x * qs + y] == 0).unwrap() as u16)
            .collect();
        let inv: Vec<u16> = (0..qs)
            .map(|x| {
                (0..qs)
                    .find(|&y| mul[x * qs + y] as u32 == one)
                    .unwrap_or(0) as u16
            })
            .collect();
        let frobenius = (0..qs)
            .map(|x| {
                let mut acc = one as u16;
                for _ in 0..p {
                    acc = mul[acc as usize * qs + x];
                }
                acc
            })
            .collect();
        Field {
            spec,
            q,
            one,
            add,
            mul,
            neg,
            inv,
            frobenius,
        }
    }

    pub fn of_order(q: u64) -> Result<Self> {
        Ok(Self::new(FieldSpec::for_order(q)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(self.one)
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.spec.k as usize || coeffs.iter().any(|&c| c >= self.spec.p) {
            return Err(Error::BadElement(coeffs.to_vec()));
        }
        Ok(FieldElement(
            coeffs.iter().fold(0, |acc, &d| acc * self.spec.p + d),
        ))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        digits(x.0 as u64, self.spec.p, self.spec.k)
    }

    /// Embeds an integer via its residue mod p.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.spec.p as i64;
        FieldElement((n.rem_euclid(p) as u32) * self.one)
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(self.add[(x.0 * self.q + y.0) as usize] as u32)
    }

    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(self.mul[(x.0 * self.q + y.0) as usize] as u32)
    }

    #[inline]
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.neg[x.0 as usize] as u32)
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement(self.inv[x.0 as usize] as u32))
    }

    #[inline]
    pub(crate) fn inv_nonzero(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.inv[x.0 as usize] as u32)
    }

    pub fn pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius automorphism x ↦ x^p.
    #[inline]
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.frobenius[x.0 as usize] as u32)
    }

    pub fn is_square(&self, x: FieldElement) -> bool {
        self.elements().any(|y| self.mul(y, y) == x)
    }

    /// The square root of −1 with the smallest coefficient list, if any.
    pub fn sqrt_minus_one(&self) -> Option<FieldElement> {
        let minus_one = self.neg(self.one());
        self.elements().find(|&a| self.mul(a, a) == minus_one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli() {
        assert_eq!(FieldSpec::new(5, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FieldSpec::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldSpec::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldSpec::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(FieldSpec::new(6, 1), Err(Error::CompositeP(6))));
        assert!(matches!(FieldSpec::new(1, 1), Err(Error::CompositeP(1))));
        assert!(matches!(FieldSpec::new(5, 0), Err(Error::BadDegree(0))));
        assert!(matches!(FieldSpec::for_order(12), Err(Error::NotPrimePower(12))));
    }

    #[test]
    fn modulus_is_deterministic() {
        for (p, k) in [(2, 4), (3, 3), (5, 2), (7, 2)] {
            assert_eq!(FieldSpec::new(p, k).unwrap(), FieldSpec::new(p, k).unwrap());
        }
    }

    #[test]
    fn small_examples() {
        let f13 = Field::of_order(13).unwrap();
        assert_eq!(f13.inv(f13.from_int(3)).unwrap(), f13.from_int(9));
        assert!(matches!(f13.inv(f13.zero()), Err(Error::DivisionByZero)));
        assert_eq!(f13.neg(f13.zero()), f13.zero());

        let f9 = Field::of_order(9).unwrap();
        let t = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.coeffs(f9.mul(t, t)), vec![2, 0]);
        assert_eq!(f9.coeffs(f9.from_coeffs(&[2, 1]).unwrap()), vec![2, 1]);
        assert!(f9.from_coeffs(&[3, 0]).is_err());
        assert!(f9.from_coeffs(&[1]).is_err());
    }

    #[test]
    fn square_roots_of_minus_one() {
        let root = |q| Field::of_order(q).unwrap().sqrt_minus_one().map(|a| a.code());
        assert_eq!(root(13), Some(5));
        assert_eq!(root(5), Some(2));
        assert_eq!(root(7), None);
        assert_eq!(root(37), Some(6));
    }

    #[test]
    fn sqrt_minus_one_exists_iff_q_1_mod_4_or_even() {
        for q in 2..=121u64 {
            let Some((p, _)) = prime_power(q) else { continue };
            let f = Field::of_order(q).unwrap();
            let minus_one = f.neg(f.one());
            let scanned = f.elements().any(|a| f.mul(a, a) == minus_one);
            assert_eq!(f.sqrt_minus_one().is_some(), scanned, "q = {q}");
            assert_eq!(scanned, q % 4 == 1 || p == 2, "q = {q}");
        }
    }

    #[test]
    fn fermat() {
        for q in [4u64, 8, 9, 25, 27, 49, 11] {
            let f = Field::of_order(q).unwrap();
            for x in f.elements().skip(1) {
                assert_eq!(f.pow(x, q - 1), f.one(), "q = {q}");
                assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
            }
        }
    }

    #[test]
    fn frobenius_fixes_prime_subfield_only() {
        let f = Field::of_order(27).unwrap();
        let fixed = f.elements().filter(|&x| f.frobenius(x) == x).count();
        assert_eq!(fixed, 3);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn field_and_triple() -> impl Strategy<Value = (u64, u32, u32, u32)> {
            prop::sample::select(vec![2u64, 3, 4, 5, 8, 9, 16, 25, 27, 49, 121])
                .prop_flat_map(|q| {
                    let q32 = q as u32;
                    (Just(q), 0..q32, 0..q32, 0..q32)
                })
        }

        proptest! {
            #[test]
            fn field_axioms((q, a, b, c) in field_and_triple()) {
                let f = Field::of_order(q).unwrap();
                let (a, b, c) = (FieldElement(a), FieldElement(b), FieldElement(c));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.add(a, b), f.add(b, a));
                prop_assert_eq!(f.mul(a, b), f.mul(b, a));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
                prop_assert_eq!(f.sub(f.add(a, b), b), a);
                if a != f.zero() {
                    prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
            }
        }
    }
}
