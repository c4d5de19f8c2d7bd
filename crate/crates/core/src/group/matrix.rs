use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "PSL")]
    Psl,
    #[serde(rename = "PGL")]
    Pgl,
}

/// Accepts any letter case.
impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Psl => "PSL",
            Family::Pgl => "PGL",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "psl" => Ok(Family::Psl),
            "pgl" => Ok(Family::Pgl),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// A 2×2 matrix in row-major order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix(pub [FieldElement; 4]);

impl Matrix {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Self {
        Matrix([a, b, c, d])
    }

    pub fn identity(field: &Field) -> Self {
        Matrix([field.one(), field.zero(), field.zero(), field.one()])
    }

    /// Builds a matrix from integer entries reduced mod p.
    pub fn from_ints(field: &Field, entries: [i64; 4]) -> Self {
        Matrix(entries.map(|n| field.from_int(n)))
    }

    pub fn entries(&self) -> [FieldElement; 4] {
        self.0
    }

    pub fn det(&self, field: &Field) -> FieldElement {
        let [a, b, c, d] = self.0;
        field.sub(field.mul(a, d), field.mul(b, c))
    }

    pub fn trace(&self, field: &Field) -> FieldElement {
        field.add(self.0[0], self.0[3])
    }

    #[inline]
    pub fn mul(&self, other: &Matrix, field: &Field) -> Matrix {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = other.0;
        Matrix([
            field.add(field.mul(a, e), field.mul(b, g)),
            field.add(field.mul(a, f), field.mul(b, h)),
            field.add(field.mul(c, e), field.mul(d, g)),
            field.add(field.mul(c, f), field.mul(d, h)),
        ])
    }

    /// The adjugate, which is the inverse up to the scalar det.
    pub fn adjugate(&self, field: &Field) -> Matrix {
        let [a, b, c, d] = self.0;
        Matrix([d, field.neg(b), field.neg(c), a])
    }

    pub fn scale(&self, s: FieldElement, field: &Field) -> Matrix {
        Matrix(self.0.map(|x| field.mul(s, x)))
    }

    pub fn frobenius(&self, field: &Field) -> Matrix {
        Matrix(self.0.map(|x| field.frobenius(x)))
    }

    pub fn coeff_lists(&self, field: &Field) -> Vec<Vec<u32>> {
        self.0.iter().map(|&x| field.coeffs(x)).collect()
    }
}

/// A canonical representative of an element of PSL₂(q) or PGL₂(q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    matrix: Matrix,
    family: Family,
}

impl GroupElement {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn family(&self) -> Family {
        self.family
    }
}

/// Matrix arithmetic for one projective group, without enumerating it.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    field: Field,
    family: Family,
}

impl MatrixGroup {
    pub fn new(field: Field, family: Family) -> Self {
        MatrixGroup { field, family }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// Whether elements are normalised by scaling (PGL, or any even q)
    /// rather than by choosing a sign.
    pub(crate) fn scales(&self) -> bool {
        self.family == Family::Pgl || self.field.characteristic() == 2
    }

    /// Checks the determinant and returns the canonical representative.
    pub fn canonicalize(&self, m: Matrix) -> Result<GroupElement> {
        let det = m.det(&self.field);
        if det == self.field.zero() || (!self.scales() && det != self.field.one()) {
            return Err(Error::BadDeterminant(self.family));
        }
        Ok(GroupElement {
            matrix: self.normalize(m),
            family: self.family,
        })
    }

    /// Canonical form of a matrix already known to be admissible.
    #[inline]
    pub(crate) fn normalize(&self, m: Matrix) -> Matrix {
        let f = &self.field;
        let lead = m.0.iter().copied().find(|&x| x != f.zero()).expect("nonzero matrix");
        if self.scales() {
            if lead == f.one() {
                m
            } else {
                m.scale(f.inv_nonzero(lead), f)
            }
        } else if f.neg(lead) < lead {
            Matrix(m.0.map(|x| f.neg(x)))
        } else {
            m
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            matrix: Matrix::identity(&self.field),
            family: self.family,
        }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.family != self.family {
            return Err(Error::MixedContexts);
        }
        Ok(())
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(GroupElement {
            matrix: self.normalize(g.matrix.mul(&h.matrix, &self.field)),
            family: self.family,
        })
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(GroupElement {
            matrix: self.normalize(g.matrix.adjugate(&self.field)),
            family: self.family,
        })
    }

    pub fn pow(&self, g: &GroupElement, e: u64) -> Result<GroupElement> {
        let mut acc = self.identity();
        for _ in 0..e {
            acc = self.mul(&acc, g)?;
        }
        Ok(acc)
    }

    /// Smallest m ≥ 1 with g^m = 1, by repeated multiplication.
    pub fn order(&self, g: &GroupElement) -> Result<u64> {
        self.check(g)?;
        let id = self.identity();
        let mut acc = *g;
        let mut m = 1;
        while acc != id {
            acc = self.mul(&acc, g)?;
            m += 1;
        }
        Ok(m)
    }

    /// A fixed non-square ν; conjugation by diag(ν, 1) is the diagonal outer
    /// automorphism of PSL₂(q) for odd q.
    pub(crate) fn non_square(&self) -> Option<FieldElement> {
        let f = &self.field;
        f.elements().skip(1).find(|&x| !f.is_square(x))
    }
}
