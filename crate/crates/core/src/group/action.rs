//! The action on the projective line PG(1, q), used as a checking device.

use crate::field::{Field, FieldElement};

use super::matrix::Matrix;

/// A point of PG(1, q): [x : 1] or [1 : 0].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Finite(FieldElement),
    Infinity,
}

pub fn points(field: &Field) -> Vec<Point> {
    field
        .elements()
        .map(Point::Finite)
        .chain(std::iter::once(Point::Infinity))
        .collect()
}

/// x ↦ (ax + b)/(cx + d) on homogeneous column vectors.
pub fn act(field: &Field, m: &Matrix, point: Point) -> Point {
    let [a, b, c, d] = m.entries();
    let (x, y) = match point {
        Point::Finite(x) => (x, field.one()),
        Point::Infinity => (field.one(), field.zero()),
    };
    let nx = field.add(field.mul(a, x), field.mul(b, y));
    let ny = field.add(field.mul(c, x), field.mul(d, y));
    if ny == field.zero() {
        Point::Infinity
    } else {
        Point::Finite(field.mul(nx, field.inv(ny).expect("nonzero")))
    }
}

pub fn fixed_points(field: &Field, m: &Matrix) -> Vec<Point> {
    points(field)
        .into_iter()
        .filter(|&pt| act(field, m, pt) == pt)
        .collect()
}
