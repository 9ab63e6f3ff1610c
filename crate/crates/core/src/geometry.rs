//! Planar points and ring utilities (shoelace area, perimeter, simplicity).

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product.
    #[inline]
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, o: Self) -> T {
        (o - self).norm()
    }

    /// Counter-clockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Self {
        Point::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl<T: Scalar> Add for Point<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Scalar> Sub for Point<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Neg for Point<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Point::new(-self.x, -self.y)
    }
}

impl<T: Scalar> Mul<T> for Point<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Point::new(self.x * s, self.y * s)
    }
}

/// Signed shoelace area of a closed ring; positive for counter-clockwise.
pub fn signed_area<T: Scalar>(ring: &[Point<T>]) -> T {
    let n = ring.len();
    if n < 3 {
        return T::zero();
    }
    let twice = (0..n).fold(T::zero(), |acc, i| acc + ring[i].cross(ring[(i + 1) % n]));
    twice / T::lit(2.0)
}

pub fn ring_perimeter<T: Scalar>(ring: &[Point<T>]) -> T {
    let n = ring.len();
    (0..n).fold(T::zero(), |acc, i| {
        acc + ring[i].distance(ring[(i + 1) % n])
    })
}

#[inline]
fn orient<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>) -> T {
    (b - a).cross(c - a)
}

#[inline]
fn within_box<T: Scalar>(a: Point<T>, b: Point<T>, p: Point<T>) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test, touching endpoints included.
pub fn segments_intersect<T: Scalar>(
    a0: Point<T>,
    a1: Point<T>,
    b0: Point<T>,
    b1: Point<T>,
) -> bool {
    let d1 = orient(b0, b1, a0);
    let d2 = orient(b0, b1, a1);
    let d3 = orient(a0, a1, b0);
    let d4 = orient(a0, a1, b1);
    let zero = T::zero();
    if ((d1 > zero && d2 < zero) || (d1 < zero && d2 > zero))
        && ((d3 > zero && d4 < zero) || (d3 < zero && d4 > zero))
    {
        return true;
    }
    (d1 == zero && within_box(b0, b1, a0))
        || (d2 == zero && within_box(b0, b1, a1))
        || (d3 == zero && within_box(a0, a1, b0))
        || (d4 == zero && within_box(a0, a1, b1))
}

/// True when no two non-adjacent edges of the closed ring meet and no
/// adjacent pair folds back onto itself.
pub fn is_simple_ring<T: Scalar>(ring: &[Point<T>]) -> bool {
    let n = ring.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        let a0 = ring[i];
        let a1 = ring[(i + 1) % n];
        if a0 == a1 {
            return false;
        }
        // Adjacent edge doubling back along itself.
        let a2 = ring[(i + 2) % n];
        let u = a1 - a0;
        let v = a2 - a1;
        if u.cross(v) == T::zero() && u.dot(v) < T::zero() {
            return false;
        }
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if segments_intersect(a0, a1, ring[j], ring[(j + 1) % n]) {
                return false;
            }
        }
    }
    true
}

/// Drops vertices whose two incident edges continue in the same direction.
pub fn drop_collinear<T: Scalar>(ring: &[Point<T>], rel_tol: T) -> Vec<Point<T>> {
    let mut out: Vec<Point<T>> = ring.to_vec();
    loop {
        let n = out.len();
        if n <= 3 {
            return out;
        }
        let redundant = (0..n).find(|&i| {
            let prev = out[(i + n - 1) % n];
            let cur = out[i];
            let next = out[(i + 1) % n];
            let u = cur - prev;
            let v = next - cur;
            let scale = u.norm() * v.norm();
            cur == prev || (u.cross(v).abs() <= rel_tol * scale && u.dot(v) > T::zero())
        });
        match redundant {
            Some(i) => {
                out.remove(i);
            }
            None => return out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    #[test]
    fn unit_square_area_and_perimeter() {
        let sq = [p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)];
        assert_eq!(signed_area(&sq), 1.0);
        assert_eq!(ring_perimeter(&sq), 4.0);
        let rev: Vec<_> = sq.iter().rev().copied().collect();
        assert_eq!(signed_area(&rev), -1.0);
    }

    #[test]
    fn bowtie_is_not_simple() {
        let bow = [p(0.0, 0.0), p(1.0, 1.0), p(1.0, 0.0), p(0.0, 1.0)];
        assert!(!is_simple_ring(&bow));
        let sq = [p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)];
        assert!(is_simple_ring(&sq));
    }

    #[test]
    fn touching_segments_count_as_intersecting() {
        assert!(segments_intersect(
            p(0.0, 0.0),
            p(2.0, 0.0),
            p(1.0, 0.0),
            p(1.0, 1.0)
        ));
        assert!(!segments_intersect(
            p(0.0, 0.0),
            p(2.0, 0.0),
            p(1.0, 0.5),
            p(1.0, 1.0)
        ));
    }

    #[test]
    fn collinear_vertices_dropped() {
        let ring = [
            p(0.0, 0.0),
            p(1.0, 0.0),
            p(2.0, 0.0),
            p(2.0, 1.0),
            p(0.0, 1.0),
        ];
        let clean = drop_collinear(&ring, 1e-12);
        assert_eq!(clean.len(), 4);
        assert_eq!(signed_area(&clean), 2.0);
    }
}
