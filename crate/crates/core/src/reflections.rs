//! Mirror-doubling of polygons against a half-plane boundary or the two rays
//! of a quarter plane, plus free-perimeter measurement of polygons inside a
//! rectangle.
//!
//! The union of a polygon and its mirror image is assembled by splicing the
//! two vertex cycles together at every maximal run of edges lying on the
//! mirror line. A polygon that meets the line in several separate runs
//! produces a region with holes.

use crate::error::{domain, FenceError, Result};
use crate::geometry::{drop_collinear, is_simple_ring, ring_perimeter, signed_area, Point};
use crate::isoperimetrics::{Contacts, Rect, TouchClass};
use crate::scalar::Scalar;

/// Simple counter-clockwise polygon with positive area.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Scalar> Polygon<T> {
    pub fn new(vertices: Vec<Point<T>>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(FenceError::Geometry(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(FenceError::Geometry(
                "polygon has non-finite coordinates".into(),
            ));
        }
        if !is_simple_ring(&vertices) {
            return Err(FenceError::Geometry("polygon is not simple".into()));
        }
        if signed_area(&vertices) <= T::zero() {
            return Err(FenceError::Geometry(
                "polygon must be counter-clockwise".into(),
            ));
        }
        Ok(Polygon { vertices })
    }

    /// Builds from vertices in either orientation.
    pub fn from_any_orientation(mut vertices: Vec<Point<T>>) -> Result<Self> {
        if signed_area(&vertices) < T::zero() {
            vertices.reverse();
        }
        Polygon::new(vertices)
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn area(&self) -> T {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> T {
        ring_perimeter(&self.vertices)
    }

    /// Applies an affine map; orientation is restored if the map reflects.
    pub fn map(&self, f: impl Fn(Point<T>) -> Point<T>) -> Result<Self> {
        Polygon::from_any_orientation(self.vertices.iter().map(|&v| f(v)).collect())
    }

    fn edges(&self) -> impl Iterator<Item = (Point<T>, Point<T>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

/// Outer boundary plus holes, all stored counter-clockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Region<T> {
    pub outer: Polygon<T>,
    pub holes: Vec<Polygon<T>>,
}

impl<T: Scalar> Region<T> {
    pub fn area(&self) -> T {
        self.holes
            .iter()
            .fold(self.outer.area(), |acc, h| acc - h.area())
    }

    /// Total boundary length (outer ring and every hole).
    pub fn perimeter(&self) -> T {
        self.holes
            .iter()
            .fold(self.outer.perimeter(), |acc, h| acc + h.perimeter())
    }
}

/// Closed half-plane to the left of `direction` through `origin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane<T> {
    origin: Point<T>,
    direction: Point<T>,
}

impl<T: Scalar> HalfPlane<T> {
    pub fn new(origin: Point<T>, direction: Point<T>) -> Result<Self> {
        let len = direction.norm();
        if !(len.is_finite() && len > T::zero()) || !origin.is_finite() {
            return domain("half-plane needs a finite origin and a non-zero direction");
        }
        Ok(HalfPlane {
            origin,
            direction: direction * (T::one() / len),
        })
    }

    /// Positive inside, zero on the boundary line.
    #[inline]
    pub fn signed_distance(&self, p: Point<T>) -> T {
        self.direction.cross(p - self.origin)
    }

    #[inline]
    pub fn mirror(&self, p: Point<T>) -> Point<T> {
        p - self.direction.perp() * (T::lit(2.0) * self.signed_distance(p))
    }

    /// Summed length of polygon edges lying on the boundary line.
    pub fn contact_length(&self, p: &Polygon<T>) -> T {
        let tol = self.tolerance(p.vertices());
        p.edges()
            .filter(|(a, b)| {
                self.signed_distance(*a).abs() <= tol && self.signed_distance(*b).abs() <= tol
            })
            .fold(T::zero(), |acc, (a, b)| acc + a.distance(b))
    }

    fn tolerance(&self, pts: &[Point<T>]) -> T {
        let scale = pts
            .iter()
            .map(|&v| (v - self.origin).norm().max(v.norm()))
            .fold(T::min_positive_value(), T::max);
        T::contact_rel_tol() * scale
    }
}

/// Closed quarter plane spanned by the unit rays `u` and `u` rotated a
/// quarter turn counter-clockwise, both starting at `apex`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarterPlane<T> {
    apex: Point<T>,
    u: Point<T>,
}

impl<T: Scalar> QuarterPlane<T> {
    pub fn new(apex: Point<T>, u: Point<T>) -> Result<Self> {
        let first = HalfPlane::new(apex, u)?;
        Ok(QuarterPlane {
            apex,
            u: first.direction,
        })
    }

    /// Boundary line along `u`, interior on its left.
    pub fn first_axis(&self) -> HalfPlane<T> {
        HalfPlane {
            origin: self.apex,
            direction: self.u,
        }
    }

    /// Boundary line along the second ray, oriented so the quarter lies on its left.
    pub fn second_axis(&self) -> HalfPlane<T> {
        HalfPlane {
            origin: self.apex,
            direction: -self.u.perp(),
        }
    }

    /// Boundary length of `p` that lies on neither ray.
    pub fn free_length(&self, p: &Polygon<T>) -> T {
        p.perimeter() - self.first_axis().contact_length(p) - self.second_axis().contact_length(p)
    }
}

/// Union of `p` with its mirror image across the boundary of `axis`.
///
/// Doubles the area; the boundary of the result is twice the part of
/// `p`'s boundary that is off the line.
pub fn reflect_half_plane<T: Scalar>(p: &Polygon<T>, axis: &HalfPlane<T>) -> Result<Region<T>> {
    let rings = reflect_rings(std::slice::from_ref(&p.vertices), axis)?;
    assemble(rings)
}

/// Union of `p` with its three images under the quarter plane's two
/// mirror lines. Quadruples the area and the free boundary.
pub fn reflect_quarter_plane<T: Scalar>(p: &Polygon<T>, q: &QuarterPlane<T>) -> Result<Region<T>> {
    let once = reflect_rings(std::slice::from_ref(&p.vertices), &q.first_axis())?;
    let twice = reflect_rings(&once, &q.second_axis())?;
    assemble(twice)
}

fn assemble<T: Scalar>(rings: Vec<Vec<Point<T>>>) -> Result<Region<T>> {
    let mut outer = Vec::new();
    let mut holes = Vec::new();
    for ring in rings {
        let ring = drop_collinear(&ring, T::contact_rel_tol());
        if signed_area(&ring) > T::zero() {
            outer.push(Polygon::new(ring)?);
        } else {
            holes.push(Polygon::from_any_orientation(ring)?);
        }
    }
    if outer.len() != 1 {
        return Err(FenceError::Geometry(format!(
            "reflected union has {} outer boundaries",
            outer.len()
        )));
    }
    Ok(Region {
        outer: outer.pop().expect("one outer ring"),
        holes,
    })
}

/// Splices boundary rings with their mirror images. Input rings keep the
/// region on their left (outer counter-clockwise, holes clockwise); so do
/// the returned rings.
fn reflect_rings<T: Scalar>(
    rings: &[Vec<Point<T>>],
    axis: &HalfPlane<T>,
) -> Result<Vec<Vec<Point<T>>>> {
    let pts: Vec<Point<T>> = rings.iter().flatten().copied().collect();
    let n = pts.len();
    let tol = axis.tolerance(&pts);

    let sd: Vec<T> = pts.iter().map(|&v| axis.signed_distance(v)).collect();
    if let Some(worst) = sd.iter().copied().filter(|&d| d < -tol).reduce(T::min) {
        return domain(format!(
            "shape crosses the mirror line (signed distance {worst})"
        ));
    }
    let on_axis: Vec<bool> = sd.iter().map(|d| d.abs() <= tol).collect();

    // Vertex ids: 0..n are the originals, n..2n their mirror images. A
    // vertex on the line is its own mirror image.
    let mirror_id = |g: usize| if on_axis[g] { g } else { n + g };
    let coords = |id: usize| {
        if id < n {
            pts[id]
        } else {
            axis.mirror(pts[id - n])
        }
    };

    let mut succ: Vec<Option<usize>> = vec![None; 2 * n];
    let mut contact_edges = 0usize;
    let mut link = |from: usize, to: usize| -> Result<()> {
        if succ[from].replace(to).is_some() {
            return Err(FenceError::Unsupported(
                "shape meets the mirror line at an isolated point".into(),
            ));
        }
        Ok(())
    };
    let mut base = 0;
    for ring in rings {
        let m = ring.len();
        for i in 0..m {
            let g = base + i;
            let h = base + (i + 1) % m;
            if on_axis[g] && on_axis[h] {
                contact_edges += 1;
                continue;
            }
            link(g, h)?;
            link(mirror_id(h), mirror_id(g))?;
        }
        base += m;
    }
    if contact_edges == 0 {
        return Err(FenceError::Unsupported(
            "shape does not touch the mirror line along a segment".into(),
        ));
    }

    let mut used = vec![false; 2 * n];
    let mut out = Vec::new();
    for start in 0..2 * n {
        if used[start] || succ[start].is_none() {
            continue;
        }
        let mut ring = Vec::new();
        let mut cur = start;
        loop {
            if used[cur] {
                if cur != start {
                    return Err(FenceError::Geometry(
                        "reflected boundary does not close".into(),
                    ));
                }
                break;
            }
            used[cur] = true;
            ring.push(coords(cur));
            cur = succ[cur]
                .ok_or_else(|| FenceError::Geometry("reflected boundary has a dead end".into()))?;
        }
        out.push(ring);
    }
    Ok(out)
}

fn side_tolerance<T: Scalar>(rect: &Rect<T>) -> T {
    T::contact_rel_tol() * rect.y()
}

/// Per-side contact lengths `[bottom, right, top, left]` of `p` in the
/// rectangle's local frame, after checking containment.
fn side_contacts<T: Scalar>(p: &Polygon<T>, rect: &Rect<T>) -> Result<[T; 4]> {
    let tol = side_tolerance(rect);
    let (x, y) = (rect.x(), rect.y());
    if let Some(v) = p
        .vertices()
        .iter()
        .find(|v| v.x < -tol || v.x > x + tol || v.y < -tol || v.y > y + tol)
    {
        return domain(format!(
            "polygon vertex ({}, {}) lies outside the rectangle",
            v.x, v.y
        ));
    }
    // Signed offset of a point from each side's line.
    let offsets = |v: Point<T>| [v.y, x - v.x, y - v.y, v.x];
    let mut contact = [T::zero(); 4];
    for (a, b) in p.edges() {
        let (oa, ob) = (offsets(a), offsets(b));
        if let Some(side) = (0..4).find(|&s| oa[s].abs() <= tol && ob[s].abs() <= tol) {
            contact[side] = contact[side] + a.distance(b);
        }
    }
    Ok(contact)
}

/// Boundary length of `p` not lying on the rectangle's border.
pub fn free_perimeter_polygon<T: Scalar>(p: &Polygon<T>, rect: &Rect<T>) -> Result<T> {
    let contact = side_contacts(p, rect)?;
    Ok(contact.iter().fold(p.perimeter(), |acc, &c| acc - c))
}

/// Sides carrying positive contact length; single-vertex touches do not count.
pub fn touch_class_polygon<T: Scalar>(p: &Polygon<T>, rect: &Rect<T>) -> Result<TouchClass> {
    let contact = side_contacts(p, rect)?;
    let tol = side_tolerance(rect);
    Ok(TouchClass::from_contacts(Contacts {
        bottom: contact[0] > tol,
        right: contact[1] > tol,
        top: contact[2] > tol,
        left: contact[3] > tol,
    }))
}
