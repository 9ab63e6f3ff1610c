//! Closed-form free-perimeter bounds inside a rectangle.
//!
//! The rectangle is always held with its short side `x` and long side `y`.
//! Its local frame puts the origin corner at `(0, 0)`, the short side along
//! the first axis and the long side along the second.
//!
//! The minimal free perimeter `l*(a)` of a region of area `a` is piecewise:
//! a quarter-disk arc for small areas, a straight cut of length `x` in the
//! middle range, and an arc around the complement for areas close to the
//! whole rectangle.

use std::fmt;

use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Ambient rectangle with `x <= y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect<T> {
    x: T,
    y: T,
}

impl<T: Scalar> Rect<T> {
    /// Sides may be given in either order; they are sorted so the short side comes first.
    pub fn new(a: T, b: T) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a <= T::zero() || b <= T::zero() {
            return domain(format!(
                "rectangle sides must be finite and positive, got {a} and {b}"
            ));
        }
        let (x, y) = if a <= b { (a, b) } else { (b, a) };
        Ok(Rect { x, y })
    }

    /// Short side `X`.
    #[inline]
    pub fn x(&self) -> T {
        self.x
    }

    /// Long side `Y`.
    #[inline]
    pub fn y(&self) -> T {
        self.y
    }

    #[inline]
    pub fn area(&self) -> T {
        self.x * self.y
    }

    /// `X²/π`: the largest area for which the corner arc beats a straight cut.
    #[inline]
    pub fn arc_limit(&self) -> T {
        self.x * self.x / T::PI()
    }

    /// Largest quarter-arc radius worth using, `2X/π`.
    #[inline]
    pub fn max_arc_radius(&self) -> T {
        T::lit(2.0) * self.x / T::PI()
    }

    pub fn target(&self, a: T) -> Result<TargetArea<T>> {
        TargetArea::new(self, a)
    }
}

/// An area known to lie in `[0, XY]` for the rectangle it was checked against.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct TargetArea<T>(T);

impl<T: Scalar> TargetArea<T> {
    pub fn new(rect: &Rect<T>, a: T) -> Result<Self> {
        if !a.is_finite() || a < T::zero() || a > rect.area() {
            return domain(format!("area {a} outside [0, {}]", rect.area()));
        }
        Ok(TargetArea(a))
    }

    #[inline]
    pub fn get(self) -> T {
        self.0
    }
}

/// Which sides of the rectangle a shape touches with positive length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TouchClass {
    Zero,
    One,
    TwoAdjacent,
    TwoOpposite,
    Three,
    Four,
}

impl TouchClass {
    pub const ALL: [TouchClass; 6] = [
        TouchClass::Zero,
        TouchClass::One,
        TouchClass::TwoAdjacent,
        TouchClass::TwoOpposite,
        TouchClass::Three,
        TouchClass::Four,
    ];

    pub fn from_contacts(c: Contacts) -> Self {
        match c.count() {
            0 => TouchClass::Zero,
            1 => TouchClass::One,
            2 if (c.bottom && c.top) || (c.left && c.right) => TouchClass::TwoOpposite,
            2 => TouchClass::TwoAdjacent,
            3 => TouchClass::Three,
            _ => TouchClass::Four,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TouchClass::Zero => "zero",
            TouchClass::One => "one",
            TouchClass::TwoAdjacent => "two-adjacent",
            TouchClass::TwoOpposite => "two-opposite",
            TouchClass::Three => "three",
            TouchClass::Four => "four",
        }
    }
}

impl fmt::Display for TouchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-side contact flags in the rectangle's local frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Contacts {
    pub bottom: bool,
    pub right: bool,
    pub top: bool,
    pub left: bool,
}

impl Contacts {
    pub fn count(&self) -> usize {
        [self.bottom, self.right, self.top, self.left]
            .iter()
            .filter(|&&b| b)
            .count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    QuarterDisk,
    StraightCut,
    ComplementQuarterDisk,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::QuarterDisk => "quarter-disk",
            Regime::StraightCut => "straight-cut",
            Regime::ComplementQuarterDisk => "complement-quarter-disk",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rectangle corners in the local frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corner {
    /// `(0, 0)`
    Origin,
    /// `(X, 0)`
    ShortEnd,
    /// `(X, Y)`
    Far,
    /// `(0, Y)`
    LongEnd,
}

impl Corner {
    pub fn name(self) -> &'static str {
        match self {
            Corner::Origin => "origin",
            Corner::ShortEnd => "short-end",
            Corner::Far => "far",
            Corner::LongEnd => "long-end",
        }
    }
}

/// Which region a fence is meant to enclose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Enclosure {
    /// The region containing the fence's reference corner.
    CornerSide,
    /// The rest of the rectangle.
    FarSide,
}

/// An optimal separating curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FenceGeometry<T> {
    /// Segment parallel to the short side at `offset` along the long side;
    /// encloses the origin-side slab `[0, X] x [0, offset]`.
    StraightCut { offset: T },
    /// Quarter circle centred on `corner`. `arc_area = (π/4)·radius²` is
    /// the area between arc and corner; `encloses` says whether the target
    /// region is that quarter disk or its complement.
    QuarterArc {
        corner: Corner,
        radius: T,
        arc_area: T,
        encloses: Enclosure,
    },
    /// No fence: the region is empty (`full == false`) or the whole rectangle.
    Empty { full: bool },
}

impl<T: Scalar> FenceGeometry<T> {
    pub fn length(&self, rect: &Rect<T>) -> T {
        match *self {
            FenceGeometry::StraightCut { .. } => rect.x(),
            // Same closed form as the l* branches, so the two agree bit-for-bit.
            FenceGeometry::QuarterArc { arc_area, .. } => (T::PI() * arc_area).sqrt(),
            FenceGeometry::Empty { .. } => T::zero(),
        }
    }

    pub fn enclosed_area(&self, rect: &Rect<T>) -> T {
        match *self {
            FenceGeometry::StraightCut { offset } => rect.x() * offset,
            FenceGeometry::QuarterArc {
                radius, encloses, ..
            } => {
                let disk = T::FRAC_PI_4() * radius * radius;
                match encloses {
                    Enclosure::CornerSide => disk,
                    Enclosure::FarSide => rect.area() - disk,
                }
            }
            FenceGeometry::Empty { full } => {
                if full {
                    rect.area()
                } else {
                    T::zero()
                }
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FenceGeometry::StraightCut { .. } => "straight-cut",
            FenceGeometry::QuarterArc { .. } => "quarter-arc",
            FenceGeometry::Empty { .. } => "empty",
        }
    }
}

/// A split of a total area into `k >= 1` strictly positive parts.
#[derive(Debug, Clone, PartialEq)]
pub struct SubareaPartition<T> {
    parts: Vec<T>,
}

impl<T: Scalar> SubareaPartition<T> {
    pub fn new(parts: Vec<T>) -> Result<Self> {
        if parts.is_empty() {
            return domain("partition needs at least one part");
        }
        if let Some(bad) = parts.iter().find(|p| !(p.is_finite() && **p > T::zero())) {
            return domain(format!("partition parts must be positive, got {bad}"));
        }
        Ok(SubareaPartition { parts })
    }

    pub fn parts(&self) -> &[T] {
        &self.parts
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn total(&self) -> T {
        self.parts.iter().fold(T::zero(), |acc, &p| acc + p)
    }
}

fn check_nonnegative<T: Scalar>(a: T) -> Result<()> {
    if a.is_finite() && a >= T::zero() {
        Ok(())
    } else {
        domain(format!("area must be finite and non-negative, got {a}"))
    }
}

/// Perimeter lower bound for a shape of area `a` in the open plane: `2·√(πa)`.
pub fn iso_lower_plane<T: Scalar>(a: T) -> Result<T> {
    check_nonnegative(a)?;
    Ok(T::lit(2.0) * (T::PI() * a).sqrt())
}

/// Free-perimeter lower bound in a half plane: `√(2πa)`.
pub fn iso_lower_half_plane<T: Scalar>(a: T) -> Result<T> {
    check_nonnegative(a)?;
    Ok((T::TAU() * a).sqrt())
}

/// Free-perimeter lower bound in a quarter plane: `√(πa)`.
pub fn iso_lower_quarter_plane<T: Scalar>(a: T) -> Result<T> {
    check_nonnegative(a)?;
    Ok((T::PI() * a).sqrt())
}

/// Lower bound on the free perimeter of any shape of area `a` touching the
/// rectangle in the pattern described by `tc`.
pub fn case_lower_bound<T: Scalar>(tc: TouchClass, rect: &Rect<T>, a: T) -> Result<T> {
    let a = rect.target(a)?.get();
    let pi = T::PI();
    Ok(match tc {
        TouchClass::Zero => T::lit(2.0) * (pi * a).sqrt(),
        TouchClass::One => (T::TAU() * a).sqrt(),
        TouchClass::TwoAdjacent => (pi * a).sqrt(),
        TouchClass::TwoOpposite => T::lit(2.0) * rect.x(),
        TouchClass::Three => rect.x(),
        TouchClass::Four => (pi * (rect.area() - a)).sqrt(),
    })
}

/// Branch selection. Exactly at either threshold the straight cut is reported.
pub fn regime<T: Scalar>(rect: &Rect<T>, a: T) -> Result<Regime> {
    let a = rect.target(a)?.get();
    let limit = rect.arc_limit();
    Ok(if a < limit {
        Regime::QuarterDisk
    } else if a > rect.area() - limit {
        Regime::ComplementQuarterDisk
    } else {
        Regime::StraightCut
    })
}

/// Minimal free perimeter of a region of area `a`.
pub fn l_star<T: Scalar>(rect: &Rect<T>, a: T) -> Result<T> {
    Ok(match regime(rect, a)? {
        Regime::QuarterDisk => (T::PI() * a).sqrt(),
        Regime::StraightCut => rect.x(),
        Regime::ComplementQuarterDisk => (T::PI() * (rect.area() - a)).sqrt(),
    })
}

/// A fence attaining `l_star(rect, a)`, anchored at the origin corner.
pub fn optimal_fence<T: Scalar>(rect: &Rect<T>, a: T) -> Result<FenceGeometry<T>> {
    let reg = regime(rect, a)?;
    if a == T::zero() {
        return Ok(FenceGeometry::Empty { full: false });
    }
    if a == rect.area() {
        return Ok(FenceGeometry::Empty { full: true });
    }
    let arc = |arc_area: T, encloses| FenceGeometry::QuarterArc {
        corner: Corner::Origin,
        radius: (T::lit(4.0) * arc_area / T::PI()).sqrt(),
        arc_area,
        encloses,
    };
    Ok(match reg {
        Regime::QuarterDisk => arc(a, Enclosure::CornerSide),
        Regime::StraightCut => FenceGeometry::StraightCut {
            offset: a / rect.x(),
        },
        Regime::ComplementQuarterDisk => arc(rect.area() - a, Enclosure::FarSide),
    })
}

/// Maximum of `Σ√Aᵢ` over splits of `a_total` into `k` parts: `√(k·a_total)`,
/// reached when every part equals `a_total / k`.
pub fn max_sum_sqrt<T: Scalar>(k: usize, a_total: T) -> Result<T> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    check_nonnegative(a_total)?;
    let k = T::from(k).ok_or_else(|| crate::FenceError::Domain("k not representable".into()))?;
    Ok((k * a_total).sqrt())
}

/// `Σ√Aᵢ`, which always satisfies `√(ΣAᵢ) <= Σ√Aᵢ <= √(k·ΣAᵢ)`.
pub fn sum_sqrt_lower<T: Scalar>(partition: &SubareaPartition<T>) -> T {
    partition
        .parts()
        .iter()
        .fold(T::zero(), |acc, &p| acc + p.sqrt())
}
