//! Exact rational 2D primitives.
//!
//! Every object is stored in a canonical form so that derived equality is
//! semantic equality: segments keep their lexicographically smaller endpoint
//! first, rays and lines carry a canonical [`Orientation`], and a line is
//! anchored at the foot of the perpendicular from the origin.
//!
//! Positions along a supporting line are measured by the scaled parameter
//! `t(p) = p · d`, where `d` is the canonical orientation vector. Because the
//! canonical anchor is orthogonal to `d`, this parameter is the same for every
//! object sharing the supporting line.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("direction vector is (0, 0)")]
    ZeroDirection,
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("expected exactly 2 orientation classes, found {0}")]
    OrientationCount(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(rat(x), rat(y))
    }

    fn add_scaled(&self, s: &Rational, dx: &Rational, dy: &Rational) -> Point {
        Point::new(&self.x + s * dx, &self.y + s * dy)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `a.x * b.y - a.y * b.x` for direction `a` and position `b`.
fn cross(ax: &Rational, ay: &Rational, bx: &Rational, by: &Rational) -> Rational {
    ax * by - ay * bx
}

/// A direction class. Two parallel direction vectors canonicalize to the same
/// value: integer components, coprime, first nonzero component positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    dx: Rational,
    dy: Rational,
}

impl Orientation {
    pub fn new(dx: Rational, dy: Rational) -> Result<Self, GeomError> {
        Ok(Self::canonical(&dx, &dy)?.0)
    }

    pub fn horizontal() -> Self {
        Orientation { dx: rat(1), dy: rat(0) }
    }

    pub fn vertical() -> Self {
        Orientation { dx: rat(0), dy: rat(1) }
    }

    /// Canonical orientation and whether `(dx, dy)` points along it.
    fn canonical(dx: &Rational, dy: &Rational) -> Result<(Self, bool), GeomError> {
        if dx.is_zero() && dy.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        let l = dx.denom().lcm(dy.denom());
        let mut nx = dx.numer() * (&l / dx.denom());
        let mut ny = dy.numer() * (&l / dy.denom());
        let g = nx.gcd(&ny);
        nx /= &g;
        ny /= &g;
        let forward = if nx.is_zero() { ny.is_positive() } else { nx.is_positive() };
        if !forward {
            nx = -nx;
            ny = -ny;
        }
        let o = Orientation { dx: Rational::from_integer(nx), dy: Rational::from_integer(ny) };
        Ok((o, forward))
    }

    pub fn dx(&self) -> &Rational {
        &self.dx
    }

    pub fn dy(&self) -> &Rational {
        &self.dy
    }

    pub fn is_horizontal(&self) -> bool {
        self.dy.is_zero()
    }

    pub fn is_vertical(&self) -> bool {
        self.dx.is_zero()
    }

    /// Position of `p` along any line of this orientation.
    pub fn param(&self, p: &Point) -> Rational {
        &p.x * &self.dx + &p.y * &self.dy
    }

    /// Offset identifying the supporting line of this orientation through `p`.
    pub fn offset(&self, p: &Point) -> Rational {
        cross(&self.dx, &self.dy, &p.x, &p.y)
    }

    fn norm2(&self) -> Rational {
        &self.dx * &self.dx + &self.dy * &self.dy
    }

    /// The point with the given offset and parameter.
    pub fn point_at(&self, offset: &Rational, t: &Rational) -> Point {
        let n2 = self.norm2();
        let base = Point::new(-(offset * &self.dy) / &n2, (offset * &self.dx) / &n2);
        base.add_scaled(&(t / &n2), &self.dx, &self.dy)
    }

    /// Angular order on (-pi/2, pi/2]: by slope, vertical last.
    pub fn angle_cmp(&self, other: &Orientation) -> Ordering {
        match (self.dx.is_zero(), other.dx.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.dy * &other.dx).cmp(&(&other.dy * &self.dx)),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.dx, self.dy)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectKind {
    Segment,
    Ray,
    Line,
}

/// A closed segment, ray, or line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeomObject {
    Segment { a: Point, b: Point, dir: Orientation },
    /// `forward` is true when the ray extends along `dir`, false when against it.
    Ray { apex: Point, dir: Orientation, forward: bool },
    Line { anchor: Point, dir: Orientation },
}

impl GeomObject {
    pub fn segment(a: Point, b: Point) -> Result<Self, GeomError> {
        if a == b {
            return Err(GeomError::DegenerateSegment);
        }
        let dir = Orientation::new(&b.x - &a.x, &b.y - &a.y)?;
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Ok(GeomObject::Segment { a, b, dir })
    }

    pub fn ray(apex: Point, dx: Rational, dy: Rational) -> Result<Self, GeomError> {
        let (dir, forward) = Orientation::canonical(&dx, &dy)?;
        Ok(GeomObject::Ray { apex, dir, forward })
    }

    pub fn line(through: Point, dx: Rational, dy: Rational) -> Result<Self, GeomError> {
        let dir = Orientation::new(dx, dy)?;
        Ok(Self::line_with(&dir, &dir.offset(&through)))
    }

    fn line_with(dir: &Orientation, offset: &Rational) -> Self {
        GeomObject::Line { anchor: dir.point_at(offset, &Rational::zero()), dir: dir.clone() }
    }

    pub fn kind(&self) -> ObjectKind {
        match self {
            GeomObject::Segment { .. } => ObjectKind::Segment,
            GeomObject::Ray { .. } => ObjectKind::Ray,
            GeomObject::Line { .. } => ObjectKind::Line,
        }
    }

    pub fn orientation(&self) -> &Orientation {
        match self {
            GeomObject::Segment { dir, .. } | GeomObject::Ray { dir, .. } | GeomObject::Line { dir, .. } => dir,
        }
    }

    /// First endpoint of a segment, apex of a ray, canonical anchor of a line.
    pub fn anchor(&self) -> &Point {
        match self {
            GeomObject::Segment { a, .. } => a,
            GeomObject::Ray { apex, .. } => apex,
            GeomObject::Line { anchor, .. } => anchor,
        }
    }

    /// Direction vector: the second endpoint minus the first for a segment,
    /// the pointing direction for a ray, the canonical orientation for a line.
    pub fn direction_vector(&self) -> (Rational, Rational) {
        match self {
            GeomObject::Segment { a, b, .. } => (&b.x - &a.x, &b.y - &a.y),
            GeomObject::Ray { dir, forward, .. } => {
                if *forward {
                    (dir.dx.clone(), dir.dy.clone())
                } else {
                    (-dir.dx.clone(), -dir.dy.clone())
                }
            }
            GeomObject::Line { dir, .. } => (dir.dx.clone(), dir.dy.clone()),
        }
    }

    /// Offset of the supporting line.
    pub fn offset(&self) -> Rational {
        self.orientation().offset(self.anchor())
    }

    /// Closed parameter interval along the supporting line; `None` is unbounded.
    pub fn extent(&self) -> (Option<Rational>, Option<Rational>) {
        match self {
            GeomObject::Segment { a, b, dir } => {
                let (ta, tb) = (dir.param(a), dir.param(b));
                if ta <= tb {
                    (Some(ta), Some(tb))
                } else {
                    (Some(tb), Some(ta))
                }
            }
            GeomObject::Ray { apex, dir, forward } => {
                let t = dir.param(apex);
                if *forward {
                    (Some(t), None)
                } else {
                    (None, Some(t))
                }
            }
            GeomObject::Line { .. } => (None, None),
        }
    }

    /// Finite points of the object: segment endpoints or the ray apex.
    pub fn endpoints(&self) -> Vec<Point> {
        match self {
            GeomObject::Segment { a, b, .. } => vec![a.clone(), b.clone()],
            GeomObject::Ray { apex, .. } => vec![apex.clone()],
            GeomObject::Line { .. } => Vec::new(),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        let dir = self.orientation();
        if dir.offset(p) != self.offset() {
            return false;
        }
        let t = dir.param(p);
        let (lo, hi) = self.extent();
        lo.is_none_or(|lo| lo <= t) && hi.is_none_or(|hi| t <= hi)
    }

    /// Reconstructs an object from a supporting line and a parameter interval.
    fn from_extent(dir: &Orientation, offset: &Rational, lo: Option<Rational>, hi: Option<Rational>) -> Self {
        match (lo, hi) {
            (Some(lo), Some(hi)) => {
                GeomObject::segment(dir.point_at(offset, &lo), dir.point_at(offset, &hi))
                    .expect("non-degenerate interval")
            }
            (Some(lo), None) => GeomObject::Ray { apex: dir.point_at(offset, &lo), dir: dir.clone(), forward: true },
            (None, Some(hi)) => GeomObject::Ray { apex: dir.point_at(offset, &hi), dir: dir.clone(), forward: false },
            (None, None) => GeomObject::line_with(dir, offset),
        }
    }
}

impl fmt::Display for GeomObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomObject::Segment { a, b, .. } => write!(f, "seg {a}-{b}"),
            GeomObject::Ray { apex, .. } => {
                let (dx, dy) = self.direction_vector();
                write!(f, "ray {apex} -> <{dx}, {dy}>")
            }
            GeomObject::Line { anchor, dir } => write!(f, "line {anchor} {dir}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntersectionResult {
    Empty,
    SinglePoint(Point),
    Overlap(GeomObject),
}

fn max_lo(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    }
}

fn min_hi(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// Crossing point of the supporting lines of two non-parallel objects.
pub fn line_crossing(a: &GeomObject, b: &GeomObject) -> Option<Point> {
    let (d1, d2) = (a.orientation(), b.orientation());
    let det = cross(&d1.dx, &d1.dy, &d2.dx, &d2.dy);
    if det.is_zero() {
        return None;
    }
    let (c1, c2) = (a.offset(), b.offset());
    let x = (&c1 * &d2.dx - &d1.dx * &c2) / &det;
    let y = (&d2.dy * &c1 - &d1.dy * &c2) / &det;
    Some(Point::new(x, y))
}

pub fn intersect(a: &GeomObject, b: &GeomObject) -> IntersectionResult {
    if a.orientation() != b.orientation() {
        return match line_crossing(a, b) {
            Some(p) if a.contains(&p) && b.contains(&p) => IntersectionResult::SinglePoint(p),
            _ => IntersectionResult::Empty,
        };
    }
    let offset = a.offset();
    if offset != b.offset() {
        return IntersectionResult::Empty;
    }
    let (alo, ahi) = a.extent();
    let (blo, bhi) = b.extent();
    let lo = max_lo(alo, blo);
    let hi = min_hi(ahi, bhi);
    let dir = a.orientation();
    match (&lo, &hi) {
        (Some(l), Some(h)) if l > h => IntersectionResult::Empty,
        (Some(l), Some(h)) if l == h => IntersectionResult::SinglePoint(dir.point_at(&offset, l)),
        _ => IntersectionResult::Overlap(GeomObject::from_extent(dir, &offset, lo, hi)),
    }
}

pub fn contains(obj: &GeomObject, p: &Point) -> bool {
    obj.contains(p)
}

/// Invertible linear map sending two orientation classes to the axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineTransform {
    m: [[Rational; 2]; 2],
    inv: [[Rational; 2]; 2],
}

impl AffineTransform {
    pub fn identity() -> Self {
        let (z, o) = (Rational::zero(), Rational::one());
        AffineTransform { m: [[o.clone(), z.clone()], [z.clone(), o.clone()]], inv: [[o.clone(), z.clone()], [z, o]] }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    fn mul(m: &[[Rational; 2]; 2], x: &Rational, y: &Rational) -> (Rational, Rational) {
        (&m[0][0] * x + &m[0][1] * y, &m[1][0] * x + &m[1][1] * y)
    }

    pub fn apply(&self, p: &Point) -> Point {
        let (x, y) = Self::mul(&self.m, &p.x, &p.y);
        Point::new(x, y)
    }

    pub fn invert(&self, p: &Point) -> Point {
        let (x, y) = Self::mul(&self.inv, &p.x, &p.y);
        Point::new(x, y)
    }

    pub fn apply_object(&self, obj: &GeomObject) -> GeomObject {
        let anchor = self.apply(obj.anchor());
        let (dx, dy) = obj.direction_vector();
        let (tx, ty) = Self::mul(&self.m, &dx, &dy);
        let mapped = match obj {
            GeomObject::Segment { .. } => GeomObject::segment(anchor.clone(), Point::new(&anchor.x + tx, &anchor.y + ty)),
            GeomObject::Ray { .. } => GeomObject::ray(anchor, tx, ty),
            GeomObject::Line { .. } => GeomObject::line(anchor, tx, ty),
        };
        mapped.expect("invertible map preserves non-degeneracy")
    }
}

/// Maps a two-orientation input onto horizontal and vertical objects. The
/// orientation with the smaller angle in (-pi/2, pi/2] becomes horizontal.
pub fn affine_normalize(objects: &[GeomObject]) -> Result<(Vec<GeomObject>, AffineTransform), GeomError> {
    let mut classes: Vec<Orientation> = Vec::new();
    for o in objects {
        if !classes.contains(o.orientation()) {
            classes.push(o.orientation().clone());
        }
    }
    if classes.len() != 2 {
        return Err(GeomError::OrientationCount(classes.len()));
    }
    classes.sort_by(|a, b| a.angle_cmp(b));
    let (u, v) = (&classes[0], &classes[1]);
    // columns u, v form the inverse; the forward map is its inverse
    let det = &u.dx * &v.dy - &v.dx * &u.dy;
    let inv = [[u.dx.clone(), v.dx.clone()], [u.dy.clone(), v.dy.clone()]];
    let m = [[&v.dy / &det, -(&v.dx / &det)], [-(&u.dy / &det), &u.dx / &det]];
    let t = AffineTransform { m, inv };
    Ok((objects.iter().map(|o| t.apply_object(o)).collect(), t))
}
