//! Instances: lists of object unions to hit, plus the finite candidate set
//! that every solver and the oracle search over.

pub mod format;
pub mod generate;
pub mod reduction;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::geom::{intersect, GeomObject, IntersectionResult, Point, Rational};

pub use format::{parse_instance, serialize_instance, ParseError};
pub use generate::{gen_random, Family, GenError, GenParams};
pub use reduction::{gen_3sat_reduction, CnfFormula, Literal, ReductionInfo};

/// One set of the hitting-set instance: a point hits the union when it lies
/// on at least one member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectUnion {
    pub members: Vec<GeomObject>,
}

impl ObjectUnion {
    pub fn single(obj: GeomObject) -> Self {
        ObjectUnion { members: vec![obj] }
    }

    pub fn pair(a: GeomObject, b: GeomObject) -> Self {
        ObjectUnion { members: vec![a, b] }
    }

    pub fn is_hit_by(&self, p: &Point) -> bool {
        self.members.iter().any(|m| m.contains(p))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Metadata {
    pub name: String,
    pub generator: String,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Instance {
    pub unions: Vec<ObjectUnion>,
    pub meta: Metadata,
}

impl Instance {
    pub fn new(unions: Vec<ObjectUnion>) -> Self {
        Instance { unions, meta: Metadata::default() }
    }

    /// An instance of plain objects, one union each.
    pub fn from_objects(objects: impl IntoIterator<Item = GeomObject>) -> Self {
        Instance::new(objects.into_iter().map(ObjectUnion::single).collect())
    }

    pub fn with_meta(mut self, name: &str, generator: &str, seed: Option<u64>) -> Self {
        self.meta = Metadata { name: name.to_string(), generator: generator.to_string(), seed };
        self
    }

    pub fn len(&self) -> usize {
        self.unions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unions.is_empty()
    }

    /// True when every union has exactly one member.
    pub fn is_plain(&self) -> bool {
        self.unions.iter().all(|u| u.members.len() == 1)
    }

    /// The member objects of a plain instance, in union order.
    pub fn plain_objects(&self) -> Option<Vec<GeomObject>> {
        self.is_plain().then(|| self.unions.iter().map(|u| u.members[0].clone()).collect())
    }

    pub fn members(&self) -> impl Iterator<Item = &GeomObject> {
        self.unions.iter().flat_map(|u| u.members.iter())
    }

    pub fn max_union_size(&self) -> usize {
        self.unions.iter().map(|u| u.members.len()).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Endpoint,
    Crossing,
    Private,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CandidateSet {
    pub points: Vec<Point>,
    pub provenance: Vec<Provenance>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Endpoints, apexes and pairwise crossings of all member objects, plus a
/// private point for every union that no other union meets and for every
/// member (in practice a line) that would otherwise carry no candidate.
///
/// Points are returned in lexicographic order; a point that is both an
/// endpoint and a crossing is tagged as an endpoint.
pub fn candidate_points(inst: &Instance) -> CandidateSet {
    let members: Vec<(usize, &GeomObject)> =
        inst.unions.iter().enumerate().flat_map(|(i, u)| u.members.iter().map(move |m| (i, m))).collect();
    let mut found: BTreeMap<Point, Provenance> = BTreeMap::new();
    for (_, m) in &members {
        for p in m.endpoints() {
            found.insert(p, Provenance::Endpoint);
        }
    }
    let mut met = vec![false; inst.unions.len()];
    for (i, (ui, a)) in members.iter().enumerate() {
        for (uj, b) in &members[i + 1..] {
            let r = intersect(a, b);
            if ui != uj && r != IntersectionResult::Empty {
                met[*ui] = true;
                met[*uj] = true;
            }
            if let IntersectionResult::SinglePoint(p) = r {
                found.entry(p).or_insert(Provenance::Crossing);
            }
        }
    }

    let (bx, by) = bbox_max(found.keys(), members.iter().map(|(_, m)| m));
    let mut private = Vec::new();
    for (ui, u) in inst.unions.iter().enumerate() {
        for (k, m) in u.members.iter().enumerate() {
            let bare = !found.keys().any(|p| m.contains(p)) && !private.iter().any(|p| m.contains(p));
            if bare || (k == 0 && !met[ui]) {
                private.push(private_point(m, &bx, &by));
            }
        }
    }
    for p in private {
        found.entry(p).or_insert(Provenance::Private);
    }
    let (points, provenance) = found.into_iter().unzip();
    CandidateSet { points, provenance }
}

fn bbox_max<'a>(
    points: impl Iterator<Item = &'a Point>,
    objects: impl Iterator<Item = &'a &'a GeomObject>,
) -> (Rational, Rational) {
    let mut bx = Rational::zero();
    let mut by = Rational::zero();
    let anchors = objects.map(|o| o.anchor());
    for p in points.chain(anchors) {
        if p.x > bx {
            bx = p.x.clone();
        }
        if p.y > by {
            by = p.y.clone();
        }
    }
    (bx + Rational::one(), by + Rational::one())
}

/// Midpoint of a segment, apex of a ray; a line gets the point whose x (or
/// y, for a vertical line) is one unit beyond everything else.
pub fn private_point(obj: &GeomObject, beyond_x: &Rational, beyond_y: &Rational) -> Point {
    match obj {
        GeomObject::Segment { a, b, .. } => {
            let two = Rational::from_integer(2.into());
            Point::new((&a.x + &b.x) / &two, (&a.y + &b.y) / two)
        }
        GeomObject::Ray { apex, .. } => apex.clone(),
        GeomObject::Line { anchor, dir } => {
            if dir.is_vertical() {
                Point::new(anchor.x.clone(), beyond_y.clone())
            } else {
                let t = (beyond_x - &anchor.x) / dir.dx();
                Point::new(beyond_x.clone(), &anchor.y + t * dir.dy())
            }
        }
    }
}

/// Private points for a whole list of objects at once, each one unit beyond
/// the bounding box of `context` along its own axis. Used by solvers that
/// need points hitting one object and nothing else.
pub fn private_points_beyond(objects: &[GeomObject], context: &[GeomObject]) -> Vec<Point> {
    let pts: Vec<Point> = context.iter().flat_map(|o| o.endpoints()).collect();
    let refs: Vec<&GeomObject> = context.iter().chain(objects.iter()).collect();
    let (bx, by) = bbox_max(pts.iter(), refs.iter());
    objects.iter().map(|o| private_point(o, &bx, &by)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;

    fn seg(x1: i64, y1: i64, x2: i64, y2: i64) -> GeomObject {
        GeomObject::segment(Point::from_ints(x1, y1), Point::from_ints(x2, y2)).unwrap()
    }

    #[test]
    fn two_crossing_segments_give_five_candidates() {
        let inst = Instance::from_objects([seg(0, 0, 2, 0), seg(1, -1, 1, 1)]);
        let c = candidate_points(&inst);
        assert_eq!(c.len(), 5);
        assert_eq!(c.provenance.iter().filter(|p| **p == Provenance::Crossing).count(), 1);
    }

    #[test]
    fn lone_line_gets_private_point() {
        let line = GeomObject::line(Point::from_ints(0, 5), rat(1), rat(0)).unwrap();
        let inst = Instance::from_objects([seg(0, 0, 2, 0), line.clone()]);
        let c = candidate_points(&inst);
        let on_line: Vec<_> = c.points.iter().filter(|p| line.contains(p)).collect();
        assert_eq!(on_line.len(), 1);
        assert!(!inst.unions[0].is_hit_by(on_line[0]));
    }

    #[test]
    fn identical_lines_still_get_a_candidate() {
        let l = GeomObject::line(Point::from_ints(3, 0), rat(0), rat(1)).unwrap();
        let inst = Instance::from_objects([l.clone(), l.clone()]);
        let c = candidate_points(&inst);
        assert_eq!(c.len(), 1);
        assert!(l.contains(&c.points[0]));
    }

    #[test]
    fn every_union_has_a_candidate() {
        let inst = Instance::from_objects([
            seg(0, 0, 4, 0),
            GeomObject::ray(Point::from_ints(9, 9), rat(-1), rat(0)).unwrap(),
            GeomObject::line(Point::from_ints(2, 0), rat(1), rat(1)).unwrap(),
        ]);
        let c = candidate_points(&inst);
        for u in &inst.unions {
            assert!(c.points.iter().any(|p| u.is_hit_by(p)));
        }
    }
}
