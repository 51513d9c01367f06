//! Arrangement graphs of non-overlapping segments and the clipping process
//! that 3-approximates a hitting set when the arrangement has no triangle.
//!
//! The peel repeatedly removes a vertex of degree at most 3. Segments ending
//! there shrink to their next vertex; a segment passing through it keeps its
//! two edges joined. A segment shrunk to a single vertex `u` puts a hit
//! point at `u`, and every segment through `u` is dropped.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::geom::{intersect, GeomObject, IntersectionResult, Point, Rational};
use crate::solution::HittingSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrifreeError {
    #[error("object {0} is not a segment")]
    NotASegment(usize),
    #[error("segments {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error("arrangement contains a triangle")]
    NotTriangleFree,
    #[error("no vertex of degree at most 3 among {0} remaining vertices")]
    NoLowDegreeVertex(usize),
    #[error("peel invariant `{0}` violated: {1}")]
    Invariant(&'static str, String),
}

/// A vertex lies on segment `seg` at position `pos` along its path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incidence {
    pub seg: usize,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangementGraph {
    pub segments: Vec<GeomObject>,
    pub vertices: Vec<Point>,
    /// `(u, v, segment)` for consecutive vertices along a segment.
    pub edges: Vec<(usize, usize, usize)>,
    /// Vertex ids along each segment, ordered by parameter.
    pub paths: Vec<Vec<usize>>,
    pub incidences: Vec<Vec<Incidence>>,
}

fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("coordinate fits in i64")
}

struct BBox {
    lo: Point,
    hi: Point,
}

fn bbox(s: &GeomObject) -> BBox {
    let GeomObject::Segment { a, b, .. } = s else { unreachable!() };
    BBox {
        lo: Point::new(a.x.clone().min(b.x.clone()), a.y.clone().min(b.y.clone())),
        hi: Point::new(a.x.clone().max(b.x.clone()), a.y.clone().max(b.y.clone())),
    }
}

impl ArrangementGraph {
    /// Builds the arrangement. Candidate pairs come from a uniform grid
    /// whose cell size is the mean bounding-box extent.
    pub fn build(segments: &[GeomObject]) -> Result<Self, TrifreeError> {
        for (i, s) in segments.iter().enumerate() {
            if !matches!(s, GeomObject::Segment { .. }) {
                return Err(TrifreeError::NotASegment(i));
            }
        }
        let boxes: Vec<BBox> = segments.iter().map(bbox).collect();
        let mut total = Rational::from_integer(BigInt::from(0));
        for b in &boxes {
            total += (&b.hi.x - &b.lo.x).max(&b.hi.y - &b.lo.y);
        }
        let cell = if boxes.is_empty() {
            Rational::one()
        } else {
            (total / Rational::from_integer(BigInt::from(boxes.len()))).ceil().max(Rational::one())
        };
        let cell_of = |p: &Point| (floor_i64(&(&p.x / &cell)), floor_i64(&(&p.y / &cell)));
        let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, b) in boxes.iter().enumerate() {
            let (x0, y0) = cell_of(&b.lo);
            let (x1, y1) = cell_of(&b.hi);
            for cx in x0..=x1 {
                for cy in y0..=y1 {
                    grid.entry((cx, cy)).or_default().push(i);
                }
            }
        }

        let mut on_segment: Vec<Vec<Point>> = segments.iter().map(|s| s.endpoints()).collect();
        let mut cells: Vec<_> = grid.into_iter().collect();
        cells.sort_unstable_by_key(|(k, _)| *k);
        for (key, members) in &cells {
            for (k, &i) in members.iter().enumerate() {
                for &j in &members[k + 1..] {
                    let (a, b) = (&boxes[i], &boxes[j]);
                    if a.hi.x < b.lo.x || b.hi.x < a.lo.x || a.hi.y < b.lo.y || b.hi.y < a.lo.y {
                        continue;
                    }
                    // Test each pair once: in the cell holding the lower-left
                    // corner of the box intersection.
                    let corner = Point::new(a.lo.x.clone().max(b.lo.x.clone()), a.lo.y.clone().max(b.lo.y.clone()));
                    if cell_of(&corner) != *key {
                        continue;
                    }
                    match intersect(&segments[i], &segments[j]) {
                        IntersectionResult::Empty => {}
                        IntersectionResult::SinglePoint(p) => {
                            on_segment[i].push(p.clone());
                            on_segment[j].push(p);
                        }
                        IntersectionResult::Overlap(_) => return Err(TrifreeError::Overlap(i.min(j), i.max(j))),
                    }
                }
            }
        }

        let mut ids: HashMap<Point, usize> = HashMap::new();
        let mut vertices = Vec::new();
        let mut paths = Vec::with_capacity(segments.len());
        let mut edges = Vec::new();
        let mut incidences: Vec<Vec<Incidence>> = Vec::new();
        for (s, pts) in on_segment.iter_mut().enumerate() {
            let dir = segments[s].orientation();
            pts.sort_by_cached_key(|p| dir.param(p));
            pts.dedup();
            let mut path = Vec::with_capacity(pts.len());
            for p in pts.drain(..) {
                let id = *ids.entry(p.clone()).or_insert_with(|| {
                    vertices.push(p);
                    incidences.push(Vec::new());
                    vertices.len() - 1
                });
                incidences[id].push(Incidence { seg: s, pos: path.len() });
                path.push(id);
            }
            for w in path.windows(2) {
                edges.push((w[0], w[1], s));
            }
            paths.push(path);
        }
        Ok(ArrangementGraph { segments: segments.to_vec(), vertices, edges, paths, incidences })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidences[v]
            .iter()
            .map(|inc| usize::from(inc.pos > 0) + usize::from(inc.pos + 1 < self.paths[inc.seg].len()))
            .sum()
    }

    pub fn is_triangle_free(&self) -> bool {
        !has_triangle(self.vertices.len(), self.edges.iter().map(|&(u, v, _)| (u, v)))
    }
}

/// Triangle detection by orienting edges from lower to higher (degree, id).
pub fn has_triangle(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (u, v) in edges {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let rank = |v: usize| (adj[v].len(), v);
    let out: Vec<Vec<usize>> =
        (0..n).map(|u| adj[u].iter().copied().filter(|&v| rank(u) < rank(v)).collect()).collect();
    let mut mark = vec![usize::MAX; n];
    for u in 0..n {
        for &v in &out[u] {
            mark[v] = u;
        }
        for &v in &out[u] {
            if out[v].iter().any(|&w| mark[w] == u) {
                return true;
            }
        }
    }
    false
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PeelOptions {
    /// Check connectivity, coverage, containment and triangle-freeness
    /// after every vertex removal.
    pub check_invariants: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelReport {
    pub set: HittingSet,
    /// Structural operations: vertex removals, edge deletions and merges,
    /// and per-vertex work when a segment is dropped.
    pub operations: u64,
    pub edges: usize,
}

/// Residual state of one segment: its live positions form a doubly linked
/// list between `lo` and `hi`.
struct Portion {
    alive: bool,
    lo: usize,
    hi: usize,
    next: Vec<usize>,
    prev: Vec<usize>,
}

struct Peel<'g> {
    g: &'g ArrangementGraph,
    parts: Vec<Portion>,
    deg: Vec<usize>,
    live: Vec<bool>,
    queue: BTreeSet<(usize, usize)>,
    ops: u64,
    hits: Vec<Point>,
}

impl<'g> Peel<'g> {
    fn new(g: &'g ArrangementGraph) -> Self {
        let parts = g
            .paths
            .iter()
            .map(|p| Portion {
                alive: true,
                lo: 0,
                hi: p.len() - 1,
                next: (1..=p.len()).collect(),
                prev: (0..p.len()).map(|i| i.wrapping_sub(1)).collect(),
            })
            .collect();
        let deg: Vec<usize> = (0..g.vertices.len()).map(|v| g.degree(v)).collect();
        let queue = deg.iter().enumerate().filter(|(_, &d)| d > 0).map(|(v, &d)| (d, v)).collect();
        Peel { g, parts, deg, live: vec![true; g.vertices.len()], queue, ops: 0, hits: Vec::new() }
    }

    fn set_degree(&mut self, v: usize, d: usize) {
        self.queue.remove(&(self.deg[v], v));
        self.deg[v] = d;
        if d > 0 && self.live[v] {
            self.queue.insert((d, v));
        }
    }

    fn drop_degree(&mut self, v: usize, by: usize) {
        let d = self.deg[v] - by;
        self.set_degree(v, d);
    }

    fn remove_vertex(&mut self, v: usize) {
        let g = self.g;
        self.ops += 1;
        self.set_degree(v, 0);
        self.live[v] = false;
        let mut shrunk = Vec::new();
        for inc in &g.incidences[v] {
            let path = &g.paths[inc.seg];
            let part = &mut self.parts[inc.seg];
            if !part.alive || inc.pos < part.lo || inc.pos > part.hi {
                continue;
            }
            self.ops += 1;
            let end = if inc.pos == part.lo {
                part.lo = part.next[inc.pos];
                Some(part.lo)
            } else if inc.pos == part.hi {
                part.hi = part.prev[inc.pos];
                Some(part.hi)
            } else {
                let (p, n) = (part.prev[inc.pos], part.next[inc.pos]);
                part.next[p] = n;
                part.prev[n] = p;
                None
            };
            if let Some(at) = end {
                if part.lo == part.hi {
                    shrunk.push((inc.seg, path[at]));
                }
                self.drop_degree(path[at], 1);
            }
        }
        for (s, u) in shrunk {
            if self.parts[s].alive {
                self.hit(u);
            }
        }
    }

    /// Places a hit point at `u` and drops every segment passing through it.
    fn hit(&mut self, u: usize) {
        let g = self.g;
        self.hits.push(g.vertices[u].clone());
        for inc in &g.incidences[u] {
            let part = &self.parts[inc.seg];
            if !part.alive || inc.pos < part.lo || inc.pos > part.hi {
                continue;
            }
            let path = &g.paths[inc.seg];
            let mut at = part.lo;
            let mut drops = Vec::new();
            loop {
                let edges = usize::from(at != part.lo) + usize::from(at != part.hi);
                drops.push((path[at], edges));
                if at == part.hi {
                    break;
                }
                at = part.next[at];
            }
            self.parts[inc.seg].alive = false;
            for (w, e) in drops {
                self.ops += 1;
                self.drop_degree(w, e);
            }
        }
    }

    fn residual_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (s, part) in self.parts.iter().enumerate() {
            if !part.alive {
                continue;
            }
            let mut at = part.lo;
            while at != part.hi {
                let n = part.next[at];
                out.push((self.g.paths[s][at], self.g.paths[s][n]));
                at = n;
            }
        }
        out
    }

    fn check(&self) -> Result<(), TrifreeError> {
        let g = self.g;
        for (s, part) in self.parts.iter().enumerate() {
            if part.alive {
                if part.lo > part.hi || !self.live[g.paths[s][part.lo]] || !self.live[g.paths[s][part.hi]] {
                    return Err(TrifreeError::Invariant("connected", format!("segment {s} has a broken portion")));
                }
                let mut at = part.lo;
                while at != part.hi {
                    at = part.next[at];
                    if at > part.hi {
                        return Err(TrifreeError::Invariant("connected", format!("segment {s} is disconnected")));
                    }
                }
            } else if !self.hits.iter().any(|p| g.segments[s].contains(p)) {
                return Err(TrifreeError::Invariant("covered", format!("removed segment {s} is not hit")));
            }
        }
        // A residual portion lies inside its original segment, so any set
        // hitting the portions hits the originals too.
        for (s, part) in self.parts.iter().enumerate() {
            if part.alive {
                let (a, b) = (&g.vertices[g.paths[s][part.lo]], &g.vertices[g.paths[s][part.hi]]);
                if !g.segments[s].contains(a) || !g.segments[s].contains(b) {
                    return Err(TrifreeError::Invariant("contained", format!("portion of segment {s} escapes it")));
                }
            }
        }
        let edges = self.residual_edges();
        for &(u, v) in &edges {
            if !self.live[u] || !self.live[v] {
                return Err(TrifreeError::Invariant("connected", "edge at a removed vertex".into()));
            }
        }
        if has_triangle(g.vertices.len(), edges.into_iter()) {
            return Err(TrifreeError::Invariant("triangle-free", "residual graph has a triangle".into()));
        }
        Ok(())
    }
}

/// Runs the clipping process on a triangle-free arrangement.
pub fn peel(g: &ArrangementGraph, opts: PeelOptions) -> Result<PeelReport, TrifreeError> {
    if !g.is_triangle_free() {
        return Err(TrifreeError::NotTriangleFree);
    }
    let mut st = Peel::new(g);
    // A segment whose whole path is one vertex cannot occur: segments are
    // non-degenerate, so every path has two vertices.
    while let Some(&(d, v)) = st.queue.iter().next() {
        if d > 3 {
            return Err(TrifreeError::NoLowDegreeVertex(st.queue.len()));
        }
        st.remove_vertex(v);
        if opts.check_invariants {
            st.check()?;
        }
    }
    if let Some(s) = st.parts.iter().position(|p| p.alive) {
        return Err(TrifreeError::Invariant("covered", format!("segment {s} survived the peel")));
    }
    Ok(PeelReport { set: HittingSet::from_points(st.hits), operations: st.ops, edges: g.edges.len() })
}

pub fn solve_triangle_free(segments: &[GeomObject]) -> Result<HittingSet, TrifreeError> {
    let g = ArrangementGraph::build(segments)?;
    Ok(peel(&g, PeelOptions::default())?.set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(x1: i64, y1: i64, x2: i64, y2: i64) -> GeomObject {
        GeomObject::segment(Point::from_ints(x1, y1), Point::from_ints(x2, y2)).unwrap()
    }

    #[test]
    fn counts() {
        let g = ArrangementGraph::build(&[seg(0, 0, 2, 0), seg(1, -1, 1, 1)]).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (5, 4));
        let g = ArrangementGraph::build(&[seg(0, 0, 2, 0)]).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (2, 1));
    }

    #[test]
    fn three_through_one_point() {
        let g = ArrangementGraph::build(&[seg(-1, 0, 1, 0), seg(0, -1, 0, 1), seg(-1, -1, 1, 1)]).unwrap();
        let center = g.vertices.iter().position(|p| *p == Point::from_ints(0, 0)).unwrap();
        assert_eq!(g.degree(center), 6);
    }

    #[test]
    fn overlap_is_named() {
        let err = ArrangementGraph::build(&[seg(0, 0, 5, 5), seg(9, 9, 10, 10), seg(3, 3, 7, 7)]).unwrap_err();
        assert_eq!(err, TrifreeError::Overlap(0, 2));
    }

    #[test]
    fn triangle_detected() {
        let g = ArrangementGraph::build(&[seg(-1, 0, 5, 0), seg(0, -1, 0, 5), seg(-1, 5, 5, -1)]).unwrap();
        assert!(!g.is_triangle_free());
        assert_eq!(solve_triangle_free(&g.segments), Err(TrifreeError::NotTriangleFree));
        assert!(ArrangementGraph::build(&[]).unwrap().is_triangle_free());
    }

    #[test]
    fn disjoint_segments_one_point_each() {
        let segs = [seg(0, 0, 1, 0), seg(0, 2, 1, 2), seg(5, 5, 5, 9)];
        let g = ArrangementGraph::build(&segs).unwrap();
        let r = peel(&g, PeelOptions { check_invariants: true }).unwrap();
        assert_eq!(r.set.len(), 3);
    }

    #[test]
    fn star_needs_one_point() {
        let segs = [seg(0, 0, 3, 0), seg(0, 0, 0, 3), seg(0, 0, -2, -1)];
        let set = solve_triangle_free(&segs).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.points[0].point, Point::from_ints(0, 0));
    }

    #[test]
    fn grid_is_hit() {
        let mut segs = Vec::new();
        for k in 0..4 {
            segs.push(seg(0, k, 5, k));
            segs.push(seg(k + 1, -1, k + 1, 4));
        }
        let g = ArrangementGraph::build(&segs).unwrap();
        let r = peel(&g, PeelOptions { check_invariants: true }).unwrap();
        for s in &segs {
            assert!(r.set.points.iter().any(|h| s.contains(&h.point)));
        }
    }
}
