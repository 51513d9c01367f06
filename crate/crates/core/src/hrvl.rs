//! Exact solver for vertical lines and horizontal rays.
//!
//! Rays are first normalized so every row carries one l-ray/r-ray pair
//! whose intersection is a nonempty core `[lo, hi]`. A point on a line and
//! a core hits three objects at once. The bidirectional sweep picks a
//! maximum set of such line/core matches, preferring the core that ends
//! first in the sweep direction and alternating sides whenever a line is
//! set aside. What remains meets only in pairs and is finished by a
//! minimum edge cover.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::One;
use thiserror::Error;

use crate::geom::{rat, GeomObject, Point, Rational};
use crate::instance::private_point;
use crate::matching::{is_critical_left, max_matching, min_edge_cover, BipartiteGraph, Graph};
use crate::solution::HittingSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HrvlError {
    #[error("object {index} is not allowed here: {reason}")]
    Unsupported { index: usize, reason: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// The left-pointing ray of a pair.
    Left,
    /// The right-pointing ray of a pair.
    Right,
}

/// An l-ray and an r-ray on one row that overlap in `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayPair {
    pub l_ray: GeomObject,
    pub r_ray: GeomObject,
    /// Apex of the r-ray.
    pub lo: Rational,
    /// Apex of the l-ray.
    pub hi: Rational,
    /// Working row; differs from `row` when a disjoint ray was moved off it.
    pub y: Rational,
    /// Row of the input ray(s).
    pub row: Rational,
    /// The ray added as a partner, if any.
    pub synthetic: Option<Side>,
    /// Smallest input index among the real rays.
    pub source: usize,
}

impl RayPair {
    /// The core as a segment, or `None` when it is a single point.
    pub fn core(&self) -> Option<GeomObject> {
        GeomObject::segment(Point::new(self.lo.clone(), self.y.clone()), Point::new(self.hi.clone(), self.y.clone())).ok()
    }

    pub fn crosses(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    fn reaches(&self, side: Side, x: &Rational) -> bool {
        match side {
            Side::Left => x <= &self.hi,
            Side::Right => x >= &self.lo,
        }
    }

    /// A core point lying on every real ray of the pair.
    fn core_point(&self) -> Point {
        let x = if self.synthetic == Some(Side::Right) { &self.hi } else { &self.lo };
        Point::new(x.clone(), self.row.clone())
    }
}

fn hray(x: &Rational, y: &Rational, side: Side) -> GeomObject {
    let dx = if side == Side::Left { -1 } else { 1 };
    GeomObject::ray(Point::new(x.clone(), y.clone()), rat(dx), rat(0)).expect("nonzero direction")
}

#[derive(Default)]
struct Row {
    /// Leftmost l-ray apex and its input index.
    left: Option<(Rational, usize)>,
    /// Rightmost r-ray apex and its input index.
    right: Option<(Rational, usize)>,
}

/// Pairs every ray and dedupes the lines, which come back sorted by x.
/// Pairs are ordered by their first input ray.
pub fn normalize_rays(objects: &[GeomObject]) -> Result<(Vec<RayPair>, Vec<GeomObject>), HrvlError> {
    let mut lines: BTreeMap<Rational, GeomObject> = BTreeMap::new();
    let mut rows: BTreeMap<Rational, Row> = BTreeMap::new();
    for (i, o) in objects.iter().enumerate() {
        let err = |reason| Err(HrvlError::Unsupported { index: i, reason });
        match o {
            GeomObject::Line { anchor, dir } if dir.is_vertical() => {
                lines.entry(anchor.x.clone()).or_insert_with(|| o.clone());
            }
            GeomObject::Ray { apex, dir, forward } if dir.is_horizontal() => {
                let row = rows.entry(apex.y.clone()).or_default();
                let x = apex.x.clone();
                if *forward {
                    match &mut row.right {
                        Some((a, j)) if *a >= x => *j = (*j).min(i),
                        slot => *slot = Some((x, slot.as_ref().map_or(i, |s| s.1.min(i)))),
                    }
                } else {
                    match &mut row.left {
                        Some((a, j)) if *a <= x => *j = (*j).min(i),
                        slot => *slot = Some((x, slot.as_ref().map_or(i, |s| s.1.min(i)))),
                    }
                }
            }
            GeomObject::Line { .. } => return err("lines must be vertical"),
            GeomObject::Ray { .. } => return err("rays must be horizontal"),
            GeomObject::Segment { .. } => return err("segments are not supported"),
        }
    }

    let ys: Vec<&Rational> = rows.keys().collect();
    let delta = ys
        .windows(2)
        .map(|w| w[1] - w[0])
        .min()
        .map_or_else(|| Rational::new(1.into(), 2.into()), |g| g / Rational::from_integer(2.into()));
    let one = Rational::one();
    let max_x = rows.values().flat_map(|r| r.right.iter().map(|a| &a.0)).chain(lines.keys()).max().cloned();
    let min_x = rows.values().flat_map(|r| r.left.iter().map(|a| &a.0)).chain(lines.keys()).min().cloned();

    let mut pairs = Vec::new();
    let mut lone = |side: Side, apex: Rational, src: usize, y: Rational, row: Rational| {
        let (lo, hi) = match side {
            // A real r-ray gets an l-ray reaching past every line.
            Side::Right => (apex.clone(), max_x.clone().unwrap_or_default() + &one),
            Side::Left => (min_x.clone().unwrap_or_default() - &one, apex.clone()),
        };
        let synthetic = Some(if side == Side::Right { Side::Left } else { Side::Right });
        pairs.push(RayPair {
            l_ray: hray(&hi, &y, Side::Left),
            r_ray: hray(&lo, &y, Side::Right),
            lo,
            hi,
            y,
            row,
            synthetic,
            source: src,
        });
    };
    let mut paired = Vec::new();
    for (y, r) in &rows {
        match (&r.left, &r.right) {
            (Some((hi, a)), Some((lo, b))) if lo <= hi => paired.push(RayPair {
                l_ray: hray(hi, y, Side::Left),
                r_ray: hray(lo, y, Side::Right),
                lo: lo.clone(),
                hi: hi.clone(),
                y: y.clone(),
                row: y.clone(),
                synthetic: None,
                source: *a.min(b),
            }),
            (Some((hi, a)), Some((lo, b))) => {
                // Disjoint: no point hits both, so the r-ray moves to its own row.
                lone(Side::Left, hi.clone(), *a, y.clone(), y.clone());
                lone(Side::Right, lo.clone(), *b, y + &delta, y.clone());
            }
            (Some((hi, a)), None) => lone(Side::Left, hi.clone(), *a, y.clone(), y.clone()),
            (None, Some((lo, b))) => lone(Side::Right, lo.clone(), *b, y.clone(), y.clone()),
            (None, None) => unreachable!(),
        }
    }
    pairs.extend(paired);
    pairs.sort_by_key(|p| p.source);
    Ok((pairs, lines.into_values().collect()))
}

/// True when removing `line` from the lines-segments graph lowers its
/// maximum matching.
pub fn is_critical(line: usize, g: &BipartiteGraph) -> bool {
    is_critical_left(g, line)
}

/// One line hitting one ray of a pair outside a 3-hitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hitter {
    pub line: usize,
    pub pair: usize,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HrvlReport {
    pub set: HittingSet,
    pub pairs: Vec<RayPair>,
    /// Distinct vertical lines, sorted by x.
    pub lines: Vec<GeomObject>,
    /// `(line, pair)` matches in the order the sweep made them.
    pub three_hitters: Vec<(usize, usize)>,
    /// Line points on rays in the final cover, l-hitters left of r-hitters.
    pub hitters: Vec<Hitter>,
    /// Lines set aside on the left and right sides.
    pub side_counts: [usize; 2],
    /// Each line set aside during the sweep, with the side it counts for.
    pub benched: Vec<(usize, Side)>,
    /// Maximum matching of the initial lines-segments graph.
    pub max_matching: usize,
    pub trace: Vec<String>,
}

impl HrvlReport {
    pub fn line_x(&self, line: usize) -> &Rational {
        &self.lines[line].anchor().x
    }

    pub fn line_label(&self, line: usize) -> String {
        format!("l{}", line + 1)
    }

    pub fn pair_label(&self, pair: usize) -> String {
        pair_label(pair)
    }

    /// Whether every l-hitter lies at or left of every r-hitter.
    pub fn hitters_separated(&self) -> bool {
        let xs = |s| self.hitters.iter().filter(move |h| h.side == s).map(|h| self.line_x(h.line));
        match (xs(Side::Left).max(), xs(Side::Right).min()) {
            (Some(l), Some(r)) => l <= r,
            _ => true,
        }
    }

    /// Lines set aside on the left (right) sweep that cross a core 3-hit
    /// from a line further left (right). The sweep never produces any.
    pub fn shadowed_benches(&self) -> Vec<usize> {
        self.benched
            .iter()
            .filter(|&&(b, side)| {
                let x = self.line_x(b);
                self.three_hitters.iter().any(|&(l, s)| {
                    let behind = if side == Side::Left { self.line_x(l) < x } else { self.line_x(l) > x };
                    behind && self.pairs[s].crosses(x)
                })
            })
            .map(|&(b, _)| b)
            .collect()
    }

    /// Pairs whose two rays are both hit by lines.
    pub fn double_hits(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .hitters
            .iter()
            .filter(|h| h.side == Side::Left)
            .filter(|h| self.hitters.iter().any(|o| o.pair == h.pair && o.side == Side::Right))
            .map(|h| h.pair)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn trace_text(&self) -> String {
        self.trace.iter().fold(String::new(), |mut s, l| {
            writeln!(s, "{l}").unwrap();
            s
        })
    }
}

fn pair_label(pair: usize) -> String {
    match u8::try_from(pair) {
        Ok(k) if k < 26 => char::from(b'a' + k).to_string(),
        _ => format!("s{}", pair + 1),
    }
}

const DIRS: [&str; 2] = ["L", "R"];

struct Sweep<'a> {
    xs: Vec<&'a Rational>,
    pairs: &'a [RayPair],
    line_on: Vec<bool>,
    pair_on: Vec<bool>,
    sd: usize,
    h: [usize; 2],
    three: Vec<(usize, usize)>,
    benched: Vec<(usize, Side)>,
    trace: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
enum Event {
    Segment(usize),
    Line(usize),
}

impl Sweep<'_> {
    fn graph(&self) -> BipartiteGraph {
        let mut g = BipartiteGraph::new(self.xs.len(), self.pairs.len());
        for (l, x) in self.xs.iter().enumerate() {
            for (s, p) in self.pairs.iter().enumerate() {
                if self.line_on[l] && self.pair_on[s] && p.crosses(x) {
                    g.add_edge(l, s);
                }
            }
        }
        g
    }

    fn any_crossing(&self) -> bool {
        self.graph().edges().next().is_some()
    }

    /// Position along the sweep: smaller comes first.
    fn key(&self, x: &Rational) -> Rational {
        if self.sd == 0 {
            x.clone()
        } else {
            -x.clone()
        }
    }

    fn next_event(&self) -> Option<Event> {
        let segs = (0..self.pairs.len()).filter(|&s| self.pair_on[s]).map(|s| {
            let p = &self.pairs[s];
            let edge = if self.sd == 0 { &p.lo } else { &p.hi };
            ((self.key(edge), 0, p.y.clone(), p.source), Event::Segment(s))
        });
        let lines = (0..self.xs.len())
            .filter(|&l| self.line_on[l])
            .map(|l| ((self.key(self.xs[l]), 1, Rational::default(), l), Event::Line(l)));
        segs.chain(lines).min_by(|a, b| a.0.cmp(&b.0)).map(|e| e.1)
    }

    fn bench_line(&mut self, l: usize, prefix: String) {
        self.line_on[l] = false;
        self.h[self.sd] += 1;
        self.benched.push((l, if self.sd == 0 { Side::Left } else { Side::Right }));
        self.trace.push(format!("{prefix}bench, H = [{}, {}]", self.h[0], self.h[1]));
        self.sd ^= 1;
    }

    fn step(&mut self, ev: Event) {
        let dir = DIRS[self.sd];
        match ev {
            Event::Line(l) => self.bench_line(l, format!("{dir} line l{}: ", l + 1)),
            Event::Segment(s) => {
                let head = format!("{dir} segment {}: ", pair_label(s));
                let crossing = (0..self.xs.len()).filter(|&l| self.line_on[l] && self.pairs[s].crosses(self.xs[l]));
                let first = if self.sd == 0 { crossing.min() } else { crossing.max() };
                let Some(l) = first else {
                    self.pair_on[s] = false;
                    self.trace.push(format!("{head}no line, bench"));
                    return;
                };
                let head = format!("{head}first line l{}, ", l + 1);
                if !is_critical(l, &self.graph()) {
                    self.bench_line(l, format!("{head}not critical, "));
                    return;
                }
                let x = self.xs[l];
                let pick = (0..self.pairs.len())
                    .filter(|&t| self.pair_on[t] && self.pairs[t].crosses(x))
                    .min_by_key(|&t| {
                        let p = &self.pairs[t];
                        (self.key(if self.sd == 0 { &p.hi } else { &p.lo }), p.y.clone(), p.source)
                    })
                    .expect("a critical line crosses an active segment");
                self.line_on[l] = false;
                self.pair_on[pick] = false;
                self.three.push((l, pick));
                self.trace.push(format!("{head}critical, 3-hit {}", pair_label(pick)));
            }
        }
    }
}

pub fn solve_hrvl(objects: &[GeomObject]) -> Result<HittingSet, HrvlError> {
    Ok(hrvl_report(objects)?.set)
}

pub fn hrvl_report(objects: &[GeomObject]) -> Result<HrvlReport, HrvlError> {
    let (pairs, lines) = normalize_rays(objects)?;
    let xs: Vec<&Rational> = lines.iter().map(|l| &l.anchor().x).collect();
    let mut sw = Sweep {
        xs: xs.clone(),
        pairs: &pairs,
        line_on: vec![true; lines.len()],
        pair_on: vec![true; pairs.len()],
        sd: 0,
        h: [0, 0],
        three: Vec::new(),
        benched: Vec::new(),
        trace: Vec::new(),
    };
    let initial = max_matching(&sw.graph()).len();
    while sw.any_crossing() {
        let ev = sw.next_event().expect("a crossing leaves events");
        sw.step(ev);
    }

    let mut set = HittingSet::new();
    let mut line_used = vec![false; lines.len()];
    let mut pair_used = vec![false; pairs.len()];
    for &(l, s) in &sw.three {
        set.push_triple(Point::new(xs[l].clone(), pairs[s].row.clone()));
        line_used[l] = true;
        pair_used[s] = true;
    }

    // Vertices: leftover lines, then the two rays of each leftover pair.
    let rest_lines: Vec<usize> = (0..lines.len()).filter(|&l| !line_used[l]).collect();
    let rest_pairs: Vec<usize> = (0..pairs.len()).filter(|&s| !pair_used[s]).collect();
    let ray_vertex = |k: usize, side: Side| rest_lines.len() + 2 * k + usize::from(side == Side::Right);
    let mut g = Graph::new(rest_lines.len() + 2 * rest_pairs.len());
    let mut edge_kind = Vec::new();
    for (k, &s) in rest_pairs.iter().enumerate() {
        g.add_edge(ray_vertex(k, Side::Left), ray_vertex(k, Side::Right));
        edge_kind.push(None);
        for (i, &l) in rest_lines.iter().enumerate() {
            for side in [Side::Left, Side::Right] {
                if pairs[s].reaches(side, xs[l]) {
                    g.add_edge(i, ray_vertex(k, side));
                    edge_kind.push(Some(Hitter { line: l, pair: s, side }));
                }
            }
        }
    }
    let cover = min_edge_cover(&g);

    let mut hitters = Vec::new();
    let mut cores = Vec::new();
    for &e in &cover.edges {
        match edge_kind[e] {
            Some(h) => hitters.push(h),
            None => cores.push(rest_pairs[(g.edges[e].0 - rest_lines.len()) / 2]),
        }
    }
    separate_hitters(&mut hitters, &xs);

    let mut fin = String::from("stop: lines");
    rest_lines.iter().for_each(|l| write!(fin, " l{}", l + 1).unwrap());
    fin.push_str(", segments");
    rest_pairs.iter().for_each(|&s| write!(fin, " {}", pair_label(s)).unwrap());
    sw.trace.push(fin);

    for h in &hitters {
        set.push(Point::new(xs[h.line].clone(), pairs[h.pair].row.clone()));
        let side = if h.side == Side::Left { "l" } else { "r" };
        sw.trace.push(format!("cover l{} on {}.{side}", h.line + 1, pair_label(h.pair)));
    }
    for &s in &cores {
        set.push(pairs[s].core_point());
        sw.trace.push(format!("cover {} on its core", pair_label(s)));
    }
    let beyond_y = pairs.iter().map(|p| &p.y).max().map_or_else(Rational::default, |y| y + Rational::one());
    for &v in &cover.isolated {
        let l = rest_lines[v];
        set.push(private_point(&lines[l], &Rational::default(), &beyond_y));
        sw.trace.push(format!("cover l{} alone", l + 1));
    }
    sw.trace.push(format!("total {}", set.len()));

    Ok(HrvlReport {
        set,
        max_matching: initial,
        side_counts: sw.h,
        three_hitters: sw.three,
        benched: sw.benched,
        trace: sw.trace,
        hitters,
        pairs,
        lines,
    })
}

/// Reassigns ray hits so that every l-hitter is at or left of every
/// r-hitter. An r-hitter left of an l-hitter can trade rays with it: each
/// line still reaches the ray it takes over.
fn separate_hitters(hitters: &mut [Hitter], xs: &[&Rational]) {
    loop {
        let lefts = hitters.iter().enumerate().filter(|(_, h)| h.side == Side::Left);
        let Some((li, _)) = lefts.max_by(|a, b| xs[a.1.line].cmp(xs[b.1.line])) else { return };
        let rights = hitters.iter().enumerate().filter(|(_, h)| h.side == Side::Right);
        let Some((ri, _)) = rights.min_by(|a, b| xs[a.1.line].cmp(xs[b.1.line])) else { return };
        if xs[hitters[ri].line] >= xs[hitters[li].line] {
            return;
        }
        let (lp, rp) = (hitters[li].pair, hitters[ri].pair);
        hitters[li].pair = rp;
        hitters[li].side = Side::Right;
        hitters[ri].pair = lp;
        hitters[ri].side = Side::Left;
    }
}
