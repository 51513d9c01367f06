//! Vertical lines (or downward rays) with horizontal segments.
//!
//! `v` counts distinct verticals and `h` is the sum over rows of the row's
//! stabbing number; both bound the optimum from below. Stage 1 spends
//! points that lower `h` while consuming verticals: single points on one
//! vertical that drop `h` by one, and failing that, two points on one row
//! and two verticals that together drop it by one. Stage 2 gives each
//! remaining vertical its own point and stabs the remaining segments.

use std::collections::BTreeMap;

use num_traits::One;
use thiserror::Error;

use crate::geom::{rat, GeomObject, Point, Rational};
use crate::instance::Instance;
use crate::solution::HittingSet;
use crate::stab1d::{min_stab_count_with_forced, stab_intervals, Interval};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VlhsError {
    #[error("object {index} is not allowed here: {reason}")]
    Unsupported { index: usize, reason: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Vertical {
    x: Rational,
    /// Apex height of a downward ray; `None` for a line.
    top: Option<Rational>,
}

impl Vertical {
    fn reaches(&self, y: &Rational) -> bool {
        self.top.as_ref().is_none_or(|t| y <= t)
    }
}

struct Parsed {
    verticals: Vec<Vertical>,
    /// Rows in descending y.
    rows: Vec<(Rational, Vec<Interval>)>,
}

fn parse(objects: &[GeomObject], rays: bool) -> Result<Parsed, VlhsError> {
    let mut verticals: BTreeMap<Rational, Option<Rational>> = BTreeMap::new();
    let mut rows: BTreeMap<Rational, Vec<Interval>> = BTreeMap::new();
    for (i, o) in objects.iter().enumerate() {
        let dir = o.orientation();
        let err = |reason| Err(VlhsError::Unsupported { index: i, reason });
        match o {
            GeomObject::Segment { a, b, .. } if dir.is_horizontal() => {
                let (lo, hi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
                rows.entry(a.y.clone()).or_default().push(Interval::new(lo.clone(), hi.clone(), i));
            }
            GeomObject::Segment { .. } => return err("segments must be horizontal"),
            GeomObject::Line { anchor, .. } if dir.is_vertical() => {
                verticals.insert(anchor.x.clone(), None);
            }
            GeomObject::Line { .. } => return err("lines must be vertical"),
            GeomObject::Ray { apex, forward, .. } if dir.is_vertical() => {
                if !rays {
                    return err("rays need the downward-ray solver");
                }
                if *forward {
                    return err("rays must point downward");
                }
                // A lower apex is contained in every higher ray on its line.
                match verticals.get_mut(&apex.x) {
                    Some(None) => {}
                    Some(Some(t)) if *t <= apex.y => {}
                    _ => {
                        verticals.insert(apex.x.clone(), Some(apex.y.clone()));
                    }
                }
            }
            GeomObject::Ray { .. } => return err("rays must be vertical"),
        }
    }
    Ok(Parsed {
        verticals: verticals.into_iter().map(|(x, top)| Vertical { x, top }).collect(),
        rows: rows.into_iter().rev().collect(),
    })
}

/// `(v, h)` for an instance of vertical lines and horizontal segments.
pub fn lower_bounds(objects: &[GeomObject]) -> Result<(usize, usize), VlhsError> {
    let p = parse(objects, true)?;
    let h = p.rows.iter().map(|(_, ivs)| stab_intervals(ivs).len()).sum();
    Ok((p.verticals.len(), h))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VlhsReport {
    pub set: HittingSet,
    pub stage1: Vec<Point>,
    pub k1: usize,
    pub k2: usize,
    pub v: usize,
    pub h: usize,
    /// Verticals and segments left after stage 1, as a plain instance.
    pub residual: Instance,
}

impl VlhsReport {
    /// `(v', h')` of the residual.
    pub fn residual_bounds(&self) -> (usize, usize) {
        (self.v - self.k1 - self.k2, self.h - self.k1 - self.k2 / 2)
    }
}

struct State<'a> {
    p: &'a Parsed,
    used: Vec<bool>,
    forced: Vec<Vec<Rational>>,
    row_h: Vec<usize>,
}

impl State<'_> {
    fn crosses(&self, v: usize, row: usize) -> bool {
        let vert = &self.p.verticals[v];
        let (y, ivs) = &self.p.rows[row];
        vert.reaches(y) && ivs.iter().any(|iv| iv.contains(&vert.x))
    }

    fn row_count_with(&self, row: usize, extra: &[&Rational]) -> usize {
        let mut forced = self.forced[row].clone();
        forced.extend(extra.iter().map(|x| (*x).clone()));
        min_stab_count_with_forced(&self.p.rows[row].1, &forced)
    }

    fn free(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.p.verticals.len()).filter(|&v| !self.used[v])
    }

    fn single(&self) -> Option<(usize, usize)> {
        for v in self.free() {
            for row in 0..self.p.rows.len() {
                if self.crosses(v, row) && self.row_count_with(row, &[&self.p.verticals[v].x]) + 1 == self.row_h[row] {
                    return Some((v, row));
                }
            }
        }
        None
    }

    fn pair(&self) -> Option<(usize, usize, usize)> {
        for row in 0..self.p.rows.len() {
            let free: Vec<usize> = self.free().filter(|&v| self.crosses(v, row)).collect();
            for (i, &a) in free.iter().enumerate() {
                for &b in &free[i + 1..] {
                    let xs = [&self.p.verticals[a].x, &self.p.verticals[b].x];
                    if self.row_count_with(row, &xs) + 1 == self.row_h[row] {
                        return Some((a, b, row));
                    }
                }
            }
        }
        None
    }

    fn place(&mut self, v: usize, row: usize, out: &mut Vec<Point>) {
        self.used[v] = true;
        let x = self.p.verticals[v].x.clone();
        out.push(Point::new(x.clone(), self.p.rows[row].0.clone()));
        self.forced[row].push(x);
    }
}

fn run(objects: &[GeomObject], rays: bool) -> Result<VlhsReport, VlhsError> {
    let p = parse(objects, rays)?;
    let row_h: Vec<usize> = p.rows.iter().map(|(_, ivs)| stab_intervals(ivs).len()).collect();
    let (v, h) = (p.verticals.len(), row_h.iter().sum());
    let mut st = State { p: &p, used: vec![false; v], forced: vec![Vec::new(); p.rows.len()], row_h, };
    let (mut k1, mut k2) = (0, 0);
    let mut stage1 = Vec::new();
    loop {
        if let Some((vi, row)) = st.single() {
            st.place(vi, row, &mut stage1);
            st.row_h[row] -= 1;
            k1 += 1;
        } else if let Some((a, b, row)) = st.pair() {
            st.place(a, row, &mut stage1);
            st.place(b, row, &mut stage1);
            st.row_h[row] -= 1;
            k2 += 2;
        } else {
            break;
        }
    }

    let mut set = HittingSet::from_points(stage1.iter().cloned());
    let max_y = p.rows.first().map(|r| &r.0 + Rational::one());
    let min_y = p.rows.last().map(|r| &r.0 - Rational::one());
    let mut residual = Vec::new();
    for (i, vert) in p.verticals.iter().enumerate() {
        if st.used[i] {
            continue;
        }
        // Off every segment row: above them on a line, below them on a ray.
        let y = match &vert.top {
            None => max_y.clone().unwrap_or_default(),
            Some(t) => min_y.clone().map_or(t.clone(), |m| m.min(t.clone())),
        };
        set.push(Point::new(vert.x.clone(), y));
        residual.push(match &vert.top {
            None => GeomObject::line(Point::new(vert.x.clone(), Rational::default()), rat(0), rat(1)),
            Some(t) => GeomObject::ray(Point::new(vert.x.clone(), t.clone()), rat(0), rat(-1)),
        }
        .expect("nonzero direction"));
    }
    for (row, (y, ivs)) in p.rows.iter().enumerate() {
        let rest: Vec<Interval> =
            ivs.iter().filter(|iv| !st.forced[row].iter().any(|f| iv.contains(f))).cloned().collect();
        for t in stab_intervals(&rest) {
            set.push(Point::new(t, y.clone()));
        }
        for iv in rest {
            residual.push(objects[iv.source].clone());
        }
    }
    Ok(VlhsReport { set, stage1, k1, k2, v, h, residual: Instance::from_objects(residual) })
}

/// 5/3-approximation for vertical lines and horizontal segments.
pub fn solve_vlhs(objects: &[GeomObject]) -> Result<HittingSet, VlhsError> {
    Ok(run(objects, false)?.set)
}

pub fn vlhs_report(objects: &[GeomObject]) -> Result<VlhsReport, VlhsError> {
    run(objects, false)
}

/// Same guarantee for downward vertical rays (and lines) with horizontal
/// segments; collinear rays keep only the lowest apex.
pub fn solve_vrays_hs(objects: &[GeomObject]) -> Result<HittingSet, VlhsError> {
    Ok(run(objects, true)?.set)
}

pub fn vrays_report(objects: &[GeomObject]) -> Result<VlhsReport, VlhsError> {
    run(objects, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;

    fn vline(x: i64) -> GeomObject {
        GeomObject::line(Point::from_ints(x, 0), rat(0), rat(1)).unwrap()
    }

    fn hseg(y: i64, lo: i64, hi: i64) -> GeomObject {
        GeomObject::segment(Point::from_ints(lo, y), Point::from_ints(hi, y)).unwrap()
    }

    fn down(x: i64, y: i64) -> GeomObject {
        GeomObject::ray(Point::from_ints(x, y), rat(0), rat(-1)).unwrap()
    }

    #[test]
    fn bounds() {
        assert_eq!(lower_bounds(&[vline(0), vline(1), vline(2)]).unwrap(), (3, 0));
        assert_eq!(lower_bounds(&[hseg(0, 0, 1), hseg(0, 3, 4), hseg(1, 0, 1)]).unwrap(), (0, 3));
        assert_eq!(lower_bounds(&[]).unwrap(), (0, 0));
    }

    #[test]
    fn single_type_a() {
        let r = vlhs_report(&[vline(2), hseg(0, 0, 4)]).unwrap();
        assert_eq!((r.k1, r.k2, r.set.len()), (1, 0, 1));
    }

    #[test]
    fn pair_type_b() {
        // Two segments joined by one stab at 4; lines at 2 and 8 each hit
        // one of them, so only the pair lowers h.
        let objs = [hseg(0, 0, 4), hseg(0, 4, 10), vline(2), vline(8)];
        let r = vlhs_report(&objs).unwrap();
        assert_eq!((r.k1, r.k2), (0, 2));
        assert_eq!(r.set.len(), 2);
    }

    #[test]
    fn nothing_crosses() {
        let r = vlhs_report(&[vline(10), hseg(0, 0, 4)]).unwrap();
        assert_eq!((r.k1, r.k2, r.set.len()), (0, 0, 2));
    }

    #[test]
    fn lowest_apex_kept() {
        let r = vrays_report(&[down(3, 1), down(3, 5)]).unwrap();
        assert_eq!(r.v, 1);
        assert_eq!(r.set.positions(), vec![Point::from_ints(3, 1)]);
        assert!(solve_vlhs(&[down(3, 1)]).is_err());
        assert!(solve_vrays_hs(&[GeomObject::ray(Point::from_ints(0, 0), rat(0), rat(1)).unwrap()]).is_err());
    }

    #[test]
    fn ray_above_row_misses_it() {
        let r = vrays_report(&[down(2, -1), hseg(0, 0, 4)]).unwrap();
        assert_eq!(r.k1, 0);
        assert_eq!(r.set.len(), 2);
    }
}
