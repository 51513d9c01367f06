//! Hitting lines of two or three slopes.
//!
//! Two slope classes of sizes `a <= b` always need exactly `b` points: pair
//! lines across classes at their crossings. With three classes and no
//! concurrent triple, the optimum depends only on the class sizes; the
//! greedy here first takes concurrent triples, then always pairs the two
//! largest remaining classes.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::geom::{line_crossing, GeomObject, Orientation, Point, Rational};
use crate::solution::HittingSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinesError {
    #[error("object {0} is not a line")]
    NotALine(usize),
    #[error("{found} orientation classes, at most {max} supported")]
    TooManyOrientations { found: usize, max: usize },
    #[error("counts must satisfy x >= y >= z, got ({0}, {1}, {2})")]
    Unordered(usize, usize, usize),
}

/// Optimal size for three-slope lines with no concurrent triple.
pub fn opt2_count(x: usize, y: usize, z: usize) -> Result<usize, LinesError> {
    if x < y || y < z {
        return Err(LinesError::Unordered(x, y, z));
    }
    Ok(if x >= y + z { x } else { (x + y + z).div_ceil(2) })
}

/// Class sizes sorted descending, with the orientation of each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeCensus {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub classes: Vec<(Orientation, usize)>,
}

/// Distinct lines grouped by orientation in angular order, each class
/// sorted by offset.
#[derive(Debug, Clone)]
struct Classes {
    dirs: Vec<Orientation>,
    lines: Vec<Vec<GeomObject>>,
}

fn classify(objects: &[GeomObject], max: usize) -> Result<Classes, LinesError> {
    let mut by_dir: BTreeMap<Orientation, BTreeMap<Rational, GeomObject>> = BTreeMap::new();
    for (i, o) in objects.iter().enumerate() {
        if !matches!(o, GeomObject::Line { .. }) {
            return Err(LinesError::NotALine(i));
        }
        by_dir.entry(o.orientation().clone()).or_default().insert(o.offset(), o.clone());
    }
    if by_dir.len() > max {
        return Err(LinesError::TooManyOrientations { found: by_dir.len(), max });
    }
    let mut dirs: Vec<Orientation> = by_dir.keys().cloned().collect();
    dirs.sort_by(|a, b| a.angle_cmp(b));
    let lines = dirs.iter().map(|d| by_dir[d].values().cloned().collect()).collect();
    Ok(Classes { dirs, lines })
}

pub fn census(objects: &[GeomObject]) -> Result<SlopeCensus, LinesError> {
    let c = classify(objects, 3)?;
    let mut classes: Vec<(Orientation, usize)> = c.dirs.into_iter().zip(c.lines.iter().map(Vec::len)).collect();
    classes.sort_by_key(|c| std::cmp::Reverse(c.1));
    let n = |i: usize| classes.get(i).map_or(0, |c| c.1);
    Ok(SlopeCensus { x: n(0), y: n(1), z: n(2), classes })
}

fn crossing(a: &GeomObject, b: &GeomObject) -> Point {
    line_crossing(a, b).expect("lines of distinct classes cross")
}

/// Optimal for lines of at most two orientations.
pub fn solve_two_slopes(objects: &[GeomObject]) -> Result<HittingSet, LinesError> {
    let c = classify(objects, 2)?;
    let mut set = HittingSet::new();
    match c.lines.as_slice() {
        [] => {}
        [only] => only.iter().for_each(|l| set.push(l.anchor().clone())),
        [a, b] => {
            let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
            for (i, l) in long.iter().enumerate() {
                set.push(match short.get(i) {
                    Some(s) => crossing(l, s),
                    None => l.anchor().clone(),
                });
            }
        }
        _ => unreachable!(),
    }
    Ok(set)
}

/// A point where one line of each class meets; `lines` index the classes
/// in angular order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleIntersection {
    pub point: Point,
    pub lines: [GeomObject; 3],
}

fn triples_of(c: &Classes) -> Vec<TripleIntersection> {
    if c.lines.len() < 3 {
        return Vec::new();
    }
    let third: HashMap<Rational, &GeomObject> = c.lines[2].iter().map(|l| (l.offset(), l)).collect();
    let mut out = Vec::new();
    for a in &c.lines[0] {
        for b in &c.lines[1] {
            let p = crossing(a, b);
            if let Some(l) = third.get(&c.dirs[2].offset(&p)) {
                out.push(TripleIntersection { point: p, lines: [a.clone(), b.clone(), (*l).clone()] });
            }
        }
    }
    out.sort_by(|s, t| s.point.cmp(&t.point));
    out
}

/// Every concurrent triple, one line per class, ordered by point.
pub fn three_intersections(objects: &[GeomObject]) -> Result<Vec<TripleIntersection>, LinesError> {
    Ok(triples_of(&classify(objects, 3)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeSlopeReport {
    pub set: HittingSet,
    /// Triples taken in the first phase.
    pub triples: Vec<TripleIntersection>,
}

pub fn solve_three_slopes_greedy(objects: &[GeomObject]) -> Result<HittingSet, LinesError> {
    Ok(three_slopes_report(objects)?.set)
}

pub fn three_slopes_report(objects: &[GeomObject]) -> Result<ThreeSlopeReport, LinesError> {
    let c = classify(objects, 3)?;
    let mut set = HittingSet::new();
    let mut hit: Vec<Vec<bool>> = c.lines.iter().map(|l| vec![false; l.len()]).collect();
    let pos = |k: usize, l: &GeomObject| c.lines[k].iter().position(|m| m == l).unwrap();

    let mut taken = Vec::new();
    for t in triples_of(&c) {
        let idx: Vec<usize> = (0..3).map(|k| pos(k, &t.lines[k])).collect();
        if (0..3).all(|k| !hit[k][idx[k]]) {
            for k in 0..3 {
                hit[k][idx[k]] = true;
            }
            set.push_triple(t.point.clone());
            taken.push(t);
        }
    }

    let mut rest: Vec<Vec<&GeomObject>> =
        c.lines.iter().zip(&hit).map(|(ls, h)| ls.iter().zip(h).filter(|(_, &h)| !h).map(|(l, _)| l).rev().collect()).collect();
    loop {
        let mut order: Vec<usize> = (0..rest.len()).collect();
        order.sort_by_key(|&k| std::cmp::Reverse(rest[k].len()));
        match order.as_slice() {
            [a, b, ..] if !rest[*b].is_empty() => {
                let (la, lb) = (rest[*a].pop().unwrap(), rest[*b].pop().unwrap());
                set.push(crossing(la, lb));
            }
            _ => break,
        }
    }
    for l in rest.into_iter().flatten() {
        set.push(l.anchor().clone());
    }
    Ok(ThreeSlopeReport { set, triples: taken })
}
