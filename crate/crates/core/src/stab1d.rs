//! Minimum stabbing of closed intervals on a line, and its use per
//! supporting line for collinear groups of objects.

use std::collections::BTreeMap;

use num_traits::One;

use crate::geom::{GeomObject, Orientation, Point, Rational};
use crate::solution::HittingSet;

/// A closed interval `[lo, hi]` traced back to the object `source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub source: usize,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational, source: usize) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi, source }
    }

    pub fn contains(&self, t: &Rational) -> bool {
        &self.lo <= t && t <= &self.hi
    }
}

/// Minimum set of stab positions: sweep by right endpoint and stab at the
/// first right endpoint not yet hit. Every position is some interval's `hi`.
pub fn stab_intervals(intervals: &[Interval]) -> Vec<Rational> {
    let mut order: Vec<&Interval> = intervals.iter().collect();
    order.sort_by(|a, b| a.hi.cmp(&b.hi).then_with(|| a.lo.cmp(&b.lo)));
    let mut stabs: Vec<Rational> = Vec::new();
    for iv in order {
        if stabs.last().is_none_or(|s| *s < iv.lo) {
            stabs.push(iv.hi.clone());
        }
    }
    stabs
}

/// Minimum number of stabs for the intervals that no forced position hits.
pub fn min_stab_count_with_forced(intervals: &[Interval], forced: &[Rational]) -> usize {
    let rest: Vec<Interval> = intervals.iter().filter(|iv| !forced.iter().any(|f| iv.contains(f))).cloned().collect();
    stab_intervals(&rest).len()
}

/// Groups object indices by supporting line: (orientation, offset).
pub fn group_collinear(objects: &[GeomObject]) -> BTreeMap<(Orientation, Rational), Vec<usize>> {
    let mut groups: BTreeMap<(Orientation, Rational), Vec<usize>> = BTreeMap::new();
    for (i, o) in objects.iter().enumerate() {
        groups.entry((o.orientation().clone(), o.offset())).or_default().push(i);
    }
    groups
}

/// Optimal stabbing of a set of objects sharing one supporting line.
/// Unbounded ends are clipped one unit past every finite parameter.
pub fn stab_collinear(dir: &Orientation, offset: &Rational, objects: &[&GeomObject]) -> Vec<Point> {
    let finite: Vec<Rational> = objects.iter().flat_map(|o| {
        let (lo, hi) = o.extent();
        lo.into_iter().chain(hi)
    }).collect();
    let below = finite.iter().min().cloned().unwrap_or_default() - Rational::one();
    let above = finite.iter().max().cloned().unwrap_or_default() + Rational::one();
    let intervals: Vec<Interval> = objects
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let (lo, hi) = o.extent();
            Interval::new(lo.unwrap_or_else(|| below.clone()), hi.unwrap_or_else(|| above.clone()), i)
        })
        .collect();
    stab_intervals(&intervals).iter().map(|t| dir.point_at(offset, t)).collect()
}

/// Exact for objects of one orientation; for r orientations the union of the
/// per-line optima is within a factor r of the optimum.
pub fn solve_per_line(objects: &[GeomObject]) -> HittingSet {
    let mut set = HittingSet::new();
    for ((dir, offset), idx) in group_collinear(objects) {
        let group: Vec<&GeomObject> = idx.iter().map(|&i| &objects[i]).collect();
        for p in stab_collinear(&dir, &offset, &group) {
            set.push(p);
        }
    }
    set
}
