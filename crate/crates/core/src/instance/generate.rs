//! Seeded random instance families.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Instance, ObjectUnion};
use crate::geom::{intersect, rat, GeomObject, IntersectionResult, Point};
use crate::trifree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("gave up after {0} attempts")]
    Exhausted(usize),
    #[error("layout check failed: {0}")]
    Layout(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    ThreeSlopeLines,
    Hrvl,
    Vlhs,
    VraysHs,
    LPairs,
    SegLinePairs,
    TriFree,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::ThreeSlopeLines,
        Family::Hrvl,
        Family::Vlhs,
        Family::VraysHs,
        Family::LPairs,
        Family::SegLinePairs,
        Family::TriFree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ThreeSlopeLines => "3slope-lines",
            Family::Hrvl => "hrvl",
            Family::Vlhs => "vlhs",
            Family::VraysHs => "vrays",
            Family::LPairs => "L-pairs",
            Family::SegLinePairs => "sl-pairs",
            Family::TriFree => "trifree-segments",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| GenError::InvalidParams(format!("unknown family `{s}`")))
    }
}

/// Family parameters. All coordinates are integers in `0..=grid`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenParams {
    /// Horizontal, vertical and slope-1 lines. With `triples` off, no three
    /// lines are concurrent.
    ThreeSlopeLines { horizontal: usize, vertical: usize, diagonal: usize, grid: i64, triples: bool },
    /// Vertical lines, ray pairs sharing a row, and loose horizontal rays.
    Hrvl { lines: usize, pairs: usize, loose_rays: usize, grid: i64 },
    /// Vertical lines and horizontal segments on `rows` rows.
    Vlhs { lines: usize, segments: usize, rows: usize, grid: i64 },
    /// Downward vertical rays and horizontal segments.
    VraysHs { rays: usize, segments: usize, rows: usize, grid: i64 },
    /// Unions of a horizontal and a vertical segment.
    LPairs { count: usize, grid: i64 },
    /// Unions of a horizontal segment and a vertical line.
    SegLinePairs { count: usize, grid: i64 },
    /// Pairwise non-overlapping segments with a triangle-free arrangement.
    /// `axis_only` restricts to horizontal and vertical segments of length
    /// at most 4, which scales to large counts.
    TriFree { count: usize, grid: i64, axis_only: bool },
}

impl GenParams {
    pub fn family(&self) -> Family {
        match self {
            GenParams::ThreeSlopeLines { .. } => Family::ThreeSlopeLines,
            GenParams::Hrvl { .. } => Family::Hrvl,
            GenParams::Vlhs { .. } => Family::Vlhs,
            GenParams::VraysHs { .. } => Family::VraysHs,
            GenParams::LPairs { .. } => Family::LPairs,
            GenParams::SegLinePairs { .. } => Family::SegLinePairs,
            GenParams::TriFree { .. } => Family::TriFree,
        }
    }
}

fn pt(x: i64, y: i64) -> Point {
    Point::from_ints(x, y)
}

fn vline(x: i64) -> GeomObject {
    GeomObject::line(pt(x, 0), rat(0), rat(1)).unwrap()
}

fn hseg(y: i64, lo: i64, hi: i64) -> GeomObject {
    GeomObject::segment(pt(lo, y), pt(hi, y)).unwrap()
}

fn hray(y: i64, apex: i64, right: bool) -> GeomObject {
    GeomObject::ray(pt(apex, y), rat(if right { 1 } else { -1 }), rat(0)).unwrap()
}

fn distinct(rng: &mut ChaCha8Rng, lo: i64, hi: i64, k: usize, what: &str) -> Result<Vec<i64>, GenError> {
    let mut pool: Vec<i64> = (lo..=hi).collect();
    if pool.len() < k {
        return Err(GenError::InvalidParams(format!("{k} distinct {what} do not fit in {lo}..={hi}")));
    }
    pool.shuffle(rng);
    pool.truncate(k);
    Ok(pool)
}

fn interval(rng: &mut ChaCha8Rng, grid: i64) -> (i64, i64) {
    let a = rng.gen_range(0..=grid);
    let mut b = rng.gen_range(0..grid);
    if b >= a {
        b += 1;
    }
    (a.min(b), a.max(b))
}

fn check_grid(grid: i64) -> Result<(), GenError> {
    if grid < 1 {
        return Err(GenError::InvalidParams(format!("grid must be at least 1, got {grid}")));
    }
    Ok(())
}

pub fn gen_random(params: &GenParams, seed: u64) -> Result<Instance, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rng = &mut rng;
    let objects: Vec<ObjectUnion> = match *params {
        GenParams::ThreeSlopeLines { horizontal, vertical, diagonal, grid, triples } => {
            check_grid(grid)?;
            let hs = distinct(rng, 0, grid, horizontal, "horizontal lines")?;
            let vs = distinct(rng, 0, grid, vertical, "vertical lines")?;
            let ds = if triples {
                distinct(rng, -grid, grid, diagonal, "diagonal lines")?
            } else {
                // y - x = c meets (b, a) exactly when c = a - b.
                let banned: BTreeSet<i64> = hs.iter().flat_map(|a| vs.iter().map(move |b| a - b)).collect();
                let span = grid + diagonal as i64 + 1;
                let mut pool: Vec<i64> = (-span..=span).filter(|c| !banned.contains(c)).collect();
                pool.shuffle(rng);
                pool.truncate(diagonal);
                pool
            };
            let mut objs: Vec<GeomObject> = hs.iter().map(|&y| GeomObject::line(pt(0, y), rat(1), rat(0)).unwrap()).collect();
            objs.extend(vs.iter().map(|&x| vline(x)));
            objs.extend(ds.iter().map(|&c| GeomObject::line(pt(0, c), rat(1), rat(1)).unwrap()));
            objs.shuffle(rng);
            objs.into_iter().map(ObjectUnion::single).collect()
        }
        GenParams::Hrvl { lines, pairs, loose_rays, grid } => {
            check_grid(grid)?;
            let mut objs: Vec<GeomObject> = distinct(rng, 0, grid, lines, "vertical lines")?.into_iter().map(vline).collect();
            let rows = (pairs + loose_rays).max(1) as i64;
            let pair_rows = distinct(rng, 0, rows - 1, pairs, "rows")?;
            for y in pair_rows {
                let lo = rng.gen_range(0..=grid);
                let hi = rng.gen_range(lo..=grid);
                objs.push(hray(y, hi, false));
                objs.push(hray(y, lo, true));
            }
            for _ in 0..loose_rays {
                let y = rng.gen_range(0..rows);
                objs.push(hray(y, rng.gen_range(0..=grid), rng.gen_bool(0.5)));
            }
            objs.into_iter().map(ObjectUnion::single).collect()
        }
        GenParams::Vlhs { lines, segments, rows, grid } => {
            check_grid(grid)?;
            if segments > 0 && rows == 0 {
                return Err(GenError::InvalidParams("segments need at least one row".into()));
            }
            let mut objs: Vec<GeomObject> = distinct(rng, 0, grid, lines, "vertical lines")?.into_iter().map(vline).collect();
            for _ in 0..segments {
                let y = rng.gen_range(0..rows as i64);
                let (lo, hi) = interval(rng, grid);
                objs.push(hseg(y, lo, hi));
            }
            objs.into_iter().map(ObjectUnion::single).collect()
        }
        GenParams::VraysHs { rays, segments, rows, grid } => {
            check_grid(grid)?;
            if segments > 0 && rows == 0 {
                return Err(GenError::InvalidParams("segments need at least one row".into()));
            }
            let mut objs = Vec::new();
            for _ in 0..rays {
                let apex = pt(rng.gen_range(0..=grid), rng.gen_range(0..=rows as i64));
                objs.push(GeomObject::ray(apex, rat(0), rat(-1)).unwrap());
            }
            for _ in 0..segments {
                let y = rng.gen_range(0..rows as i64);
                let (lo, hi) = interval(rng, grid);
                objs.push(hseg(y, lo, hi));
            }
            objs.into_iter().map(ObjectUnion::single).collect()
        }
        GenParams::LPairs { count, grid } => {
            check_grid(grid)?;
            (0..count)
                .map(|_| {
                    let y = rng.gen_range(0..=grid);
                    let (a, b) = interval(rng, grid);
                    let x = rng.gen_range(0..=grid);
                    let (c, d) = interval(rng, grid);
                    ObjectUnion::pair(hseg(y, a, b), GeomObject::segment(pt(x, c), pt(x, d)).unwrap())
                })
                .collect()
        }
        GenParams::SegLinePairs { count, grid } => {
            check_grid(grid)?;
            (0..count)
                .map(|_| {
                    let y = rng.gen_range(0..=grid);
                    let (a, b) = interval(rng, grid);
                    ObjectUnion::pair(hseg(y, a, b), vline(rng.gen_range(0..=grid)))
                })
                .collect()
        }
        GenParams::TriFree { count, grid, axis_only } => {
            check_grid(grid)?;
            let segs = if axis_only { axis_segments(rng, count, grid)? } else { free_segments(rng, count, grid)? };
            segs.into_iter().map(ObjectUnion::single).collect()
        }
    };
    Ok(Instance::new(objects).with_meta("", params.family().name(), Some(seed)))
}

const ATTEMPTS: usize = 2000;

fn free_segments(rng: &mut ChaCha8Rng, count: usize, grid: i64) -> Result<Vec<GeomObject>, GenError> {
    let mut segs: Vec<GeomObject> = Vec::with_capacity(count);
    while segs.len() < count {
        let mut placed = false;
        for _ in 0..ATTEMPTS {
            let a = pt(rng.gen_range(0..=grid), rng.gen_range(0..=grid));
            let b = pt(rng.gen_range(0..=grid), rng.gen_range(0..=grid));
            let Ok(s) = GeomObject::segment(a, b) else { continue };
            if segs.iter().any(|t| matches!(intersect(t, &s), IntersectionResult::Overlap(_))) {
                continue;
            }
            segs.push(s);
            let ok = trifree::ArrangementGraph::build(&segs).map(|g| g.is_triangle_free()).unwrap_or(false);
            if ok {
                placed = true;
                break;
            }
            segs.pop();
        }
        if !placed {
            return Err(GenError::Exhausted(ATTEMPTS));
        }
    }
    Ok(segs)
}

fn axis_segments(rng: &mut ChaCha8Rng, count: usize, grid: i64) -> Result<Vec<GeomObject>, GenError> {
    // Occupied intervals per (orientation, row) to reject collinear overlaps.
    let mut used: HashMap<(bool, i64), Vec<(i64, i64)>> = HashMap::new();
    let mut segs = Vec::with_capacity(count);
    let mut misses = 0;
    while segs.len() < count {
        let horizontal = rng.gen_bool(0.5);
        let row = rng.gen_range(0..=grid);
        let lo = rng.gen_range(0..grid);
        let hi = (lo + rng.gen_range(1..=4)).min(grid);
        let slot = used.entry((horizontal, row)).or_default();
        if slot.iter().any(|&(a, b)| lo < b && a < hi) {
            misses += 1;
            if misses > ATTEMPTS * count.max(1) {
                return Err(GenError::Exhausted(misses));
            }
            continue;
        }
        slot.push((lo, hi));
        segs.push(if horizontal { hseg(row, lo, hi) } else { GeomObject::segment(pt(row, lo), pt(row, hi)).unwrap() });
    }
    Ok(segs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_hrvl() {
        let inst = gen_random(&GenParams::Hrvl { lines: 0, pairs: 0, loose_rays: 0, grid: 10 }, 3).unwrap();
        assert!(inst.is_empty());
    }

    #[test]
    fn three_slope_counts() {
        let p = GenParams::ThreeSlopeLines { horizontal: 5, vertical: 3, diagonal: 2, grid: 8, triples: true };
        let inst = gen_random(&p, 11).unwrap();
        assert_eq!(inst.len(), 10);
        let dirs: BTreeSet<String> = inst.members().map(|m| m.orientation().to_string()).collect();
        assert_eq!(dirs.len(), 3);
    }

    #[test]
    fn deterministic_for_seed() {
        let p = GenParams::LPairs { count: 6, grid: 9 };
        assert_eq!(gen_random(&p, 5).unwrap(), gen_random(&p, 5).unwrap());
        assert_ne!(gen_random(&p, 5).unwrap(), gen_random(&p, 6).unwrap());
    }

    #[test]
    fn hrvl_family_shape() {
        let p = GenParams::Hrvl { lines: 4, pairs: 5, loose_rays: 2, grid: 20 };
        let inst = gen_random(&p, 1).unwrap();
        for m in inst.members() {
            match m {
                GeomObject::Line { dir, .. } => assert!(dir.is_vertical()),
                GeomObject::Ray { dir, .. } => assert!(dir.is_horizontal()),
                GeomObject::Segment { .. } => panic!("no segments expected"),
            }
        }
    }

    #[test]
    fn trifree_postcondition() {
        let inst = gen_random(&GenParams::TriFree { count: 10, grid: 12, axis_only: false }, 7).unwrap();
        let g = trifree::ArrangementGraph::build(&inst.plain_objects().unwrap()).unwrap();
        assert!(g.is_triangle_free());
    }

    #[test]
    fn impossible_params_rejected() {
        let p = GenParams::Vlhs { lines: 30, segments: 0, rows: 1, grid: 5 };
        assert!(matches!(gen_random(&p, 0), Err(GenError::InvalidParams(_))));
        assert!("nope".parse::<Family>().is_err());
    }
}
