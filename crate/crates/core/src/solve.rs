//! Solver selection by name or by the shape of an instance.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::geom::GeomObject;
use crate::hrvl::{self, HrvlError};
use crate::instance::Instance;
use crate::lines::{self, LinesError};
use crate::lp::{self, LpError};
use crate::solution::HittingSet;
use crate::stab1d::solve_per_line;
use crate::trifree::{self, TrifreeError};
use crate::vlhs::{self, VlhsError};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Lines(#[from] LinesError),
    #[error(transparent)]
    Hrvl(#[from] HrvlError),
    #[error(transparent)]
    Vlhs(#[from] VlhsError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Trifree(#[from] TrifreeError),
    #[error("solver {0} needs one object per union")]
    NotPlain(SolverKind),
    #[error("solver {solver} does not apply: {reason}")]
    NotApplicable { solver: SolverKind, reason: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverKind {
    Stab1d,
    TwoSlope,
    ThreeSlopeGreedy,
    Hrvl,
    Vlhs53,
    Vrays53,
    Pairs4,
    Pairs103,
    Kr,
    Trifree,
}

impl SolverKind {
    pub const ALL: [SolverKind; 10] = [
        SolverKind::Stab1d,
        SolverKind::TwoSlope,
        SolverKind::ThreeSlopeGreedy,
        SolverKind::Hrvl,
        SolverKind::Vlhs53,
        SolverKind::Vrays53,
        SolverKind::Pairs4,
        SolverKind::Pairs103,
        SolverKind::Kr,
        SolverKind::Trifree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Stab1d => "stab1d",
            SolverKind::TwoSlope => "two-slope",
            SolverKind::ThreeSlopeGreedy => "three-slope-greedy",
            SolverKind::Hrvl => "hrvl",
            SolverKind::Vlhs53 => "vlhs53",
            SolverKind::Vrays53 => "vrays53",
            SolverKind::Pairs4 => "pairs4",
            SolverKind::Pairs103 => "pairs103",
            SolverKind::Kr => "kr",
            SolverKind::Trifree => "trifree",
        }
    }

    /// Whether the solver's answer is always optimal.
    pub fn is_exact(self) -> bool {
        matches!(self, SolverKind::Stab1d | SolverKind::TwoSlope | SolverKind::Hrvl)
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SolverKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<&str> = SolverKind::ALL.iter().map(|k| k.name()).collect();
            format!("unknown solver {s:?}, expected one of {}", names.join(", "))
        })
    }
}

fn is_line(o: &GeomObject) -> bool {
    matches!(o, GeomObject::Line { .. })
}

fn is_hseg(o: &GeomObject) -> bool {
    matches!(o, GeomObject::Segment { .. }) && o.orientation().is_horizontal()
}

fn is_vline(o: &GeomObject) -> bool {
    is_line(o) && o.orientation().is_vertical()
}

fn is_vseg(o: &GeomObject) -> bool {
    matches!(o, GeomObject::Segment { .. }) && o.orientation().is_vertical()
}

fn is_down_ray(o: &GeomObject) -> bool {
    matches!(o, GeomObject::Ray { forward: false, .. }) && o.orientation().is_vertical()
}

fn is_hray(o: &GeomObject) -> bool {
    matches!(o, GeomObject::Ray { .. }) && o.orientation().is_horizontal()
}

fn pairs_of(inst: &Instance, first: fn(&GeomObject) -> bool, second: fn(&GeomObject) -> bool) -> bool {
    inst.unions.iter().all(|u| match u.members.as_slice() {
        [a, b] => (first(a) && second(b)) || (first(b) && second(a)),
        _ => false,
    })
}

/// The most specific solver that accepts the instance.
pub fn detect(inst: &Instance) -> SolverKind {
    let Some(objs) = inst.plain_objects() else {
        return if pairs_of(inst, is_hseg, is_vline) {
            SolverKind::Pairs103
        } else if pairs_of(inst, is_hseg, is_vseg) {
            SolverKind::Pairs4
        } else {
            SolverKind::Kr
        };
    };
    let mut dirs: Vec<_> = objs.iter().map(|o| o.orientation()).collect();
    dirs.sort();
    dirs.dedup();
    if dirs.len() <= 1 {
        SolverKind::Stab1d
    } else if objs.iter().all(is_line) && dirs.len() == 2 {
        SolverKind::TwoSlope
    } else if objs.iter().all(is_line) && dirs.len() == 3 {
        SolverKind::ThreeSlopeGreedy
    } else if objs.iter().all(|o| is_vline(o) || is_hray(o)) {
        SolverKind::Hrvl
    } else if objs.iter().all(|o| is_vline(o) || is_hseg(o)) {
        SolverKind::Vlhs53
    } else if objs.iter().all(|o| is_vline(o) || is_down_ray(o) || is_hseg(o)) {
        SolverKind::Vrays53
    } else if objs.iter().all(|o| matches!(o, GeomObject::Segment { .. }))
        && trifree::ArrangementGraph::build(&objs).is_ok_and(|g| g.is_triangle_free())
    {
        SolverKind::Trifree
    } else {
        SolverKind::Kr
    }
}

pub fn solve(inst: &Instance, kind: SolverKind) -> Result<HittingSet, Error> {
    let plain = || inst.plain_objects().ok_or(Error::NotPlain(kind));
    Ok(match kind {
        SolverKind::Stab1d => {
            let objs = plain()?;
            if objs.windows(2).any(|w| w[0].orientation() != w[1].orientation()) {
                return Err(Error::NotApplicable { solver: kind, reason: "objects of several orientations" });
            }
            solve_per_line(&objs)
        }
        SolverKind::TwoSlope => lines::solve_two_slopes(&plain()?)?,
        SolverKind::ThreeSlopeGreedy => lines::solve_three_slopes_greedy(&plain()?)?,
        SolverKind::Hrvl => hrvl::solve_hrvl(&plain()?)?,
        SolverKind::Vlhs53 => vlhs::solve_vlhs(&plain()?)?,
        SolverKind::Vrays53 => vlhs::solve_vrays_hs(&plain()?)?,
        SolverKind::Pairs4 => lp::round_pairs_4approx(inst)?.set,
        SolverKind::Pairs103 => lp::round_pairs_103approx(inst)?.set,
        SolverKind::Kr => lp::solve_kr_baseline(inst)?.set,
        SolverKind::Trifree => trifree::solve_triangle_free(&plain()?)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, Point};
    use crate::instance::ObjectUnion;

    fn seg(x1: i64, y1: i64, x2: i64, y2: i64) -> GeomObject {
        GeomObject::segment(Point::from_ints(x1, y1), Point::from_ints(x2, y2)).unwrap()
    }

    fn line(x: i64, y: i64, dx: i64, dy: i64) -> GeomObject {
        GeomObject::line(Point::from_ints(x, y), rat(dx), rat(dy)).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for k in SolverKind::ALL {
            assert_eq!(k.name().parse::<SolverKind>(), Ok(k));
        }
        assert!("greedy".parse::<SolverKind>().is_err());
    }

    #[test]
    fn detection() {
        let h = Instance::from_objects([seg(0, 0, 1, 0), seg(2, 0, 3, 0)]);
        assert_eq!(detect(&h), SolverKind::Stab1d);
        let two = Instance::from_objects([line(0, 0, 1, 0), line(0, 0, 0, 1)]);
        assert_eq!(detect(&two), SolverKind::TwoSlope);
        let hv = Instance::from_objects([line(0, 0, 0, 1), seg(-1, 0, 1, 0)]);
        assert_eq!(detect(&hv), SolverKind::Vlhs53);
        let rays = Instance::from_objects([line(0, 0, 0, 1), GeomObject::ray(Point::from_ints(0, 0), rat(1), rat(0)).unwrap()]);
        assert_eq!(detect(&rays), SolverKind::Hrvl);
        let l = Instance::new(vec![ObjectUnion::pair(seg(0, 0, 2, 0), seg(0, 0, 0, 2))]);
        assert_eq!(detect(&l), SolverKind::Pairs4);
        let tri = Instance::from_objects([seg(0, 0, 4, 0), seg(1, -1, 1, 1), seg(0, 2, 4, 6)]);
        assert_eq!(detect(&tri), SolverKind::Trifree);
    }

    #[test]
    fn dispatch_errors() {
        let l = Instance::new(vec![ObjectUnion::pair(seg(0, 0, 2, 0), seg(0, 0, 0, 2))]);
        assert!(matches!(solve(&l, SolverKind::Hrvl), Err(Error::NotPlain(SolverKind::Hrvl))));
        assert_eq!(solve(&l, SolverKind::Kr).unwrap().len(), 1);
        let mixed = Instance::from_objects([seg(0, 0, 2, 0), seg(0, 0, 0, 2)]);
        assert!(solve(&mixed, SolverKind::Stab1d).is_err());
    }
}
