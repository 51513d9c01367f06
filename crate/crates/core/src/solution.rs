//! Hitting-set values and their text file format.
//!
//! ```text
//! hitset-solution 1
//! solver hrvl
//! point 4 3
//! point 3/2 -1 triple
//! ```

use std::fmt::Write as _;

use crate::geom::{Point, Rational};
use crate::instance::format::{parse_rational, ParseError};

/// How a point was chosen. `Triple` marks points that hit three objects at
/// once (3-hitters, 3-intersections) so renderers can tell them apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HitRole {
    Plain,
    Triple,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HitPoint {
    pub point: Point,
    pub role: HitRole,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HittingSet {
    pub points: Vec<HitPoint>,
}

impl HittingSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, point: Point) {
        self.points.push(HitPoint { point, role: HitRole::Plain });
    }

    pub fn push_triple(&mut self, point: Point) {
        self.points.push(HitPoint { point, role: HitRole::Triple });
    }

    pub fn extend(&mut self, other: HittingSet) {
        self.points.extend(other.points);
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn positions(&self) -> Vec<Point> {
        self.points.iter().map(|h| h.point.clone()).collect()
    }

    pub fn from_points(points: impl IntoIterator<Item = Point>) -> Self {
        HittingSet { points: points.into_iter().map(|point| HitPoint { point, role: HitRole::Plain }).collect() }
    }
}

/// A solution file: the solver that produced it and its points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    pub solver: String,
    pub set: HittingSet,
}

pub const SOLUTION_HEADER: &str = "hitset-solution 1";

pub fn serialize_solution(sol: &SolutionFile) -> String {
    let mut out = String::new();
    writeln!(out, "{SOLUTION_HEADER}").unwrap();
    writeln!(out, "solver {}", sol.solver).unwrap();
    for h in &sol.set.points {
        write!(out, "point {} {}", h.point.x, h.point.y).unwrap();
        if h.role == HitRole::Triple {
            out.push_str(" triple");
        }
        out.push('\n');
    }
    out
}

pub fn parse_solution(text: &str) -> Result<SolutionFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, l)) if l == SOLUTION_HEADER => {}
        Some((n, _)) => return Err(ParseError::new(n, "header", format!("expected `{SOLUTION_HEADER}`"))),
        None => return Err(ParseError::new(0, "header", "empty document")),
    }
    let mut sol = SolutionFile { solver: String::new(), set: HittingSet::new() };
    for (n, line) in lines {
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match key {
            "solver" => sol.solver = rest.trim().to_string(),
            "point" => {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                if fields.len() != 2 && fields.len() != 3 {
                    return Err(ParseError::new(n, "point", "expected `point x y [triple]`"));
                }
                let x: Rational = parse_rational(fields[0]).ok_or_else(|| ParseError::new(n, "x", "bad rational"))?;
                let y: Rational = parse_rational(fields[1]).ok_or_else(|| ParseError::new(n, "y", "bad rational"))?;
                let role = match fields.get(2) {
                    None => HitRole::Plain,
                    Some(&"triple") => HitRole::Triple,
                    Some(other) => return Err(ParseError::new(n, "role", format!("unknown role `{other}`"))),
                };
                sol.set.points.push(HitPoint { point: Point::new(x, y), role });
            }
            other => return Err(ParseError::new(n, "record", format!("unknown record `{other}`"))),
        }
    }
    Ok(sol)
}
