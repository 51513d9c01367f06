//! Line-oriented instance files.
//!
//! ```text
//! hitset-instance 1
//! name walkthrough
//! generator hand
//! seed 7
//! union line 2 0 0 1
//! union seg 0 1/3 4 1/3 ; line 5 0 0 1
//! union ray 3 2 -1 0
//! ```
//!
//! `seg x1 y1 x2 y2` gives two endpoints, `ray x y dx dy` an apex and the
//! direction it points in, `line x y dx dy` any point and a direction.
//! Members of a union are separated by `;`. Coordinates are integers or
//! `p/q` rationals. `#` starts a comment line.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{Instance, Metadata, ObjectUnion};
use crate::geom::{GeomObject, Point, Rational};

pub const INSTANCE_HEADER: &str = "hitset-instance 1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, {field}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub field: String,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, field: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError { line, field: field.into(), message: message.into() }
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "{INSTANCE_HEADER}").unwrap();
    if !inst.meta.name.is_empty() {
        writeln!(out, "name {}", inst.meta.name).unwrap();
    }
    if !inst.meta.generator.is_empty() {
        writeln!(out, "generator {}", inst.meta.generator).unwrap();
    }
    if let Some(seed) = inst.meta.seed {
        writeln!(out, "seed {seed}").unwrap();
    }
    for u in &inst.unions {
        let members: Vec<String> = u.members.iter().map(object_record).collect();
        writeln!(out, "union {}", members.join(" ; ")).unwrap();
    }
    out
}

fn object_record(obj: &GeomObject) -> String {
    match obj {
        GeomObject::Segment { a, b, .. } => format!("seg {} {} {} {}", a.x, a.y, b.x, b.y),
        GeomObject::Ray { apex, .. } => {
            let (dx, dy) = obj.direction_vector();
            format!("ray {} {} {} {}", apex.x, apex.y, dx, dy)
        }
        GeomObject::Line { anchor, dir } => format!("line {} {} {} {}", anchor.x, anchor.y, dir.dx(), dir.dy()),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, l)) if l == INSTANCE_HEADER => {}
        Some((n, _)) => return Err(ParseError::new(n, "header", format!("expected `{INSTANCE_HEADER}`"))),
        None => return Err(ParseError::new(0, "header", "empty document")),
    }
    let mut meta = Metadata::default();
    let mut unions = Vec::new();
    for (n, line) in lines {
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "name" => meta.name = rest.to_string(),
            "generator" => meta.generator = rest.to_string(),
            "seed" => {
                meta.seed = Some(rest.parse().map_err(|_| ParseError::new(n, "seed", "expected an unsigned integer"))?)
            }
            "union" => {
                let idx = unions.len();
                let mut members = Vec::new();
                for (k, rec) in rest.split(';').enumerate() {
                    members.push(parse_object(rec, n, idx, k)?);
                }
                unions.push(ObjectUnion { members });
            }
            other => return Err(ParseError::new(n, "record", format!("unknown record `{other}`"))),
        }
    }
    Ok(Instance { unions, meta })
}

fn parse_object(rec: &str, line: usize, union: usize, member: usize) -> Result<GeomObject, ParseError> {
    let at = format!("union {union} member {member}");
    let fields: Vec<&str> = rec.split_whitespace().collect();
    let Some((&kind, nums)) = fields.split_first() else {
        return Err(ParseError::new(line, at, "empty member"));
    };
    if nums.len() != 4 {
        return Err(ParseError::new(line, at, format!("`{kind}` takes 4 coordinates, got {}", nums.len())));
    }
    let names = ["x1", "y1", "x2", "y2"];
    let mut v = Vec::with_capacity(4);
    for (s, name) in nums.iter().zip(names) {
        let r = parse_rational(s)
            .ok_or_else(|| ParseError::new(line, format!("{at} {name}"), format!("bad rational `{s}`")))?;
        v.push(r);
    }
    let [a, b, c, d]: [Rational; 4] = v.try_into().unwrap();
    let obj = match kind {
        "seg" => GeomObject::segment(Point::new(a, b), Point::new(c, d)),
        "ray" => GeomObject::ray(Point::new(a, b), c, d),
        "line" => GeomObject::line(Point::new(a, b), c, d),
        other => return Err(ParseError::new(line, at, format!("unknown object kind `{other}`"))),
    };
    obj.map_err(|e| ParseError::new(line, at, e.to_string()))
}
