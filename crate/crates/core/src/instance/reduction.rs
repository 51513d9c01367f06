//! Hitting-set instances built from 3SAT formulas.
//!
//! Every variable owns two rows of `2m + 2` horizontal unit segments, a top
//! row and a bottom row. Consecutive segments in a row overlap and no three
//! do, so a row is hit by `m + 1` points in one of two parities. `n` black
//! vertical lines cross every row inside the first segment only, and `n`
//! more inside the last segment only; a row that spends a point on a black
//! line at each end needs `m + 2` points. With `N = 4mn + 4n + 2n` the
//! budget `N/2` forces exactly `n` rows to take the black-line parity.
//!
//! Clause `j` becomes a vertical line at `x = X_j`. In the top row of a
//! variable appearing positively it passes through the overlap of segments
//! `2j+1, 2j+2`; negatively, through the overlap of `2j, 2j+1`; elsewhere it
//! crosses a single segment. A top row in black-line parity reads as true.
//! Clause lines are not counted in `N`: the formula is satisfiable exactly
//! when the optimum is `N/2`.
//!
//! Coordinates are multiples of 1/16. Segment starts are even sixteenths and
//! each `X_j` is odd, so no clause line passes through a segment endpoint.


use thiserror::Error;

use super::generate::GenError;
use super::{candidate_points, Instance};
use crate::geom::{rat, ratio, GeomObject, Point, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    /// Zero-based variable index.
    pub var: usize,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("clause {clause} uses variable {var} but only {declared} are declared")]
    UndeclaredVariable { clause: usize, var: usize, declared: usize },
    #[error("line {line}: {message}")]
    Dimacs { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub variable_count: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<[Literal; 3]>) -> Result<Self, CnfError> {
        for (c, clause) in clauses.iter().enumerate() {
            if let Some(l) = clause.iter().find(|l| l.var >= variable_count) {
                return Err(CnfError::UndeclaredVariable { clause: c, var: l.var, declared: variable_count });
            }
        }
        Ok(CnfFormula { variable_count, clauses })
    }

    /// Builds a formula from DIMACS-style signed, one-based literals.
    pub fn from_signed(variable_count: usize, clauses: &[[i32; 3]]) -> Result<Self, CnfError> {
        let lits = clauses.iter().map(|c| c.map(signed_literal)).collect();
        Self::new(variable_count, lits)
    }

    pub fn parse_dimacs(text: &str) -> Result<Self, CnfError> {
        let mut declared = None;
        let mut pending: Vec<i32> = Vec::new();
        let mut clauses = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            let err = |message: String| CnfError::Dimacs { line: i + 1, message };
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let f: Vec<&str> = rest.split_whitespace().collect();
                if f.len() != 3 || f[0] != "cnf" {
                    return Err(err("expected `p cnf <vars> <clauses>`".into()));
                }
                declared = Some(f[1].parse::<usize>().map_err(|_| err("bad variable count".into()))?);
                continue;
            }
            for tok in line.split_whitespace() {
                let v: i32 = tok.parse().map_err(|_| err(format!("bad literal `{tok}`")))?;
                if v != 0 {
                    pending.push(v);
                    continue;
                }
                let clause: [i32; 3] = std::mem::take(&mut pending)
                    .try_into()
                    .map_err(|c: Vec<i32>| err(format!("clause has {} literals, expected 3", c.len())))?;
                clauses.push(clause);
            }
        }
        if !pending.is_empty() {
            return Err(CnfError::Dimacs { line: text.lines().count(), message: "unterminated clause".into() });
        }
        let n = declared.ok_or(CnfError::Dimacs { line: 0, message: "missing `p cnf` header".into() })?;
        Self::from_signed(n, &clauses)
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| assignment[l.var] == l.positive))
    }
}

fn signed_literal(v: i32) -> Literal {
    Literal { var: v.unsigned_abs() as usize - 1, positive: v > 0 }
}

/// Counts describing a reduction instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionInfo {
    pub variables: usize,
    pub clauses: usize,
    pub horizontal_segments: usize,
    pub black_lines: usize,
    pub clause_lines: usize,
    /// `N/2`, the optimum exactly when the formula is satisfiable.
    pub target: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    Green,
    Red,
    Absent,
}

const SEG: i64 = 16;

fn clause_x(j: usize) -> i64 {
    25 + 24 * j as i64
}

/// Common right end of every row for `m` clauses.
fn row_end(m: usize) -> i64 {
    24 * m as i64 + 16
}

/// Segments as `(start, end)` in sixteenths.
type Span = (i64, i64);

/// Lays out one row of `2m + 2` segments from 0 to `row_end(m)`.
///
/// Consecutive segments overlap and segments two apart are disjoint, so
/// the sorted endpoints `a_1 < b_0 < a_2 < b_1 < ...` cut the row into
/// alternating exclusive parts and overlaps. Zone `2k` is the part of
/// segment `k` alone, zone `2k + 1` the overlap of `k` and `k + 1`. Clause
/// column `j` falls in zone `4j + 3` for a green slot (segments `2j + 1`,
/// `2j + 2`), `4j + 1` for a red one (`2j`, `2j + 1`) and `4j + 2` when the
/// literal is absent. Breakpoints are even and columns odd, so no column
/// passes through an endpoint.
fn layout_row(slots: &[Slot]) -> Vec<Span> {
    let m = slots.len();
    let zone = |j: usize| {
        4 * j + match slots[j] {
            Slot::Green => 3,
            Slot::Red => 1,
            Slot::Absent => 2,
        }
    };
    // p[z] is the left edge of zone z.
    let breaks = 4 * m + 2;
    let mut p = vec![0i64; breaks + 1];
    let mut next = 1;
    let mut place = |upto: usize, from: i64| {
        let mut x = from;
        while next <= upto {
            p[next] = x;
            x += 2;
            next += 1;
        }
    };
    place(if m > 0 { zone(0) } else { breaks }, 4);
    for j in 0..m {
        place(if j + 1 < m { zone(j + 1) } else { breaks }, clause_x(j) + 1);
    }
    // Segment k starts at the left edge of zone 2k - 1 and ends at the
    // right edge of zone 2k + 1.
    (0..2 * m + 2)
        .map(|k| {
            let a = if k == 0 { 0 } else { p[2 * k - 1] };
            let b = if k == 2 * m + 1 { row_end(m) } else { p[2 * k + 2] };
            (a, b)
        })
        .collect()
}

fn sixteenth(v: i64) -> Rational {
    ratio(v, SEG)
}

pub fn reduction_info(f: &CnfFormula) -> ReductionInfo {
    let (n, m) = (f.variable_count, f.clauses.len());
    let h = 4 * m * n + 4 * n;
    let clause_lines = f.clauses.iter().filter(|c| !is_tautology(c)).count();
    ReductionInfo {
        variables: n,
        clauses: m,
        horizontal_segments: h,
        black_lines: 2 * n,
        clause_lines,
        target: (h + 2 * n) / 2,
    }
}

fn is_tautology(c: &[Literal; 3]) -> bool {
    c.iter().any(|a| c.iter().any(|b| a.var == b.var && a.positive != b.positive))
}

/// Builds the instance; the layout is checked before it is returned.
///
/// A clause holding both `x` and `!x` is always satisfied and gets no line.
pub fn gen_3sat_reduction(f: &CnfFormula) -> Result<(Instance, ReductionInfo), GenError> {
    let (n, m) = (f.variable_count, f.clauses.len());
    let info = reduction_info(f);
    let mut top_slots = vec![vec![Slot::Absent; m]; n];
    for (j, c) in f.clauses.iter().enumerate() {
        if is_tautology(c) {
            continue;
        }
        for l in c {
            top_slots[l.var][j] = if l.positive { Slot::Green } else { Slot::Red };
        }
    }
    let bottom = vec![Slot::Absent; m];
    let end = row_end(m);
    let starts_for = |slots: &Vec<Slot>| layout_row(slots);

    let mut objects = Vec::new();
    let mut row_ys = Vec::new();
    for (i, slots) in top_slots.iter().enumerate() {
        let top_y = 2 * (n - i) as i64;
        for (y, starts) in [(top_y, starts_for(slots)), (top_y - 1, starts_for(&bottom))] {
            row_ys.push(y);
            for (a, b) in starts {
                let s = GeomObject::segment(Point::new(sixteenth(a), rat(y)), Point::new(sixteenth(b), rat(y)));
                objects.push(s.expect("unit segment"));
            }
        }
    }
    let vertical = |x: Rational| GeomObject::line(Point::new(x, Rational::from_integer(0.into())), rat(0), rat(1)).unwrap();
    let step = ratio(1, 4 * (n as i64 + 1));
    for k in 1..=n as i64 {
        objects.push(vertical(&step * Rational::from_integer(k.into())));
    }
    let right_edge = sixteenth(end);
    for k in 1..=n as i64 {
        objects.push(vertical(&right_edge - &step * Rational::from_integer(k.into())));
    }
    let mut clause_xs = Vec::new();
    for (j, c) in f.clauses.iter().enumerate() {
        if !is_tautology(c) {
            clause_xs.push(sixteenth(clause_x(j)));
            objects.push(vertical(sixteenth(clause_x(j))));
        }
    }

    let inst = Instance::from_objects(objects).with_meta(&format!("sat3-n{n}-m{m}"), "sat3", None);
    check_incidences(&inst, &info, &top_slots, f, &clause_xs).map_err(GenError::Layout)?;
    Ok((inst, info))
}

/// Asserts the incidence constraints: no point on three horizontal
/// segments, black-line points on at most one, and clause lines meeting
/// each top row exactly as the literals prescribe.
fn check_incidences(
    inst: &Instance,
    info: &ReductionInfo,
    top_slots: &[Vec<Slot>],
    f: &CnfFormula,
    clause_xs: &[Rational],
) -> Result<(), String> {
    let objs = inst.plain_objects().unwrap();
    let (horiz, rest) = objs.split_at(info.horizontal_segments);
    let black = &rest[..info.black_lines];
    for p in candidate_points(inst).points {
        let hits = horiz.iter().filter(|s| s.contains(&p)).count();
        if hits > 2 || (hits > 1 && black.iter().any(|l| l.contains(&p))) {
            return Err(format!("point {p} meets {hits} horizontal segments"));
        }
    }
    let n = f.variable_count;
    let mut clause_index = 0;
    for (j, c) in f.clauses.iter().enumerate() {
        if is_tautology(c) {
            continue;
        }
        let x = &clause_xs[clause_index];
        clause_index += 1;
        for (i, slots) in top_slots.iter().enumerate() {
            for (row, slot) in [(2 * i, slots[j]), (2 * i + 1, Slot::Absent)] {
                let y = Rational::from_integer((2 * (n - i) as i64 - (row % 2) as i64).into());
                let p = Point::new(x.clone(), y);
                let hits = horiz.iter().filter(|s| s.contains(&p)).count();
                let want = if slot == Slot::Absent { 1 } else { 2 };
                if hits != want {
                    return Err(format!("clause {j} meets row {row} in {hits} segments"));
                }
            }
        }
    }
    Ok(())
}
