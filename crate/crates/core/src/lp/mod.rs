//! The set-cover LP over candidate points and its exact solution.
//!
//! `min Σ x_p` subject to `Σ_{p hits union i} x_p >= 1` and `x >= 0`. The
//! upper bounds `x_p <= 1` never bind at an optimum and are left implicit.
//! The solver runs a rational tableau simplex with Bland's rule on the dual
//! packing problem `max Σ y_i` subject to `Σ_{i hit by p} y_i <= 1`, whose
//! all-slack basis is feasible from the start, and reads the primal values
//! off the slack columns of the final objective row.

pub mod round;

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::geom::{Point, Rational};
use crate::instance::{CandidateSet, Instance};

pub use round::{round_pairs_103approx, round_pairs_4approx, solve_kr_baseline, RoundingReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("union {0} contains no candidate point")]
    Uncovered(usize),
    #[error("the covering LP is infeasible")]
    Infeasible,
    #[error("union {union} is not {expected}")]
    Malformed { union: usize, expected: &'static str },
    #[error("{0}")]
    Inner(String),
}

/// One variable per candidate point, one covering row per union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpModel {
    pub points: Vec<Point>,
    /// Variables in each union's row.
    pub rows: Vec<Vec<usize>>,
    /// Variables on each member of each union.
    pub member_vars: Vec<Vec<Vec<usize>>>,
}

impl LpModel {
    pub fn variables(&self) -> usize {
        self.points.len()
    }

    /// Text dump: one line per constraint, variables named by point.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        writeln!(out, "minimize {} variables", self.points.len()).unwrap();
        for (i, p) in self.points.iter().enumerate() {
            writeln!(out, "var x{i} {} {}", p.x, p.y).unwrap();
        }
        for (i, row) in self.rows.iter().enumerate() {
            let terms: Vec<String> = row.iter().map(|v| format!("x{v}")).collect();
            writeln!(out, "c{i}: {} >= 1", terms.join(" + ")).unwrap();
        }
        out
    }
}

pub fn build_set_cover_lp(inst: &Instance, cands: &CandidateSet) -> Result<LpModel, LpError> {
    let mut rows = Vec::with_capacity(inst.unions.len());
    let mut member_vars = Vec::with_capacity(inst.unions.len());
    for (i, u) in inst.unions.iter().enumerate() {
        let per: Vec<Vec<usize>> = u
            .members
            .iter()
            .map(|m| (0..cands.points.len()).filter(|&p| m.contains(&cands.points[p])).collect())
            .collect();
        let mut row: Vec<usize> = per.iter().flatten().copied().collect();
        row.sort_unstable();
        row.dedup();
        if row.is_empty() {
            return Err(LpError::Uncovered(i));
        }
        rows.push(row);
        member_vars.push(per);
    }
    Ok(LpModel { points: cands.points.clone(), rows, member_vars })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalSolution {
    pub x: Vec<Rational>,
    /// Optimal dual: one value per union.
    pub y: Vec<Rational>,
    pub value: Rational,
}

impl FractionalSolution {
    pub fn mass(&self, vars: &[usize]) -> Rational {
        vars.iter().map(|&v| &self.x[v]).sum()
    }
}

/// Exact optimum. The result is checked for primal and dual feasibility
/// and equal objectives before it is returned.
pub fn solve_lp(model: &LpModel) -> Result<FractionalSolution, LpError> {
    let (k, n) = (model.variables(), model.rows.len());
    let width = n + k + 1;
    // Row p: Σ_{i hit by p} y_i + s_p = 1.
    let mut t: Vec<Vec<Rational>> = vec![vec![Rational::zero(); width]; k];
    for (i, row) in model.rows.iter().enumerate() {
        for &p in row {
            t[p][i] = Rational::one();
        }
    }
    for (p, r) in t.iter_mut().enumerate() {
        r[n + p] = Rational::one();
        r[width - 1] = Rational::one();
    }
    let mut basis: Vec<usize> = (n..n + k).collect();
    // Reduced costs c_j - z_j for the maximization.
    let mut obj: Vec<Rational> = (0..width).map(|j| if j < n { Rational::one() } else { Rational::zero() }).collect();

    while let Some(enter) = (0..n + k).find(|&j| obj[j].is_positive()) {
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..k {
            if t[r][enter].is_positive() {
                let ratio = &t[r][width - 1] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((r, _)) = leave else { return Err(LpError::Infeasible) };
        let piv = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = t[r].clone();
        for (q, row) in t.iter_mut().enumerate() {
            if q != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        let f = obj[enter].clone();
        for (v, pv) in obj.iter_mut().zip(&pivot_row) {
            *v -= &f * pv;
        }
        basis[r] = enter;
    }

    let mut y = vec![Rational::zero(); n];
    for (r, &b) in basis.iter().enumerate() {
        if b < n {
            y[b] = t[r][width - 1].clone();
        }
    }
    let x: Vec<Rational> = (0..k).map(|p| -obj[n + p].clone()).collect();
    let value: Rational = y.iter().sum();
    let sol = FractionalSolution { x, y, value };
    check_optimal(model, &sol)?;
    Ok(sol)
}

fn check_optimal(model: &LpModel, sol: &FractionalSolution) -> Result<(), LpError> {
    let bad = |what: &str| Err(LpError::Inner(format!("simplex produced {what}")));
    if sol.x.iter().any(|v| v.is_negative()) || sol.y.iter().any(|v| v.is_negative()) {
        return bad("a negative value");
    }
    if model.rows.iter().any(|row| sol.mass(row) < Rational::one()) {
        return bad("an infeasible primal");
    }
    let mut load = vec![Rational::zero(); model.variables()];
    for (i, row) in model.rows.iter().enumerate() {
        for &p in row {
            load[p] += &sol.y[i];
        }
    }
    if load.iter().any(|l| *l > Rational::one()) {
        return bad("an infeasible dual");
    }
    if sol.x.iter().sum::<Rational>() != sol.value {
        return bad("unequal objectives");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{ratio, GeomObject};
    use crate::instance::candidate_points;

    fn seg(x1: i64, y1: i64, x2: i64, y2: i64) -> GeomObject {
        GeomObject::segment(Point::from_ints(x1, y1), Point::from_ints(x2, y2)).unwrap()
    }

    fn lp_value(inst: &Instance) -> Rational {
        let m = build_set_cover_lp(inst, &candidate_points(inst)).unwrap();
        solve_lp(&m).unwrap().value
    }

    #[test]
    fn empty_model() {
        assert_eq!(lp_value(&Instance::default()), Rational::zero());
    }

    #[test]
    fn one_union_three_candidates() {
        let inst = Instance::from_objects([seg(0, 0, 2, 0)]);
        let c = candidate_points(&inst);
        let m = build_set_cover_lp(&inst, &c).unwrap();
        assert_eq!((m.rows.len(), m.rows[0].len()), (1, 3));
    }

    #[test]
    fn disjoint_segments() {
        assert_eq!(lp_value(&Instance::from_objects([seg(0, 0, 1, 0), seg(0, 5, 1, 5)])), Rational::from_integer(2.into()));
    }

    #[test]
    fn crossing_l() {
        let inst = Instance::new(vec![crate::instance::ObjectUnion::pair(seg(0, 0, 2, 0), seg(0, 0, 0, 2))]);
        assert_eq!(lp_value(&inst), Rational::one());
    }

    #[test]
    fn odd_cycle_is_fractional() {
        // Three segments pairwise meeting at distinct points: a triangle.
        let inst = Instance::from_objects([seg(0, 0, 4, 0), seg(0, 0, 2, 2), seg(4, 0, 2, 2)]);
        assert_eq!(lp_value(&inst), ratio(3, 2));
    }

    #[test]
    fn uncovered_union() {
        let inst = Instance::from_objects([seg(0, 0, 1, 0)]);
        let empty = CandidateSet::default();
        assert_eq!(build_set_cover_lp(&inst, &empty), Err(LpError::Uncovered(0)));
    }
}
