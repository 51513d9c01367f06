//! Rounding the covering LP for unions of segments and lines.
//!
//! Each union is filtered to the member carrying enough fractional mass,
//! and the filtered single-member instance is solved combinatorially.

use num_traits::{One, Zero};

use super::{build_set_cover_lp, solve_lp, FractionalSolution, LpError, LpModel};
use crate::geom::{GeomObject, Orientation, Rational};
use crate::instance::{candidate_points, Instance};
use crate::solution::HittingSet;
use crate::stab1d::solve_per_line;
use crate::vlhs;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundingReport {
    pub set: HittingSet,
    pub lp_value: Rational,
    /// The single-member instance after filtering, one object per union.
    pub filtered: Instance,
    /// Whether `y_p = min(2 x_p, 1)` covers every filtered constraint.
    pub doubled_feasible: bool,
    /// LP optimum of the filtered instance over its own candidates, when
    /// the inner solver's bound is stated against it.
    pub filtered_lp_value: Option<Rational>,
}

fn relax(inst: &Instance) -> Result<(LpModel, FractionalSolution), LpError> {
    let model = build_set_cover_lp(inst, &candidate_points(inst))?;
    let sol = solve_lp(&model)?;
    Ok((model, sol))
}

pub fn lp_value(inst: &Instance) -> Result<Rational, LpError> {
    Ok(relax(inst)?.1.value)
}

/// Index of the horizontal member and of the other member, or an error if
/// the union is not one horizontal segment plus one vertical `want`.
fn split_pair(inst: &Instance, want_line: bool) -> Result<Vec<(usize, usize)>, LpError> {
    let expected = if want_line { "a horizontal segment plus a vertical line" } else { "a horizontal plus a vertical segment" };
    inst.unions
        .iter()
        .enumerate()
        .map(|(i, u)| {
            let err = LpError::Malformed { union: i, expected };
            let [a, b] = u.members.as_slice() else { return Err(err) };
            let is_h = |o: &GeomObject| matches!(o, GeomObject::Segment { .. }) && o.orientation().is_horizontal();
            let is_v = |o: &GeomObject| {
                o.orientation().is_vertical()
                    && if want_line { matches!(o, GeomObject::Line { .. }) } else { matches!(o, GeomObject::Segment { .. }) }
            };
            match (is_h(a) && is_v(b), is_h(b) && is_v(a)) {
                (true, _) => Ok((0, 1)),
                (_, true) => Ok((1, 0)),
                _ => Err(err),
            }
        })
        .collect()
}

/// Keeps the horizontal member when it carries at least half the mass.
fn filter_half(
    inst: &Instance,
    model: &LpModel,
    sol: &FractionalSolution,
    roles: &[(usize, usize)],
) -> (Vec<GeomObject>, Vec<Vec<usize>>) {
    let half = Rational::new(1.into(), 2.into());
    let mut objs = Vec::new();
    let mut vars = Vec::new();
    for (i, &(h, v)) in roles.iter().enumerate() {
        let k = if sol.mass(&model.member_vars[i][h]) >= half { h } else { v };
        objs.push(inst.unions[i].members[k].clone());
        vars.push(model.member_vars[i][k].clone());
    }
    (objs, vars)
}

fn doubled_feasible(sol: &FractionalSolution, rows: &[Vec<usize>]) -> bool {
    let y: Vec<Rational> = sol.x.iter().map(|x| (x * Rational::from_integer(2.into())).min(Rational::one())).collect();
    rows.iter().all(|r| r.iter().map(|&p| &y[p]).sum::<Rational>() >= Rational::one())
}

/// Horizontal + vertical segment pairs: at most `4 LP*` points.
pub fn round_pairs_4approx(inst: &Instance) -> Result<RoundingReport, LpError> {
    let roles = split_pair(inst, false)?;
    let (model, sol) = relax(inst)?;
    let (objs, rows) = filter_half(inst, &model, &sol, &roles);
    let set = solve_per_line(&objs);
    Ok(RoundingReport {
        set,
        lp_value: sol.value.clone(),
        doubled_feasible: doubled_feasible(&sol, &rows),
        filtered: Instance::from_objects(objs),
        filtered_lp_value: None,
    })
}

/// Horizontal segment + vertical line pairs: the filtered instance goes to
/// the 5/3 solver, for at most `10/3 LP*` points.
pub fn round_pairs_103approx(inst: &Instance) -> Result<RoundingReport, LpError> {
    let roles = split_pair(inst, true)?;
    let (model, sol) = relax(inst)?;
    let (objs, rows) = filter_half(inst, &model, &sol, &roles);
    let set = vlhs::solve_vlhs(&objs).map_err(|e| LpError::Inner(e.to_string()))?;
    let filtered = Instance::from_objects(objs);
    let filtered_lp_value = Some(lp_value(&filtered)?);
    Ok(RoundingReport {
        set,
        lp_value: sol.value.clone(),
        doubled_feasible: doubled_feasible(&sol, &rows),
        filtered,
        filtered_lp_value,
    })
}

/// Unions of at most `k` members over `r` orientations: at most `k r LP*`
/// points. Each union keeps its member of largest LP mass (at least `1/k`,
/// first member on ties), then every orientation is solved exactly by
/// stabbing along each supporting line. With `k = 1` the LP is skipped.
pub fn solve_kr_baseline(inst: &Instance) -> Result<RoundingReport, LpError> {
    if inst.max_union_size() <= 1 {
        let objs: Vec<GeomObject> = inst.members().cloned().collect();
        return Ok(RoundingReport {
            set: solve_per_line(&objs),
            lp_value: Rational::zero(),
            filtered: inst.clone(),
            doubled_feasible: true,
            filtered_lp_value: None,
        });
    }
    let (model, sol) = relax(inst)?;
    let mut objs = Vec::with_capacity(inst.unions.len());
    for (i, u) in inst.unions.iter().enumerate() {
        let masses: Vec<Rational> = model.member_vars[i].iter().map(|vs| sol.mass(vs)).collect();
        let best = (0..masses.len()).fold(0, |b, k| if masses[k] > masses[b] { k } else { b });
        objs.push(u.members[best].clone());
    }
    Ok(RoundingReport {
        set: solve_per_line(&objs),
        lp_value: sol.value.clone(),
        filtered: Instance::from_objects(objs),
        doubled_feasible: true,
        filtered_lp_value: None,
    })
}

/// `(k, r)`: largest union size and number of orientation classes.
pub fn k_and_r(inst: &Instance) -> (usize, usize) {
    let mut dirs: Vec<&Orientation> = inst.members().map(|m| m.orientation()).collect();
    dirs.sort();
    dirs.dedup();
    (inst.max_union_size(), dirs.len())
}
