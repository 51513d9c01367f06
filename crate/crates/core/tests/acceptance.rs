//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use hitset::geom::ratio;
use hitset::hrvl::hrvl_report;
use hitset::instance::{candidate_points, gen_3sat_reduction, gen_random, parse_instance, CnfFormula, GenParams};
use hitset::lines::{census, opt2_count, solve_three_slopes_greedy, three_intersections};
use hitset::lp::round::{k_and_r, lp_value, round_pairs_103approx, round_pairs_4approx, solve_kr_baseline};
use hitset::oracle::{all_certified, exact_min_hitting_set, sat_brute_force, verify_hitting_set, OracleOptions};
use hitset::solve::{solve, SolverKind};
use hitset::trifree::{peel, ArrangementGraph, PeelOptions};
use hitset::vlhs::{vlhs_report, vrays_report};
use hitset::{Instance, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn opt(inst: &Instance) -> usize {
    exact_min_hitting_set(inst, &candidate_points(inst), OracleOptions::unguarded()).expect("oracle").optimum
}

fn frac(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Instances collected along the way for the cross-solver check.
#[derive(Default)]
struct Pool {
    all: Vec<Instance>,
}

fn exact_hrvl(pool: &mut Pool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let runs = 240;
    let mut three = 0;
    for seed in 0..runs {
        let lines = rng.gen_range(0..=5);
        let params = GenParams::Hrvl {
            lines,
            pairs: rng.gen_range(0..=5),
            loose_rays: rng.gen_range(0..=2),
            grid: rng.gen_range(lines.max(1) as i64..=20),
        };
        let inst = gen_random(&params, seed).map_err(|e| e.to_string())?;
        let objs = inst.plain_objects().unwrap();
        let r = hrvl_report(&objs).map_err(|e| e.to_string())?;
        let best = opt(&inst);
        ensure(r.set.len() == best, || format!("seed {seed}: solver {} vs optimum {best}", r.set.len()))?;
        ensure(all_certified(&verify_hitting_set(&inst, &r.set.positions())), || format!("seed {seed}: infeasible"))?;
        ensure(r.three_hitters.len() == r.max_matching, || format!("seed {seed}: 3-hitters not maximum"))?;
        ensure(r.hitters_separated(), || format!("seed {seed}: l-hitters not left of r-hitters"))?;
        let shadowed = r.shadowed_benches();
        ensure(shadowed.is_empty(), || format!("seed {seed}: set-aside lines {shadowed:?} meet a core 3-hit behind them"))?;
        three += r.three_hitters.len();
        pool.all.push(inst);
    }
    Ok(format!("{runs} instances exact, {three} three-hitters"))
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn walkthrough() -> Outcome {
    let text = std::fs::read_to_string(golden("sweep_walkthrough.instance")).map_err(|e| e.to_string())?;
    let inst = parse_instance(&text).map_err(|e| e.to_string())?;
    let r = hrvl_report(&inst.plain_objects().unwrap()).map_err(|e| e.to_string())?;
    let got: Vec<String> =
        r.three_hitters.iter().map(|&(l, s)| format!("({},{})", r.line_label(l), r.pair_label(s))).collect();
    ensure(got == ["(l2,c)", "(l3,b)", "(l4,f)"], || format!("three-hitters {got:?}"))?;
    ensure(r.set.len() == 8, || format!("{} points", r.set.len()))?;
    let trace = std::fs::read_to_string(golden("sweep_walkthrough.trace")).map_err(|e| e.to_string())?;
    ensure(r.trace_text() == trace, || "trace differs from golden file".into())?;
    Ok(format!("{} 8 points, trace matches", got.join(" ")))
}

fn opt2_formula(pool: &mut Pool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let runs = 120;
    for seed in 0..runs {
        let params = GenParams::ThreeSlopeLines {
            horizontal: rng.gen_range(0..=5),
            vertical: rng.gen_range(0..=5),
            diagonal: rng.gen_range(0..=5),
            grid: 6,
            triples: false,
        };
        let inst = gen_random(&params, seed).map_err(|e| e.to_string())?;
        let objs = inst.plain_objects().unwrap();
        ensure(three_intersections(&objs).map_err(|e| e.to_string())?.is_empty(), || format!("seed {seed}: triple"))?;
        let c = census(&objs).map_err(|e| e.to_string())?;
        let formula = opt2_count(c.x, c.y, c.z).map_err(|e| e.to_string())?;
        let best = opt(&inst);
        ensure(formula == best, || format!("seed {seed}: formula {formula} vs optimum {best}"))?;
        pool.all.push(inst);
    }
    Ok(format!("{runs} instances"))
}

fn greedy_three_slopes(pool: &mut Pool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let runs = 240;
    let (mut worst, mut above_one) = (Rational::from_integer(0.into()), 0);
    for seed in 0..runs {
        let h = rng.gen_range(1..=4);
        let v = rng.gen_range(1..=(8 - h).min(4));
        let d = rng.gen_range(1..=(9 - h - v).min(4));
        let params = GenParams::ThreeSlopeLines { horizontal: h, vertical: v, diagonal: d, grid: 4, triples: true };
        let inst = gen_random(&params, 1000 + seed).map_err(|e| e.to_string())?;
        let got = solve_three_slopes_greedy(&inst.plain_objects().unwrap()).map_err(|e| e.to_string())?.len();
        let best = opt(&inst);
        let r = ratio(got as i64, best.max(1) as i64);
        ensure(r <= ratio(7, 5), || format!("seed {seed}: {got}/{best}"))?;
        if got > best {
            above_one += 1;
        }
        worst = worst.max(r);
        pool.all.push(inst);
    }
    ensure(above_one > 0, || "greedy was optimal on every instance".into())?;
    Ok(format!("{runs} instances, worst ratio {worst}, {above_one} suboptimal"))
}

fn five_thirds(pool: &mut Pool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let runs = 220;
    let mut worst = Rational::from_integer(0.into());
    for seed in 0..runs {
        for rays in [false, true] {
            let verticals = rng.gen_range(0..=5);
            let segments = rng.gen_range(0..=10 - verticals);
            let rows = rng.gen_range(1..=3);
            let params = if rays {
                GenParams::VraysHs { rays: verticals, segments, rows, grid: 10 }
            } else {
                GenParams::Vlhs { lines: verticals, segments, rows, grid: 10 }
            };
            let inst = gen_random(&params, seed).map_err(|e| e.to_string())?;
            let objs = inst.plain_objects().unwrap();
            let rep = if rays { vrays_report(&objs) } else { vlhs_report(&objs) }.map_err(|e| e.to_string())?;
            ensure(all_certified(&verify_hitting_set(&inst, &rep.set.positions())), || format!("seed {seed}: infeasible"))?;
            let best = opt(&inst);
            let r = ratio(rep.set.len() as i64, best.max(1) as i64);
            ensure(r <= ratio(5, 3), || format!("seed {seed} rays={rays}: {}/{best}", rep.set.len()))?;
            worst = worst.max(r);
            let (v2, h2) = rep.residual_bounds();
            let res_opt = opt(&rep.residual);
            ensure(res_opt >= v2 + h2, || format!("seed {seed} rays={rays}: residual optimum {res_opt} < {v2} + {h2}"))?;
            pool.all.push(inst);
        }
    }
    Ok(format!("{} instances, worst ratio {worst}", 2 * runs))
}

fn lp_chain(pool: &mut Pool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let runs = 110;
    for seed in 0..runs {
        let count = rng.gen_range(1..=6);
        let inst = gen_random(&GenParams::LPairs { count, grid: 8 }, seed).map_err(|e| e.to_string())?;
        let rep = round_pairs_4approx(&inst).map_err(|e| e.to_string())?;
        let best = opt(&inst);
        ensure(rep.lp_value <= frac(best), || format!("L seed {seed}: LP {} > optimum {best}", rep.lp_value))?;
        ensure(rep.doubled_feasible, || format!("L seed {seed}: doubled solution infeasible"))?;
        ensure(frac(rep.set.len()) <= frac(4) * &rep.lp_value, || format!("L seed {seed}: {} > 4 LP", rep.set.len()))?;
        ensure(all_certified(&verify_hitting_set(&inst, &rep.set.positions())), || format!("L seed {seed}: infeasible"))?;
        pool.all.push(inst);

        let inst = gen_random(&GenParams::SegLinePairs { count, grid: 8 }, seed).map_err(|e| e.to_string())?;
        let rep = round_pairs_103approx(&inst).map_err(|e| e.to_string())?;
        let n = frac(rep.set.len());
        ensure(n <= ratio(10, 3) * &rep.lp_value, || format!("pair seed {seed}: {} > 10/3 LP", rep.set.len()))?;
        let inner = rep.filtered_lp_value.clone().unwrap();
        ensure(n <= ratio(5, 3) * &inner, || format!("pair seed {seed}: {} > 5/3 filtered LP {inner}", rep.set.len()))?;
        ensure(all_certified(&verify_hitting_set(&inst, &rep.set.positions())), || format!("pair seed {seed}: infeasible"))?;
        pool.all.push(inst);
    }
    Ok(format!("{runs} L-pair and {runs} segment+line instances"))
}

fn one_orientation(pool: &mut Pool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let runs = 60;
    for seed in 0..runs {
        let params = GenParams::Vlhs { lines: 0, segments: rng.gen_range(1..=10), rows: rng.gen_range(1..=3), grid: 12 };
        let inst = gen_random(&params, seed).map_err(|e| e.to_string())?;
        let lp = lp_value(&inst).map_err(|e| e.to_string())?;
        let best = opt(&inst);
        ensure(lp == frac(best), || format!("seed {seed}: LP {lp} vs optimum {best}"))?;
        pool.all.push(inst);
    }
    Ok(format!("{runs} instances integral"))
}

fn triangle_free(pool: &mut Pool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let runs = 220;
    let mut worst = Rational::from_integer(0.into());
    let mut fired = Vec::new();
    for seed in 0..runs {
        let params = GenParams::TriFree { count: rng.gen_range(1..=8), grid: 8, axis_only: seed % 4 == 0 };
        let inst = gen_random(&params, seed).map_err(|e| e.to_string())?;
        let g = ArrangementGraph::build(&inst.plain_objects().unwrap()).map_err(|e| e.to_string())?;
        if let Err(e) = peel(&g, PeelOptions { check_invariants: true }) {
            fired.push(format!("seed {seed}: {e}"));
        }
        let rep = peel(&g, PeelOptions::default()).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(all_certified(&verify_hitting_set(&inst, &rep.set.positions())), || format!("seed {seed}: infeasible"))?;
        let best = opt(&inst);
        let r = ratio(rep.set.len() as i64, best.max(1) as i64);
        ensure(r <= frac(3), || format!("seed {seed}: {}/{best}", rep.set.len()))?;
        worst = worst.max(r);
        pool.all.push(inst);
    }

    let mut per = Vec::new();
    for m in [10usize, 100, 1000, 10000] {
        let grid = 3 * (m as f64).sqrt() as i64 + 10;
        let inst = gen_random(&GenParams::TriFree { count: m, grid, axis_only: true }, m as u64).map_err(|e| e.to_string())?;
        let g = ArrangementGraph::build(&inst.plain_objects().unwrap()).map_err(|e| e.to_string())?;
        let rep = peel(&g, PeelOptions::default()).map_err(|e| e.to_string())?;
        per.push(rep.operations as f64 / (m + g.vertices.len() + rep.edges) as f64);
    }
    let (lo, hi) = per.iter().fold((f64::MAX, 0f64), |(a, b), &v| (a.min(v), b.max(v)));
    ensure(hi <= 2.0 * lo, || format!("operations per unit of input vary from {lo:.3} to {hi:.3}"))?;
    let detail = format!("{runs} instances, worst ratio {worst}; operations per unit {lo:.3}..{hi:.3} for m = 10..10^4");
    ensure(fired.is_empty(), || format!("invariant check fired on {} of {runs} ({}); {detail}", fired.len(), fired.join("; ")))?;
    Ok(detail)
}

fn all_clauses(n: usize) -> Vec<[i32; 3]> {
    let lits: Vec<i32> = (1..=n as i32).flat_map(|v| [v, -v]).collect();
    let mut out = Vec::new();
    for a in 0..lits.len() {
        for b in a..lits.len() {
            for c in b..lits.len() {
                out.push([lits[a], lits[b], lits[c]]);
            }
        }
    }
    out
}

fn check_formula(f: &CnfFormula) -> Result<bool, String> {
    let (inst, info) = gen_3sat_reduction(f).map_err(|e| e.to_string())?;
    let sat = sat_brute_force(f).map_err(|e| e.to_string())?;
    let best = opt(&inst);
    let ok = if sat { best == info.target } else { best > info.target };
    ensure(ok, || format!("{:?}: satisfiable={sat}, optimum {best}, N/2 = {}", f.clauses, info.target))?;
    Ok(sat)
}

fn reduction() -> Outcome {
    let start = Instant::now();
    let (mut count, mut sat) = (0, 0);
    for n in 1..=2 {
        let clauses = all_clauses(n);
        for i in 0..clauses.len() {
            let f = CnfFormula::from_signed(n, &[clauses[i]]).map_err(|e| e.to_string())?;
            sat += usize::from(check_formula(&f)?);
            count += 1;
            for j in i..clauses.len() {
                let f = CnfFormula::from_signed(n, &[clauses[i], clauses[j]]).map_err(|e| e.to_string())?;
                sat += usize::from(check_formula(&f)?);
                count += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let m = rng.gen_range(1..=4);
        let clauses: Vec<[i32; 3]> = (0..m)
            .map(|_| std::array::from_fn(|_| rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        let f = CnfFormula::from_signed(3, &clauses).map_err(|e| e.to_string())?;
        sat += usize::from(check_formula(&f)?);
        count += 1;
    }
    Ok(format!("{count} formulas ({sat} satisfiable) in {:.1?}", start.elapsed()))
}

fn cross_solver(pool: &Pool) -> Outcome {
    let mut runs = 0;
    for (i, inst) in pool.all.iter().enumerate() {
        for kind in SolverKind::ALL {
            let Ok(set) = solve(inst, kind) else { continue };
            runs += 1;
            ensure(all_certified(&verify_hitting_set(inst, &set.positions())), || format!("instance {i}: {kind} infeasible"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for seed in 0..100 {
        let count = rng.gen_range(1..=6);
        for params in [GenParams::LPairs { count, grid: 8 }, GenParams::SegLinePairs { count, grid: 8 }] {
            let inst = gen_random(&params, seed).map_err(|e| e.to_string())?;
            let got = solve_kr_baseline(&inst).map_err(|e| e.to_string())?.set.len();
            let (k, r) = k_and_r(&inst);
            let best = opt(&inst);
            ensure(got <= k * r * best, || format!("seed {seed}: kr {got} > {k}*{r}*{best}"))?;
        }
    }
    Ok(format!("{runs} solver runs verified; kr within k*r on 200 pair instances"))
}

fn main() -> ExitCode {
    let mut pool = Pool::default();
    let mut failed = false;
    let mut report = |k: usize, name: &str, out: Outcome| {
        match &out {
            Ok(detail) => println!("criterion {k:>2} PASS  {name}: {detail}"),
            Err(why) => {
                failed = true;
                println!("criterion {k:>2} FAIL  {name}: {why}");
            }
        }
    };
    report(1, "exact rays and lines", exact_hrvl(&mut pool));
    report(2, "sweep walkthrough", walkthrough());
    report(3, "two-parameter formula", opt2_formula(&mut pool));
    report(4, "three-slope greedy within 7/5", greedy_three_slopes(&mut pool));
    report(5, "lines and segments within 5/3", five_thirds(&mut pool));
    report(6, "LP rounding chain", lp_chain(&mut pool));
    report(7, "one orientation is integral", one_orientation(&mut pool));
    report(8, "triangle-free within 3", triangle_free(&mut pool));
    report(9, "3SAT reduction", reduction());
    report(10, "cross-solver feasibility", cross_solver(&pool));
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
