//! Ground truth: exact minimum hitting sets over a finite point set,
//! per-union certificates, and brute-force 3SAT.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::geom::Point;
use crate::instance::{CandidateSet, CnfFormula, Instance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for the exact oracle: {unions} unions and {candidates} candidates")]
    SizeGuard { unions: usize, candidates: usize },
    #[error("union {0} contains no candidate point")]
    Uncoverable(usize),
    #[error("{0} variables exceed the brute-force limit of 20")]
    TooManyVariables(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// The guard passes when either limit holds.
    pub max_unions: usize,
    pub max_candidates: usize,
    pub ignore_guard: bool,
    pub prune_dominated: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_unions: 24, max_candidates: 40, ignore_guard: false, prune_dominated: true }
    }
}

impl OracleOptions {
    pub fn unguarded() -> Self {
        OracleOptions { ignore_guard: true, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum: usize,
    pub points: Vec<Point>,
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn ones(n: usize) -> Self {
        let mut b = Self::zeros(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn minus(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }

    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }

    fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

struct Search {
    hits: Vec<Bits>,
    by_union: Vec<Vec<usize>>,
    best: usize,
    best_set: Vec<usize>,
    nodes: u64,
}

impl Search {
    /// Lower bound on the points needed for `uncovered`: the larger of a
    /// greedy packing of pairwise unshareable unions and a greedy feasible
    /// dual of the covering LP.
    fn lower_bound(&self, uncovered: &Bits) -> usize {
        let mut packed = 0;
        let mut blocked = Bits::zeros(uncovered.0.len() * 64);
        let mut order: Vec<usize> = uncovered.ones_iter().collect();
        order.sort_by_key(|&u| self.by_union[u].len());
        for &u in &order {
            if blocked.get(u) {
                continue;
            }
            packed += 1;
            for &c in &self.by_union[u] {
                for w in 0..blocked.0.len() {
                    blocked.0[w] |= self.hits[c].0[w];
                }
            }
        }

        let mut slack: Vec<f64> = vec![1.0; self.hits.len()];
        let mut dual = 0.0;
        for &u in &order {
            let y = self.by_union[u].iter().map(|&c| slack[c]).fold(f64::INFINITY, f64::min);
            if y <= 0.0 {
                continue;
            }
            dual += y;
            for &c in &self.by_union[u] {
                slack[c] -= y;
            }
        }
        packed.max((dual - 1e-7).ceil().max(0.0) as usize)
    }

    fn run(&mut self, uncovered: Bits, chosen: &mut Vec<usize>) {
        self.nodes += 1;
        if uncovered.is_empty() {
            if chosen.len() < self.best {
                self.best = chosen.len();
                self.best_set = chosen.clone();
            }
            return;
        }
        if chosen.len() + self.lower_bound(&uncovered) >= self.best {
            return;
        }
        let u = uncovered.ones_iter().min_by_key(|&u| (self.by_union[u].len(), u)).unwrap();
        let cover: Vec<(usize, Bits)> = self.by_union[u].iter().map(|&c| (c, self.hits[c].and(&uncovered))).collect();
        let mut options: Vec<(usize, &Bits)> = Vec::new();
        for (i, (c, cov)) in cover.iter().enumerate() {
            let dominated = cover.iter().enumerate().any(|(j, (_, other))| {
                j != i && cov.subset_of(other) && (!other.subset_of(cov) || j < i)
            });
            if !dominated {
                options.push((*c, cov));
            }
        }
        options.sort_by_key(|(c, cov)| (std::cmp::Reverse(cov.count()), *c));
        for (c, cov) in options {
            chosen.push(c);
            self.run(uncovered.minus(cov), chosen);
            chosen.pop();
        }
    }
}

/// Exact optimum over `cands` by branch and bound.
pub fn exact_min_hitting_set(
    inst: &Instance,
    cands: &CandidateSet,
    opts: OracleOptions,
) -> Result<OracleResult, OracleError> {
    exact_over_points(inst, &cands.points, opts)
}

/// Exact optimum restricted to the given points.
pub fn exact_over_points(inst: &Instance, points: &[Point], opts: OracleOptions) -> Result<OracleResult, OracleError> {
    let start = Instant::now();
    let (n, k) = (inst.unions.len(), points.len());
    if !opts.ignore_guard && n > opts.max_unions && k > opts.max_candidates {
        return Err(OracleError::SizeGuard { unions: n, candidates: k });
    }
    let mut hits: Vec<Bits> = points
        .iter()
        .map(|p| {
            let mut b = Bits::zeros(n);
            for (u, union) in inst.unions.iter().enumerate() {
                if union.is_hit_by(p) {
                    b.set(u);
                }
            }
            b
        })
        .collect();
    let mut index: Vec<usize> = (0..k).collect();
    if opts.prune_dominated {
        let keep: Vec<bool> = (0..k)
            .map(|i| {
                !hits[i].is_empty()
                    && !(0..k).any(|j| j != i && hits[i].subset_of(&hits[j]) && (!hits[j].subset_of(&hits[i]) || j < i))
            })
            .collect();
        index.retain(|&i| keep[i]);
        hits = index.iter().map(|&i| hits[i].clone()).collect();
    }
    let by_union: Vec<Vec<usize>> = (0..n).map(|u| (0..hits.len()).filter(|&c| hits[c].get(u)).collect()).collect();
    if let Some(u) = by_union.iter().position(|c| c.is_empty()) {
        return Err(OracleError::Uncoverable(u));
    }

    // Greedy incumbent.
    let mut uncovered = Bits::ones(n);
    let mut greedy = Vec::new();
    while !uncovered.is_empty() {
        let c = (0..hits.len()).max_by_key(|&c| (hits[c].and(&uncovered).count(), std::cmp::Reverse(c))).unwrap();
        greedy.push(c);
        uncovered = uncovered.minus(&hits[c]);
    }
    let mut s = Search { best: greedy.len(), best_set: greedy, hits, by_union, nodes: 0 };
    s.run(Bits::ones(n), &mut Vec::new());
    let mut chosen: Vec<Point> = s.best_set.iter().map(|&c| points[index[c]].clone()).collect();
    chosen.sort();
    Ok(OracleResult { optimum: s.best, points: chosen, nodes: s.nodes, elapsed: start.elapsed() })
}

/// Witness for one union: the first point and member that hit it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certificate {
    pub union: usize,
    /// `(point index, member index)`, or `None` when the union is missed.
    pub witness: Option<(usize, usize)>,
}

pub fn verify_hitting_set(inst: &Instance, points: &[Point]) -> Vec<Certificate> {
    inst.unions
        .iter()
        .enumerate()
        .map(|(u, union)| {
            let witness = points
                .iter()
                .enumerate()
                .find_map(|(i, p)| union.members.iter().position(|m| m.contains(p)).map(|k| (i, k)));
            Certificate { union: u, witness }
        })
        .collect()
}

pub fn all_certified(certs: &[Certificate]) -> bool {
    certs.iter().all(|c| c.witness.is_some())
}

pub fn sat_brute_force(f: &CnfFormula) -> Result<bool, OracleError> {
    let n = f.variable_count;
    if n > 20 {
        return Err(OracleError::TooManyVariables(n));
    }
    Ok((0u32..1 << n).any(|mask| {
        let assignment: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        f.evaluate(&assignment)
    }))
}
