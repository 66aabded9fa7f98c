//! Linear relaxation of the minimum-removal integer program.
//!
//! ```text
//! min  sum_i x_i
//! s.t. y_j <= x_i          for every interdependency edge (i, j)
//!      sum_j y_j >= D
//!      0 <= x, y <= 1
//! ```
//!
//! Solved with a dense-tableau, bounded-variable primal simplex (two
//! phases). Entering variables follow Dantzig's rule with lowest-index ties
//! and switch to Bland's rule after a run of degenerate pivots.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::netmodel::InterdependentNetwork;

pub const FEASIBILITY_TOL: f64 = 1e-9;
pub const OPTIMALITY_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-11;
const DEGENERATE_STREAK: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<(usize, f64)>,
    sense: Sense,
    rhs: f64,
}

/// `min c·x` subject to sparse linear rows and finite lower bounds.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    cost: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    rows: Vec<Row>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone)]
pub struct LpResult {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

impl LinearProgram {
    pub fn new(cost: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> Self {
        assert_eq!(cost.len(), lower.len());
        assert_eq!(cost.len(), upper.len());
        assert!(
            lower.iter().all(|l| l.is_finite()),
            "lower bounds must be finite"
        );
        LinearProgram {
            cost,
            lower,
            upper,
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.cost.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, f64)>, sense: Sense, rhs: f64) {
        debug_assert!(coeffs.iter().all(|&(j, _)| j < self.cost.len()));
        self.rows.push(Row { coeffs, sense, rhs });
    }

    /// Largest violation of any row or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for (j, &v) in x.iter().enumerate() {
            worst = worst.max(self.lower[j] - v).max(v - self.upper[j]);
        }
        for row in &self.rows {
            let lhs: f64 = row.coeffs.iter().map(|&(j, a)| a * x[j]).sum();
            let viol = match row.sense {
                Sense::Le => lhs - row.rhs,
                Sense::Ge => row.rhs - lhs,
                Sense::Eq => (lhs - row.rhs).abs(),
            };
            worst = worst.max(viol);
        }
        worst
    }

    pub fn solve(&self) -> LpResult {
        Tableau::build(self).run(self)
    }
}

struct Tableau {
    m: usize,
    ncols: usize,
    n_struct: usize,
    t: Vec<f64>, // m x ncols, row-major
    lower: Vec<f64>,
    upper: Vec<f64>,
    x: Vec<f64>,
    head: Vec<usize>,
    is_basic: Vec<bool>,
    artificial_from: usize,
    iterations: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Moved { degenerate: bool },
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.num_vars();
        let m = lp.rows.len();
        let n_slack = lp.rows.iter().filter(|r| r.sense != Sense::Eq).count();

        let mut x: Vec<f64> = lp.lower.clone();
        let mut residual = vec![0.0; m];
        for (i, row) in lp.rows.iter().enumerate() {
            residual[i] = row.rhs - row.coeffs.iter().map(|&(j, a)| a * x[j]).sum::<f64>();
        }

        // decide per row: basic slack, or artificial
        let mut slack_col = vec![None; m];
        let mut next = n;
        for (i, row) in lp.rows.iter().enumerate() {
            if row.sense != Sense::Eq {
                slack_col[i] = Some(next);
                next += 1;
            }
        }
        debug_assert_eq!(next, n + n_slack);
        let artificial_from = next;
        let mut art_col = vec![None; m];
        for (i, row) in lp.rows.iter().enumerate() {
            let slack_ok = match row.sense {
                Sense::Le => residual[i] >= 0.0,
                Sense::Ge => residual[i] <= 0.0,
                Sense::Eq => false,
            };
            if !slack_ok {
                art_col[i] = Some(next);
                next += 1;
            }
        }
        let ncols = next;

        let mut t = vec![0.0; m * ncols];
        let mut head = vec![0; m];
        let mut lower = lp.lower.clone();
        let mut upper = lp.upper.clone();
        lower.resize(ncols, 0.0);
        upper.resize(ncols, f64::INFINITY);
        x.resize(ncols, 0.0);

        for (i, row) in lp.rows.iter().enumerate() {
            let r = &mut t[i * ncols..(i + 1) * ncols];
            for &(j, a) in &row.coeffs {
                r[j] += a;
            }
            if let Some(s) = slack_col[i] {
                r[s] = if row.sense == Sense::Le { 1.0 } else { -1.0 };
            }
            let (basic, coef) = match art_col[i] {
                Some(a) => {
                    let sign = if residual[i] >= 0.0 { 1.0 } else { -1.0 };
                    r[a] = sign;
                    (a, sign)
                }
                None => {
                    let s = slack_col[i].expect("slack exists for inequality rows");
                    (s, r[s])
                }
            };
            if coef < 0.0 {
                for v in r.iter_mut() {
                    *v = -*v;
                }
            }
            head[i] = basic;
            x[basic] = residual[i].abs();
        }
        let mut is_basic = vec![false; ncols];
        for &h in &head {
            is_basic[h] = true;
        }
        Tableau {
            m,
            ncols,
            n_struct: n,
            t,
            lower,
            upper,
            x,
            head,
            is_basic,
            artificial_from,
            iterations: 0,
        }
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut d = cost.to_vec();
        for r in 0..self.m {
            let cb = cost[self.head[r]];
            if cb != 0.0 {
                let row = &self.t[r * self.ncols..(r + 1) * self.ncols];
                for (dj, &a) in d.iter_mut().zip(row) {
                    *dj -= cb * a;
                }
            }
        }
        d
    }

    fn pivot(&mut self, r: usize, q: usize, d: &mut [f64]) {
        let nc = self.ncols;
        let p = self.t[r * nc + q];
        for v in &mut self.t[r * nc..(r + 1) * nc] {
            *v /= p;
        }
        let pivot_row: Vec<f64> = self.t[r * nc..(r + 1) * nc].to_vec();
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let f = self.t[i * nc + q];
            if f != 0.0 {
                let row = &mut self.t[i * nc..(i + 1) * nc];
                for (v, &pr) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pr;
                }
                row[q] = 0.0;
            }
        }
        let dq = d[q];
        if dq != 0.0 {
            for (dj, &pr) in d.iter_mut().zip(&pivot_row) {
                *dj -= dq * pr;
            }
            d[q] = 0.0;
        }
        let leaving = self.head[r];
        self.is_basic[leaving] = false;
        self.is_basic[q] = true;
        self.head[r] = q;
    }

    fn step(&mut self, d: &mut [f64], bland: bool) -> Step {
        let nc = self.ncols;
        // entering variable
        let mut entering: Option<(usize, f64)> = None;
        for j in 0..nc {
            if self.is_basic[j] || self.upper[j] - self.lower[j] <= FEASIBILITY_TOL {
                continue;
            }
            let at_lower = (self.x[j] - self.lower[j]).abs() <= FEASIBILITY_TOL;
            let eligible = if at_lower {
                d[j] < -OPTIMALITY_TOL
            } else {
                d[j] > OPTIMALITY_TOL
            };
            if !eligible {
                continue;
            }
            if bland {
                entering = Some((j, d[j]));
                break;
            }
            match entering {
                Some((_, best)) if best.abs() >= d[j].abs() => {}
                _ => entering = Some((j, d[j])),
            }
        }
        let Some((q, dq)) = entering else {
            return Step::Optimal;
        };
        let dir = if dq < 0.0 { 1.0 } else { -1.0 };

        // ratio test
        let mut step = self.upper[q] - self.lower[q];
        let mut leave: Option<(usize, bool)> = None; // (row, hits upper)
        for i in 0..self.m {
            let alpha = self.t[i * nc + q];
            if alpha.abs() <= PIVOT_TOL {
                continue;
            }
            let h = self.head[i];
            let rate = -dir * alpha; // d x_h / d t
            let (limit, to_upper) = if rate < 0.0 {
                ((self.x[h] - self.lower[h]).max(0.0) / -rate, false)
            } else if self.upper[h].is_finite() {
                ((self.upper[h] - self.x[h]).max(0.0) / rate, true)
            } else {
                continue;
            };
            // ties: lowest basic index leaves; a tie with the bound flip keeps the flip
            let better = if limit < step - FEASIBILITY_TOL {
                true
            } else if limit <= step + FEASIBILITY_TOL {
                leave.is_some_and(|(lr, _)| h < self.head[lr])
            } else {
                false
            };
            if better {
                step = limit;
                leave = Some((i, to_upper));
            }
        }
        if !step.is_finite() {
            return Step::Unbounded;
        }

        for i in 0..self.m {
            let alpha = self.t[i * nc + q];
            if alpha != 0.0 {
                let h = self.head[i];
                self.x[h] -= dir * alpha * step;
            }
        }
        self.x[q] += dir * step;
        match leave {
            None => {
                // bound flip
                self.x[q] = if dir > 0.0 {
                    self.upper[q]
                } else {
                    self.lower[q]
                };
            }
            Some((r, to_upper)) => {
                let h = self.head[r];
                self.x[h] = if to_upper {
                    self.upper[h]
                } else {
                    self.lower[h]
                };
                self.pivot(r, q, d);
            }
        }
        self.iterations += 1;
        Step::Moved {
            degenerate: step <= FEASIBILITY_TOL,
        }
    }

    fn optimize(&mut self, cost: &[f64], max_iter: usize) -> LpStatus {
        let mut d = self.reduced_costs(cost);
        let mut streak = 0;
        let mut bland = false;
        loop {
            if self.iterations >= max_iter {
                return LpStatus::IterationLimit;
            }
            match self.step(&mut d, bland) {
                Step::Optimal => return LpStatus::Optimal,
                Step::Unbounded => return LpStatus::Unbounded,
                Step::Moved { degenerate } => {
                    if degenerate {
                        streak += 1;
                        if streak >= DEGENERATE_STREAK {
                            bland = true;
                        }
                    } else {
                        streak = 0;
                    }
                }
            }
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpResult {
        let max_iter = 50 * (self.m + self.ncols) + 1000;
        let n = self.n_struct;
        if self.artificial_from < self.ncols {
            let mut phase1 = vec![0.0; self.ncols];
            for c in &mut phase1[self.artificial_from..] {
                *c = 1.0;
            }
            let status = self.optimize(&phase1, max_iter);
            if status == LpStatus::IterationLimit {
                return self.finish(lp, status);
            }
            let infeas: f64 = self.x[self.artificial_from..].iter().sum();
            if infeas > FEASIBILITY_TOL * (1 + self.m) as f64 {
                return self.finish(lp, LpStatus::Infeasible);
            }
            for j in self.artificial_from..self.ncols {
                self.upper[j] = 0.0;
                if !self.is_basic[j] {
                    self.x[j] = 0.0;
                }
            }
        }
        let mut cost = lp.cost.clone();
        cost.resize(self.ncols, 0.0);
        let status = self.optimize(&cost, max_iter);
        debug_assert_eq!(n, lp.num_vars());
        self.finish(lp, status)
    }

    fn finish(self, lp: &LinearProgram, status: LpStatus) -> LpResult {
        let n = self.n_struct;
        let mut x: Vec<f64> = self.x[..n].to_vec();
        for (j, v) in x.iter_mut().enumerate() {
            // snap round-off onto the bounds
            if (*v - lp.lower[j]).abs() <= FEASIBILITY_TOL {
                *v = lp.lower[j];
            } else if (*v - lp.upper[j]).abs() <= FEASIBILITY_TOL {
                *v = lp.upper[j];
            }
        }
        let objective = lp.cost.iter().zip(&x).map(|(c, v)| c * v).sum();
        LpResult {
            status,
            x,
            objective,
            iterations: self.iterations,
        }
    }
}

/// Variables pinned to 0 or 1 at a branch-and-bound node.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Fixings {
    pub x: BTreeMap<usize, bool>,
    pub y: BTreeMap<usize, bool>,
}

impl Fixings {
    pub fn none() -> Self {
        Self::default()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LpSolution {
    pub x_star: Vec<f64>,
    pub y_star: Vec<f64>,
    pub objective: f64,
    pub status: LpStatus,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Builds the relaxed minimum-removal LP; variables are `x_0..x_{n_a}` then
/// `y_0..y_{n_b}`.
pub fn relaxation_program(
    net: &InterdependentNetwork,
    d: usize,
    fixings: &Fixings,
) -> LinearProgram {
    let (na, nb) = (net.n_a(), net.n_b());
    let mut cost = vec![1.0; na];
    cost.resize(na + nb, 0.0);
    let mut lower = vec![0.0; na + nb];
    let mut upper = vec![1.0; na + nb];
    for (&i, &v) in &fixings.x {
        let b = if v { 1.0 } else { 0.0 };
        lower[i] = b;
        upper[i] = b;
    }
    for (&j, &v) in &fixings.y {
        let b = if v { 1.0 } else { 0.0 };
        lower[na + j] = b;
        upper[na + j] = b;
    }
    let mut lp = LinearProgram::new(cost, lower, upper);
    for &(a, b) in net.edges_ab() {
        lp.add_row(vec![(na + b, 1.0), (a, -1.0)], Sense::Le, 0.0);
    }
    lp.add_row(
        (0..nb).map(|j| (na + j, 1.0)).collect(),
        Sense::Ge,
        d as f64,
    );
    lp
}

/// Solves the LP relaxation of the minimum-removal program.
pub fn solve_relaxation(
    net: &InterdependentNetwork,
    d: usize,
    fixings: &Fixings,
) -> Result<LpSolution> {
    if d > net.n_b() {
        return Err(Error::TargetOutOfRange {
            d,
            min: 0,
            max: net.n_b(),
        });
    }
    if fixings.x.keys().any(|&i| i >= net.n_a()) || fixings.y.keys().any(|&j| j >= net.n_b()) {
        return Err(Error::InvalidParameter(
            "fixing refers to a missing node".into(),
        ));
    }
    let lp = relaxation_program(net, d, fixings);
    let res = lp.solve();
    let na = net.n_a();
    let (x_star, y_star) = (res.x[..na].to_vec(), res.x[na..].to_vec());
    match res.status {
        LpStatus::Optimal | LpStatus::Infeasible => Ok(LpSolution {
            x_star,
            y_star,
            objective: res.objective,
            status: res.status,
        }),
        // bounded box, cannot be unbounded; iteration limit means numerical trouble
        other => Err(Error::InvalidParameter(format!(
            "simplex stopped with {other:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn textbook_lp() {
        // max 3x + 5y st x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let mut lp = LinearProgram::new(
            vec![-3.0, -5.0],
            vec![0.0, 0.0],
            vec![f64::INFINITY, f64::INFINITY],
        );
        lp.add_row(vec![(0, 1.0)], Sense::Le, 4.0);
        lp.add_row(vec![(1, 2.0)], Sense::Le, 12.0);
        lp.add_row(vec![(0, 3.0), (1, 2.0)], Sense::Le, 18.0);
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Optimal);
        assert!(close(r.x[0], 2.0) && close(r.x[1], 6.0));
        assert!(close(r.objective, -36.0));
    }

    #[test]
    fn phase_one_with_equalities_and_bounds() {
        // min x + 2y st x + y = 3, x - y >= -1, 0 <= x <= 1.5, y >= 0 -> x=1.5, y=1.5
        let mut lp = LinearProgram::new(vec![1.0, 2.0], vec![0.0, 0.0], vec![1.5, f64::INFINITY]);
        lp.add_row(vec![(0, 1.0), (1, 1.0)], Sense::Eq, 3.0);
        lp.add_row(vec![(0, 1.0), (1, -1.0)], Sense::Ge, -1.0);
        let r = lp.solve();
        assert_eq!(r.status, LpStatus::Optimal);
        assert!(close(r.x[0], 1.5) && close(r.x[1], 1.5), "{:?}", r.x);
        assert!(lp.max_violation(&r.x) <= FEASIBILITY_TOL);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(vec![1.0], vec![0.0], vec![1.0]);
        lp.add_row(vec![(0, 1.0)], Sense::Ge, 2.0);
        assert_eq!(lp.solve().status, LpStatus::Infeasible);
        let mut lp = LinearProgram::new(vec![-1.0, 0.0], vec![0.0, 0.0], vec![f64::INFINITY, 1.0]);
        lp.add_row(vec![(0, 1.0), (1, -1.0)], Sense::Ge, 0.0);
        assert_eq!(lp.solve().status, LpStatus::Unbounded);
    }

    #[test]
    fn zero_target_is_all_zero() {
        let net =
            InterdependentNetwork::bidirectional_star(2, 2, vec![(0, 0), (1, 1), (0, 1)]).unwrap();
        let s = solve_relaxation(&net, 0, &Fixings::none()).unwrap();
        assert!(s.is_optimal());
        assert!(s.x_star.iter().chain(&s.y_star).all(|&v| v == 0.0));
        assert_eq!(s.objective, 0.0);
    }

    #[test]
    fn single_pair_forces_one() {
        let net = InterdependentNetwork::bidirectional_star(1, 1, vec![(0, 0)]).unwrap();
        let s = solve_relaxation(&net, 1, &Fixings::none()).unwrap();
        assert_eq!((s.x_star[0], s.y_star[0], s.objective), (1.0, 1.0, 1.0));
    }

    #[test]
    fn fixings_can_make_it_infeasible() {
        let net = InterdependentNetwork::bidirectional_star(2, 2, vec![(0, 0), (1, 1)]).unwrap();
        let mut f = Fixings::none();
        f.y.insert(0, false);
        let s = solve_relaxation(&net, 2, &f).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
        let mut f = Fixings::none();
        f.y.insert(1, true);
        let s = solve_relaxation(&net, 1, &f).unwrap();
        assert!(close(s.objective, 1.0));
        assert_eq!(s.x_star, vec![0.0, 1.0]);
    }

    #[test]
    fn rejects_bad_target() {
        let net = InterdependentNetwork::bidirectional_star(1, 1, vec![(0, 0)]).unwrap();
        assert!(solve_relaxation(&net, 2, &Fixings::none()).is_err());
    }
}
