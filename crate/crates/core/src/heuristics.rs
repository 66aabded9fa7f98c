//! Approximation algorithms for `MR(D)` on bidirectional star networks:
//! greedy, randomized rounding of the LP relaxation, and two simulated
//! annealing variants. All randomness is seeded; equal inputs give equal
//! outputs.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use serde::Serialize;

use crate::cascade::one_stage_failures;
use crate::error::{Error, Result};
use crate::exact::{check_target, require_operating_bistar, Method};
use crate::lp::{self, Fixings, LpSolution};
use crate::netmodel::{FailureSet, InterdependentNetwork, NodeSet, RemovalSet};
use crate::rng::{seeded, stream};

/// Default number of rounding trials.
pub const DEFAULT_TRIALS: usize = 100;
/// Sampling sweeps per rounding trial, as a multiple of `n_b`, before the
/// remaining failures are filled in by decreasing `y*`.
pub const PASS_CAP_FACTOR: usize = 50;
/// Default inner-loop length, as a multiple of `n_b`.
pub const INNER_LOOP_FACTOR: usize = 50;

/// Annealing schedule. `inner_loop = None` means `50 * n_b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SaParams {
    pub t_initial: f64,
    pub t_final: f64,
    pub r: f64,
    pub inner_loop: Option<usize>,
    pub seed: u64,
}

impl Default for SaParams {
    fn default() -> Self {
        SaParams {
            t_initial: 1.0,
            t_final: 1e-3,
            r: 0.95,
            inner_loop: None,
            seed: 0,
        }
    }
}

impl SaParams {
    pub fn with_seed(seed: u64) -> Self {
        SaParams {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        if !(self.t_initial > 0.0 && self.t_initial.is_finite()) {
            return bad("initial temperature must be positive");
        }
        if !(self.t_final > 0.0) {
            return bad("final temperature must be positive");
        }
        if self.t_final >= self.t_initial {
            return bad("final temperature must be below the initial temperature");
        }
        if !(self.r > 0.0 && self.r < 1.0) {
            return bad("reduction factor must lie in (0, 1)");
        }
        if self.inner_loop == Some(0) {
            return bad("inner loop length must be at least 1");
        }
        Ok(())
    }

    fn inner_loop_for(&self, net: &InterdependentNetwork) -> usize {
        self.inner_loop
            .unwrap_or(INNER_LOOP_FACTOR * net.n_b())
            .max(1)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HeuristicResult {
    pub method: Method,
    pub removal: RemovalSet,
    pub failed: FailureSet,
    pub size: usize,
    #[serde(skip)]
    pub elapsed: Duration,
    pub seed: u64,
    /// Best size seen after each temperature level (annealing only).
    pub trajectory: Option<Vec<usize>>,
}

impl HeuristicResult {
    fn finish(
        net: &InterdependentNetwork,
        method: Method,
        removal: RemovalSet,
        seed: u64,
        start: Instant,
        trajectory: Option<Vec<usize>>,
    ) -> Result<Self> {
        let failed = one_stage_failures(net, &removal)?;
        Ok(HeuristicResult {
            method,
            size: removal.len(),
            removal,
            failed,
            elapsed: start.elapsed(),
            seed,
            trajectory,
        })
    }

    pub fn elapsed_ms(&self) -> f64 {
        self.elapsed.as_secs_f64() * 1e3
    }
}

/// Removal bookkeeping shared by the heuristics: how many A-neighbours of each
/// B-node are still present, and how many B-nodes have none left.
struct Coverage<'a> {
    net: &'a InterdependentNetwork,
    removed: Vec<bool>,
    size: usize,
    residual: Vec<usize>,
    failed: usize,
}

impl<'a> Coverage<'a> {
    fn new(net: &'a InterdependentNetwork) -> Self {
        let residual: Vec<usize> = (0..net.n_b())
            .map(|b| net.neighbors_of_b(b).len())
            .collect();
        Coverage {
            net,
            removed: vec![false; net.n_a()],
            size: 0,
            failed: residual.iter().filter(|&&r| r == 0).count(),
            residual,
        }
    }

    fn remove(&mut self, a: usize) {
        debug_assert!(!self.removed[a]);
        self.removed[a] = true;
        self.size += 1;
        for &b in self.net.neighbors_of_a(a) {
            self.residual[b] -= 1;
            if self.residual[b] == 0 {
                self.failed += 1;
            }
        }
    }

    fn restore(&mut self, a: usize) {
        debug_assert!(self.removed[a]);
        self.removed[a] = false;
        self.size -= 1;
        for &b in self.net.neighbors_of_a(a) {
            if self.residual[b] == 0 {
                self.failed -= 1;
            }
            self.residual[b] += 1;
        }
    }

    fn removal_set(&self) -> RemovalSet {
        NodeSet::side_a((0..self.removed.len()).filter(|&a| self.removed[a]))
    }
}

/// Greedy with an explicit tie-break: `choose` receives the tied
/// minimum-residual-degree B-nodes (ascending) and returns a position.
pub fn greedy_with_chooser(
    net: &InterdependentNetwork,
    d: usize,
    mut choose: impl FnMut(&[usize]) -> usize,
) -> Result<RemovalSet> {
    require_operating_bistar(net)?;
    check_target(net, d)?;
    let mut cov = Coverage::new(net);
    let mut ties = Vec::new();
    while cov.failed < d {
        let min = (0..net.n_b())
            .map(|b| cov.residual[b])
            .filter(|&r| r > 0)
            .min()
            .expect("fewer than d failures leaves a live B-node");
        ties.clear();
        ties.extend((0..net.n_b()).filter(|&b| cov.residual[b] == min));
        let pick = ties[choose(&ties)];
        for &a in net.neighbors_of_b(pick) {
            if !cov.removed[a] {
                cov.remove(a);
            }
        }
    }
    Ok(cov.removal_set())
}

/// Repeatedly fails a B-node of minimum residual degree (ties broken
/// uniformly at random) by removing its remaining A-neighbours, until at
/// least `d` B-nodes have failed.
pub fn greedy(net: &InterdependentNetwork, d: usize, seed: u64) -> Result<HeuristicResult> {
    let start = Instant::now();
    let mut rng = seeded(seed, stream::GREEDY);
    let removal = greedy_with_chooser(net, d, |ties| rng.random_range(0..ties.len()))?;
    HeuristicResult::finish(net, Method::Greedy, removal, seed, start, None)
}

/// Every removal size greedy can return under some sequence of tie-breaks.
/// Exponential; intended for small instances.
pub fn enumerate_greedy_outcomes(net: &InterdependentNetwork, d: usize) -> Result<BTreeSet<usize>> {
    require_operating_bistar(net)?;
    check_target(net, d)?;
    fn explore(cov: &mut Coverage, d: usize, out: &mut BTreeSet<usize>) {
        if cov.failed >= d {
            out.insert(cov.size);
            return;
        }
        let nb = cov.residual.len();
        let min = (0..nb)
            .map(|b| cov.residual[b])
            .filter(|&r| r > 0)
            .min()
            .unwrap();
        let ties: Vec<usize> = (0..nb).filter(|&b| cov.residual[b] == min).collect();
        for b in ties {
            let added: Vec<usize> = cov
                .net
                .neighbors_of_b(b)
                .iter()
                .copied()
                .filter(|&a| !cov.removed[a])
                .collect();
            for &a in &added {
                cov.remove(a);
            }
            explore(cov, d, out);
            for &a in &added {
                cov.restore(a);
            }
        }
    }
    let mut out = BTreeSet::new();
    explore(&mut Coverage::new(net), d, &mut out);
    Ok(out)
}

/// Randomized rounding with a fresh LP solve.
pub fn randomized_rounding(
    net: &InterdependentNetwork,
    d: usize,
    seed: u64,
    trials: usize,
) -> Result<HeuristicResult> {
    require_operating_bistar(net)?;
    check_target(net, d)?;
    let start = Instant::now();
    let lp = lp::solve_relaxation(net, d, &Fixings::none())?;
    rounding_from(net, d, seed, trials, &lp, start)
}

/// Randomized rounding of a given LP solution.
pub fn randomized_rounding_with(
    net: &InterdependentNetwork,
    d: usize,
    seed: u64,
    trials: usize,
    lp: &LpSolution,
) -> Result<HeuristicResult> {
    require_operating_bistar(net)?;
    check_target(net, d)?;
    rounding_from(net, d, seed, trials, lp, Instant::now())
}

fn rounding_from(
    net: &InterdependentNetwork,
    d: usize,
    seed: u64,
    trials: usize,
    lp: &LpSolution,
    start: Instant,
) -> Result<HeuristicResult> {
    if !lp.is_optimal() {
        return Err(Error::LpInfeasible);
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let nb = net.n_b();
    let y = &lp.y_star;
    // fallback order: decreasing y*, lower index first
    let mut by_weight: Vec<usize> = (0..nb).collect();
    by_weight.sort_by(|&i, &j| {
        y[j].partial_cmp(&y[i])
            .expect("finite LP values")
            .then(i.cmp(&j))
    });

    let mut rng = seeded(seed, stream::ROUNDING);
    let mut order: Vec<usize> = (0..nb).collect();
    let mut chosen = vec![false; nb];
    let mut best: Option<(usize, Vec<bool>)> = None;
    for _ in 0..trials {
        chosen.fill(false);
        let mut count = 0;
        'passes: for _ in 0..PASS_CAP_FACTOR * nb.max(1) {
            if count >= d {
                break;
            }
            order.shuffle(&mut rng);
            for &j in &order {
                if !chosen[j] && rng.random::<f64>() < y[j] {
                    chosen[j] = true;
                    count += 1;
                    if count == d {
                        break 'passes;
                    }
                }
            }
        }
        for &j in &by_weight {
            if count >= d {
                break;
            }
            if !chosen[j] {
                chosen[j] = true;
                count += 1;
            }
        }
        let mut removed = vec![false; net.n_a()];
        for j in (0..nb).filter(|&j| chosen[j]) {
            for &a in net.neighbors_of_b(j) {
                removed[a] = true;
            }
        }
        let size = removed.iter().filter(|&&r| r).count();
        if best.as_ref().is_none_or(|(s, _)| size < *s) {
            best = Some((size, removed));
        }
    }
    let (_, removed) = best.expect("at least one trial");
    let removal = NodeSet::side_a((0..removed.len()).filter(|&a| removed[a]));
    HeuristicResult::finish(net, Method::Rounding, removal, seed, start, None)
}

fn initial_removal(
    net: &InterdependentNetwork,
    d: usize,
    params: &SaParams,
    initial: Option<&RemovalSet>,
) -> Result<RemovalSet> {
    match initial {
        None => Ok(greedy(net, d, params.seed)?.removal),
        Some(r) => {
            let failed = one_stage_failures(net, r)?.len();
            if failed < d {
                return Err(Error::InfeasibleInitial { failed, d });
            }
            Ok(r.clone())
        }
    }
}

fn temperature_levels(params: &SaParams) -> impl Iterator<Item = f64> {
    let (r, tf) = (params.r, params.t_final);
    std::iter::successors(Some(params.t_initial), move |t| Some(t * r))
        .take_while(move |&t| t >= tf)
}

/// Annealing over removal sets. A move adds, removes or replaces one A-node;
/// infeasible neighbours are rejected. Growing moves are accepted with
/// probability `exp(-(1 - d(i)/sum d)/T)`, `i` being the added node. Starts
/// from the greedy answer unless `initial` is given; returns the best set seen.
pub fn sa1(
    net: &InterdependentNetwork,
    d: usize,
    params: &SaParams,
    initial: Option<&RemovalSet>,
) -> Result<HeuristicResult> {
    require_operating_bistar(net)?;
    check_target(net, d)?;
    params.validate()?;
    let start = Instant::now();
    let r0 = initial_removal(net, d, params, initial)?;
    let mut rng = seeded(params.seed, stream::SA1);
    let na = net.n_a();
    let total_degree = net.edges_ab().len() as f64;

    let mut cov = Coverage::new(net);
    // `members` lists R, `outside` lists A \ R; `slot` indexes into either
    let mut members: Vec<usize> = Vec::new();
    let mut outside: Vec<usize> = Vec::new();
    let mut slot = vec![0usize; na];
    for a in 0..na {
        if r0.a().binary_search(&a).is_ok() {
            cov.remove(a);
            slot[a] = members.len();
            members.push(a);
        } else {
            slot[a] = outside.len();
            outside.push(a);
        }
    }
    fn take(list: &mut Vec<usize>, slot: &mut [usize], pos: usize) -> usize {
        let node = list.swap_remove(pos);
        if let Some(&moved) = list.get(pos) {
            slot[moved] = pos;
        }
        node
    }
    fn put(list: &mut Vec<usize>, slot: &mut [usize], node: usize) {
        slot[node] = list.len();
        list.push(node);
    }

    let mut best_size = cov.size;
    let mut best = cov.removal_set();
    let mut trajectory = Vec::new();
    let inner = params.inner_loop_for(net);
    for t in temperature_levels(params) {
        for _ in 0..inner {
            let mut moves: Vec<u8> = Vec::with_capacity(3);
            if !outside.is_empty() {
                moves.push(0);
            }
            if !members.is_empty() {
                moves.push(1);
                if !outside.is_empty() {
                    moves.push(2);
                }
            }
            let Some(&mv) = moves.choose(&mut rng) else {
                break;
            };
            match mv {
                0 => {
                    let pos = rng.random_range(0..outside.len());
                    let i = outside[pos];
                    // adding never breaks feasibility
                    let p = (-(1.0 - net.neighbors_of_a(i).len() as f64 / total_degree) / t).exp();
                    if rng.random::<f64>() < p {
                        take(&mut outside, &mut slot, pos);
                        put(&mut members, &mut slot, i);
                        cov.remove(i);
                    }
                }
                1 => {
                    let pos = rng.random_range(0..members.len());
                    let i = members[pos];
                    cov.restore(i);
                    if cov.failed >= d {
                        take(&mut members, &mut slot, pos);
                        put(&mut outside, &mut slot, i);
                    } else {
                        cov.remove(i);
                    }
                }
                _ => {
                    let out_pos = rng.random_range(0..members.len());
                    let in_pos = rng.random_range(0..outside.len());
                    let (o, i) = (members[out_pos], outside[in_pos]);
                    cov.restore(o);
                    cov.remove(i);
                    if cov.failed >= d {
                        members[out_pos] = i;
                        slot[i] = out_pos;
                        outside[in_pos] = o;
                        slot[o] = in_pos;
                    } else {
                        cov.restore(i);
                        cov.remove(o);
                    }
                }
            }
            if cov.size < best_size {
                best_size = cov.size;
                best = cov.removal_set();
            }
        }
        trajectory.push(best_size);
    }
    HeuristicResult::finish(net, Method::Sa1, best, params.seed, start, Some(trajectory))
}

/// Annealing over failure sets `F` with `|F| >= d`; the removal set is
/// `N(F)`. With `|F| = d` a move adds or replaces a B-node, otherwise it adds
/// or removes one. Growing moves are accepted with probability
/// `min(1, exp(-(|R'| - |R0|)/T))`, `R0` being the initial removal set.
pub fn sa2(
    net: &InterdependentNetwork,
    d: usize,
    params: &SaParams,
    initial: Option<&RemovalSet>,
) -> Result<HeuristicResult> {
    require_operating_bistar(net)?;
    check_target(net, d)?;
    params.validate()?;
    let start = Instant::now();
    let r0 = initial_removal(net, d, params, initial)?;
    let r0_size = r0.len() as f64;
    let mut rng = seeded(params.seed, stream::SA2);
    let nb = net.n_b();

    // multiplicity of each A-node among the neighbourhoods of F
    let mut mult = vec![0usize; net.n_a()];
    let mut r_size = 0usize;
    let add_b = |b: usize, mult: &mut [usize], r_size: &mut usize| {
        for &a in net.neighbors_of_b(b) {
            if mult[a] == 0 {
                *r_size += 1;
            }
            mult[a] += 1;
        }
    };
    let drop_b = |b: usize, mult: &mut [usize], r_size: &mut usize| {
        for &a in net.neighbors_of_b(b) {
            mult[a] -= 1;
            if mult[a] == 0 {
                *r_size -= 1;
            }
        }
    };

    let f0 = one_stage_failures(net, &r0)?;
    let mut members: Vec<usize> = Vec::new();
    let mut outside: Vec<usize> = Vec::new();
    for b in 0..nb {
        if f0.b().binary_search(&b).is_ok() {
            members.push(b);
            add_b(b, &mut mult, &mut r_size);
        } else {
            outside.push(b);
        }
    }

    let snapshot = |mult: &[usize]| NodeSet::side_a((0..mult.len()).filter(|&a| mult[a] > 0));
    let mut best_size = r_size;
    let mut best = snapshot(&mult);
    let mut trajectory = Vec::new();
    let inner = params.inner_loop_for(net);
    for t in temperature_levels(params) {
        for _ in 0..inner {
            let mut moves: Vec<u8> = Vec::with_capacity(2);
            if !outside.is_empty() {
                moves.push(0);
            }
            if members.len() > d {
                moves.push(1);
            } else if !outside.is_empty() && !members.is_empty() {
                moves.push(2);
            }
            let Some(&mv) = moves.choose(&mut rng) else {
                break;
            };
            let before = r_size;
            // apply tentatively, then accept or undo
            let (added, dropped) = match mv {
                0 => {
                    let pos = rng.random_range(0..outside.len());
                    add_b(outside[pos], &mut mult, &mut r_size);
                    (Some(pos), None)
                }
                1 => {
                    let pos = rng.random_range(0..members.len());
                    drop_b(members[pos], &mut mult, &mut r_size);
                    (None, Some(pos))
                }
                _ => {
                    let out_pos = rng.random_range(0..members.len());
                    let in_pos = rng.random_range(0..outside.len());
                    add_b(outside[in_pos], &mut mult, &mut r_size);
                    drop_b(members[out_pos], &mut mult, &mut r_size);
                    (Some(in_pos), Some(out_pos))
                }
            };
            let accept = r_size <= before || {
                let p = (-(r_size as f64 - r0_size) / t).exp().min(1.0);
                rng.random::<f64>() < p
            };
            if accept {
                match (added, dropped) {
                    (Some(i), Some(o)) => {
                        let (bi, bo) = (outside[i], members[o]);
                        outside[i] = bo;
                        members[o] = bi;
                    }
                    (Some(i), None) => {
                        let b = outside.swap_remove(i);
                        members.push(b);
                    }
                    (None, Some(o)) => {
                        let b = members.swap_remove(o);
                        outside.push(b);
                    }
                    (None, None) => unreachable!(),
                }
                if r_size < best_size {
                    best_size = r_size;
                    best = snapshot(&mult);
                }
            } else {
                if let Some(i) = added {
                    drop_b(outside[i], &mut mult, &mut r_size);
                }
                if let Some(o) = dropped {
                    add_b(members[o], &mut mult, &mut r_size);
                }
            }
        }
        trajectory.push(best_size);
    }
    HeuristicResult::finish(net, Method::Sa2, best, params.seed, start, Some(trajectory))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_greedy_worst_case, gen_type1};

    fn matching(n: usize) -> InterdependentNetwork {
        InterdependentNetwork::bidirectional_star(n, n, (0..n).map(|i| (i, i)).collect()).unwrap()
    }

    fn k22() -> InterdependentNetwork {
        InterdependentNetwork::bidirectional_star(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)])
            .unwrap()
    }

    fn fast(seed: u64) -> SaParams {
        SaParams {
            t_final: 0.05,
            r: 0.8,
            ..SaParams::with_seed(seed)
        }
    }

    #[test]
    fn greedy_on_matching() {
        let net = matching(6);
        for d in 0..=6 {
            let r = greedy(&net, d, 3).unwrap();
            assert_eq!(r.size, d);
            assert!(r.failed.len() >= d);
        }
    }

    #[test]
    fn greedy_full_target_removes_all_of_a() {
        let net = gen_type1(20, 3.0, 1).unwrap();
        assert_eq!(greedy(&net, 20, 0).unwrap().size, 20);
    }

    #[test]
    fn greedy_worst_case_outcomes() {
        let net = gen_greedy_worst_case(2, 2).unwrap();
        let outcomes = enumerate_greedy_outcomes(&net, 2).unwrap();
        assert_eq!(outcomes.iter().max(), Some(&4));
        assert!(outcomes.iter().all(|s| [2, 3, 4].contains(s)));
        for seed in 0..20 {
            assert!(outcomes.contains(&greedy(&net, 2, seed).unwrap().size));
        }
    }

    #[test]
    fn rounding_examples() {
        assert_eq!(randomized_rounding(&matching(5), 3, 1, 10).unwrap().size, 3);
        assert_eq!(randomized_rounding(&k22(), 2, 9, 5).unwrap().size, 2);
        assert!(randomized_rounding(&k22(), 1, 9, 0).is_err());
    }

    #[test]
    fn annealing_examples() {
        let r = sa1(&k22(), 1, &fast(1), Some(&NodeSet::side_a([0, 1]))).unwrap();
        assert_eq!(r.size, 2);
        assert_eq!(sa2(&k22(), 2, &fast(1), None).unwrap().size, 2);
        assert_eq!(sa1(&matching(5), 2, &fast(4), None).unwrap().size, 2);
        let bad = sa1(&k22(), 1, &fast(1), Some(&NodeSet::side_a([0])));
        assert!(matches!(
            bad,
            Err(Error::InfeasibleInitial { failed: 0, d: 1 })
        ));
    }

    #[test]
    fn annealing_improves_on_greedy() {
        for seed in 0..4 {
            let net = gen_type1(30, 3.0, seed).unwrap();
            for d in [2, 5, 10] {
                let g = greedy(&net, d, seed).unwrap().size;
                for r in [
                    sa1(&net, d, &fast(seed), None).unwrap(),
                    sa2(&net, d, &fast(seed), None).unwrap(),
                ] {
                    assert!(r.size <= g);
                    assert!(r.failed.len() >= d);
                    let traj = r.trajectory.as_ref().unwrap();
                    assert!(traj.windows(2).all(|w| w[1] <= w[0]));
                    assert_eq!(*traj.last().unwrap(), r.size);
                }
            }
        }
    }

    #[test]
    fn params_validation() {
        assert!(SaParams::default().validate().is_ok());
        let bad = [
            SaParams {
                t_initial: 0.0,
                ..Default::default()
            },
            SaParams {
                t_final: 2.0,
                ..Default::default()
            },
            SaParams {
                r: 1.0,
                ..Default::default()
            },
            SaParams {
                inner_loop: Some(0),
                ..Default::default()
            },
        ];
        for p in bad {
            assert!(p.validate().is_err());
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let net = gen_type1(40, 2.0, 7).unwrap();
        let a = sa2(&net, 8, &fast(11), None).unwrap();
        let b = sa2(&net, 8, &fast(11), None).unwrap();
        assert_eq!((a.removal, a.trajectory), (b.removal, b.trajectory));
    }
}
