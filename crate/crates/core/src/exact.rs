//! Exact minimum-removal metrics.
//!
//! In a bidirectional star network a B-node fails exactly when all of its
//! A-neighbours are removed, so `MR(D)` is the smallest neighbourhood
//! `|N(Y)|` over B-subsets `Y` of size `D`. Three exact routes are provided:
//! enumeration of B-subsets, enumeration of A-removal sets, and an LP-based
//! branch-and-bound. `MRB(D)` (removals from both sides) follows from the
//! `MR` curve; an independent brute force over both sides runs the full
//! cascade engine.

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::cascade::CascadeEngine;
use crate::error::{Error, Result};
use crate::heuristics;
use crate::lp::{self, Fixings};
use crate::netmodel::{BipartiteGraph, InterdependentNetwork, NodeSet, RemovalSet};

/// Above this many B-subsets `mr_exact` stops enumerating them.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000_000;
/// Node-count cap for brute force over both sides.
pub const GENERAL_LIMIT: usize = 20;
/// A-side size cap for enumerating removal sets (`2^n_a` subsets).
pub const REMOVAL_ENUM_LIMIT: usize = 23;

const INTEGRALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Bnb,
    Greedy,
    Rounding,
    Sa1,
    Sa2,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Bnb => "bnb",
            Method::Greedy => "greedy",
            Method::Rounding => "rounding",
            Method::Sa1 => "sa1",
            Method::Sa2 => "sa2",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        Some(match s {
            "exact" => Method::Exact,
            "bnb" => Method::Bnb,
            "greedy" => Method::Greedy,
            "rounding" | "round" => Method::Rounding,
            "sa1" | "anneal1" => Method::Sa1,
            "sa2" | "anneal2" => Method::Sa2,
            _ => return None,
        })
    }
}

/// One exact `MR(D)` answer: the optimum and an A-side removal set attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MrValue {
    pub value: usize,
    pub witness: RemovalSet,
}

/// `values[d]` for `d = 0..=n_b`, with `values[0] = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MrCurve {
    pub values: Vec<usize>,
    pub method: Method,
    pub witnesses: Option<Vec<RemovalSet>>,
}

impl MrCurve {
    pub fn get(&self, d: usize) -> Option<usize> {
        self.values.get(d).copied()
    }

    pub fn max_d(&self) -> usize {
        self.values.len() - 1
    }
}

pub(crate) fn require_operating_bistar(net: &InterdependentNetwork) -> Result<()> {
    if !net.is_bidirectional_star() {
        return Err(Error::NotBidirectionalStar);
    }
    let v = net.validate();
    if let Some(first) = v.first() {
        return Err(Error::InvalidNetwork(first.to_string()));
    }
    Ok(())
}

pub(crate) fn check_target(net: &InterdependentNetwork, d: usize) -> Result<()> {
    if d > net.n_b() {
        return Err(Error::TargetOutOfRange {
            d,
            min: 0,
            max: net.n_b(),
        });
    }
    Ok(())
}

/// `C(n, k)`, saturating.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn neighborhood_sets(net: &InterdependentNetwork) -> Vec<BitSet> {
    (0..net.n_b())
        .map(|b| BitSet::from_indices(net.n_a(), net.neighbors_of_b(b)))
        .collect()
}

struct SubsetSearch<'a> {
    nbrs: &'a [BitSet],
    d: usize,
    unions: Vec<BitSet>,
    best: usize,
    best_set: Option<BitSet>,
}

impl SubsetSearch<'_> {
    fn visit(&mut self, depth: usize, start: usize) {
        if depth == self.d {
            let c = self.unions[depth].count();
            if c < self.best {
                self.best = c;
                self.best_set = Some(self.unions[depth].clone());
            }
            return;
        }
        let n = self.nbrs.len();
        for j in start..=n - (self.d - depth) {
            let (lo, hi) = self.unions.split_at_mut(depth + 1);
            hi[0].copy_from(&lo[depth]);
            hi[0].union_with(&self.nbrs[j]);
            self.visit(depth + 1, j + 1);
        }
    }
}

/// `MR(D)` by enumerating every B-subset of size `D` in lexicographic order;
/// the witness is the neighbourhood of the first minimiser.
pub fn mr_exhaustive(net: &InterdependentNetwork, d: usize) -> Result<MrValue> {
    require_operating_bistar(net)?;
    check_target(net, d)?;
    if d == 0 {
        return Ok(MrValue {
            value: 0,
            witness: NodeSet::new(),
        });
    }
    let nbrs = neighborhood_sets(net);
    let mut search = SubsetSearch {
        nbrs: &nbrs,
        d,
        unions: vec![BitSet::new(net.n_a()); d + 1],
        best: usize::MAX,
        best_set: None,
    };
    search.visit(0, 0);
    let set = search
        .best_set
        .expect("at least one subset of size d exists");
    Ok(MrValue {
        value: search.best,
        witness: NodeSet::side_a(set.iter()),
    })
}

/// Smallest removal set for every target, by enumerating A-subsets in order
/// of size. Returns `(size, removal mask)` indexed by `D = 0..=n_b`.
fn removal_enumeration(net: &InterdependentNetwork, upto: usize) -> Vec<(usize, u64)> {
    let (na, nb) = (net.n_a(), net.n_b());
    let masks: Vec<u64> = (0..nb)
        .map(|b| net.neighbors_of_b(b).iter().fold(0u64, |m, &a| m | 1 << a))
        .collect();
    let mut out: Vec<Option<(usize, u64)>> = vec![None; upto + 1];
    out[0] = Some((0, 0));
    let mut assigned = 1;
    'sizes: for k in 0..=na {
        // Gosper's hack walks the k-subsets in increasing numeric order
        let mut s: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
        loop {
            let covered = masks.iter().filter(|&&m| m & !s == 0).count().min(upto);
            for slot in out.iter_mut().take(covered + 1) {
                if slot.is_none() {
                    *slot = Some((k, s));
                    assigned += 1;
                }
            }
            if assigned == upto + 1 {
                break 'sizes;
            }
            if k == 0 {
                break;
            }
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
            if s >> na != 0 {
                break;
            }
        }
    }
    out.into_iter()
        .map(|x| x.expect("removing all of A fails all of B"))
        .collect()
}

fn mask_to_set(mask: u64) -> RemovalSet {
    NodeSet::side_a((0..64).filter(|i| mask >> i & 1 == 1))
}

/// `MR(D)` by enumerating A-side removal sets; needs `n_a <= 23`.
pub fn mr_by_removals(net: &InterdependentNetwork, d: usize) -> Result<MrValue> {
    require_operating_bistar(net)?;
    check_target(net, d)?;
    if net.n_a() > REMOVAL_ENUM_LIMIT {
        return Err(Error::TooLarge(format!(
            "n_a = {} > {REMOVAL_ENUM_LIMIT}",
            net.n_a()
        )));
    }
    let (value, mask) = removal_enumeration(net, d)[d];
    Ok(MrValue {
        value,
        witness: mask_to_set(mask),
    })
}

/// Proven-optimal `MR(D)` by branch-and-bound on the integer program,
/// using LP relaxations for bounds and the greedy answer as first incumbent.
/// Branches on the most fractional `y_j` (lowest index on ties), `y_j = 1` first.
pub fn mr_branch_and_bound(net: &InterdependentNetwork, d: usize) -> Result<MrValue> {
    require_operating_bistar(net)?;
    check_target(net, d)?;
    if d == 0 {
        return Ok(MrValue {
            value: 0,
            witness: NodeSet::new(),
        });
    }
    let incumbent = heuristics::greedy(net, d, 0)?;
    let mut best = incumbent.size;
    let mut best_set = incumbent.removal;

    let mut stack = vec![Fixings::none()];
    while let Some(fix) = stack.pop() {
        let sol = lp::solve_relaxation(net, d, &fix)?;
        if !sol.is_optimal() {
            continue;
        }
        let bound = (sol.objective - 1e-6).ceil().max(0.0) as usize;
        if bound >= best {
            continue;
        }
        let fractional = sol
            .y_star
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > INTEGRALITY_TOL && v < 1.0 - INTEGRALITY_TOL)
            .min_by(|(i, u), (j, v)| {
                (*u - 0.5)
                    .abs()
                    .partial_cmp(&(*v - 0.5).abs())
                    .expect("finite LP values")
                    .then(i.cmp(j))
            })
            .map(|(j, _)| j);
        match fractional {
            None => {
                let mut removed = BitSet::new(net.n_a());
                for (j, _) in sol.y_star.iter().enumerate().filter(|(_, &v)| v > 0.5) {
                    for &a in net.neighbors_of_b(j) {
                        removed.insert(a);
                    }
                }
                if removed.count() < best {
                    best = removed.count();
                    best_set = NodeSet::side_a(removed.iter());
                }
            }
            Some(j) => {
                let mut zero = fix.clone();
                zero.y.insert(j, false);
                let mut one = fix;
                one.y.insert(j, true);
                stack.push(zero);
                stack.push(one);
            }
        }
    }
    Ok(MrValue {
        value: best,
        witness: best_set,
    })
}

/// Exact `MR(D)`: B-subset enumeration while `C(n_b, D) <= 10^7`, otherwise
/// removal-set enumeration for small `A`, otherwise branch-and-bound.
pub fn mr_exact(net: &InterdependentNetwork, d: usize) -> Result<MrValue> {
    require_operating_bistar(net)?;
    check_target(net, d)?;
    if binomial(net.n_b(), d) <= EXHAUSTIVE_LIMIT {
        mr_exhaustive(net, d)
    } else if net.n_a() <= REMOVAL_ENUM_LIMIT {
        mr_by_removals(net, d)
    } else {
        mr_branch_and_bound(net, d)
    }
}

/// Exact `MR(D)` for every `D = 0..=n_b`.
pub fn mr_curve(net: &InterdependentNetwork) -> Result<MrCurve> {
    require_operating_bistar(net)?;
    let nb = net.n_b();
    let (values, witnesses) = if net.n_a() <= REMOVAL_ENUM_LIMIT {
        removal_enumeration(net, nb)
            .into_iter()
            .map(|(v, m)| (v, mask_to_set(m)))
            .unzip()
    } else {
        let mut vals = Vec::with_capacity(nb + 1);
        let mut wits = Vec::with_capacity(nb + 1);
        for d in 0..=nb {
            let r = mr_exact(net, d)?;
            vals.push(r.value);
            wits.push(r.witness);
        }
        (vals, wits)
    };
    Ok(MrCurve {
        values,
        method: Method::Exact,
        witnesses: Some(witnesses),
    })
}

/// `MRB(D) = min_{i = 0..D} MR(i) + D - i` from an `MR` curve.
pub fn mrb_from_curve(curve: &[usize], d: usize) -> usize {
    (0..=d)
        .map(|i| curve[i] + d - i)
        .min()
        .expect("range is non-empty")
}

/// `MRB(D)` of a bidirectional star network via its `MR` curve.
pub fn mrb_exact(net: &InterdependentNetwork, d: usize) -> Result<usize> {
    require_operating_bistar(net)?;
    check_target(net, d)?;
    let curve: Vec<usize> = if net.n_a() <= REMOVAL_ENUM_LIMIT {
        removal_enumeration(net, d)
            .into_iter()
            .map(|(v, _)| v)
            .collect()
    } else {
        (0..=d)
            .map(|i| mr_exact(net, i).map(|r| r.value))
            .collect::<Result<_>>()?
    };
    Ok(mrb_from_curve(&curve, d))
}

/// `MRB(D)` with a witness drawn from both sides: an optimal `MR(i)` removal
/// set plus `D - i` B-nodes it leaves operating (lowest indices first).
pub fn mrb_exact_with_witness(net: &InterdependentNetwork, d: usize) -> Result<MrValue> {
    require_operating_bistar(net)?;
    check_target(net, d)?;
    let a_part = if net.n_a() <= REMOVAL_ENUM_LIMIT {
        let curve = removal_enumeration(net, d);
        let i = (0..=d)
            .min_by_key(|&i| curve[i].0 + d - i)
            .expect("range is non-empty");
        mask_to_set(curve[i].1)
    } else {
        let parts: Vec<MrValue> = (0..=d).map(|i| mr_exact(net, i)).collect::<Result<_>>()?;
        let i = (0..=d)
            .min_by_key(|&i| parts[i].value + d - i)
            .expect("range is non-empty");
        parts[i].witness.clone()
    };
    let failed = crate::cascade::one_stage_failures(net, &a_part)?;
    let extra = (0..net.n_b())
        .filter(|b| failed.b().binary_search(b).is_err())
        .take(d.saturating_sub(failed.len()));
    let witness = NodeSet::from_sides(a_part.a().iter().copied(), extra);
    Ok(MrValue {
        value: witness.len(),
        witness,
    })
}

/// Walks all `k`-subsets of `0..n` (as bit masks), in increasing numeric order.
fn for_each_k_subset(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) {
    if k > n {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let mut s: u64 = (1u64 << k) - 1;
    loop {
        if !f(s) {
            return;
        }
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
        if s >> n != 0 {
            return;
        }
    }
}

fn split_mask(mask: u64, n_a: usize, a: &mut Vec<usize>, b: &mut Vec<usize>) {
    a.clear();
    b.clear();
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        if i < n_a {
            a.push(i);
        } else {
            b.push(i - n_a);
        }
    }
}

/// `MRB(D)` by brute force over removal sets drawn from both sides, with the
/// full cascade engine deciding failures. Works for any topology; needs
/// `n_a + n_b <= 20`.
pub fn mrb_exact_general(net: &InterdependentNetwork, d: usize) -> Result<usize> {
    check_target(net, d)?;
    let n = net.n_a() + net.n_b();
    if n > GENERAL_LIMIT {
        return Err(Error::TooLarge(format!(
            "n_a + n_b = {n} > {GENERAL_LIMIT}"
        )));
    }
    let mut engine = CascadeEngine::new(net);
    let (mut ra, mut rb) = (Vec::new(), Vec::new());
    for k in 0..=n {
        let mut hit = false;
        for_each_k_subset(n, k, |mask| {
            split_mask(mask, net.n_a(), &mut ra, &mut rb);
            hit = engine.failed_b_count(&ra, &rb) >= d;
            !hit
        });
        if hit {
            return Ok(k);
        }
    }
    unreachable!("removing every B-node fails all of them")
}

/// `MRB(D)` for every `D = 0..=n_b` from a single pass over all removal sets
/// of both sides, using the cascade engine. Needs `n_a + n_b <= 20`.
pub fn mrb_curve_general(net: &InterdependentNetwork) -> Result<Vec<usize>> {
    let n = net.n_a() + net.n_b();
    if n > GENERAL_LIMIT {
        return Err(Error::TooLarge(format!(
            "n_a + n_b = {n} > {GENERAL_LIMIT}"
        )));
    }
    let mut engine = CascadeEngine::new(net);
    let (mut ra, mut rb) = (Vec::new(), Vec::new());
    let mut best = vec![usize::MAX; net.n_b() + 1];
    for mask in 0u64..1 << n {
        split_mask(mask, net.n_a(), &mut ra, &mut rb);
        let f = engine.failed_b_count(&ra, &rb);
        let size = mask.count_ones() as usize;
        best[f] = best[f].min(size);
    }
    for d in (0..net.n_b()).rev() {
        best[d] = best[d].min(best[d + 1]);
    }
    Ok(best)
}

/// `MR(D)` by brute force over A-side removal sets with the full cascade
/// engine; valid for unidirectional and general topologies. Needs `n_a <= 20`.
pub fn mr_by_cascade(net: &InterdependentNetwork, d: usize) -> Result<Option<usize>> {
    check_target(net, d)?;
    if net.n_a() > GENERAL_LIMIT {
        return Err(Error::TooLarge(format!(
            "n_a = {} > {GENERAL_LIMIT}",
            net.n_a()
        )));
    }
    let mut engine = CascadeEngine::new(net);
    let (mut ra, mut rb) = (Vec::new(), Vec::new());
    for k in 0..=net.n_a() {
        let mut hit = false;
        for_each_k_subset(net.n_a(), k, |mask| {
            split_mask(mask, net.n_a(), &mut ra, &mut rb);
            hit = engine.failed_b_count(&ra, &rb) >= d;
            !hit
        });
        if hit {
            return Ok(Some(k));
        }
    }
    // in GEN topologies some B-nodes may survive the loss of all of A
    Ok(None)
}

/// Bipartite complement of the interdependency edges.
pub fn complement_transform(net: &InterdependentNetwork) -> Result<BipartiteGraph> {
    if !net.is_bidirectional_star() {
        return Err(Error::NotBidirectionalStar);
    }
    Ok(complement_graph(&BipartiteGraph::from(net)))
}

pub fn complement_graph(g: &BipartiteGraph) -> BipartiteGraph {
    let have: std::collections::HashSet<(usize, usize)> = g.edges().iter().copied().collect();
    let edges = (0..g.n_a())
        .flat_map(|a| (0..g.n_b()).map(move |b| (a, b)))
        .filter(|e| !have.contains(e))
        .collect();
    BipartiteGraph::new(g.n_a(), g.n_b(), edges).expect("complement edges are in range")
}

/// Size of the largest A-side set that, together with at least `d` B-nodes,
/// spans a complete bipartite subgraph. The empty A-set always qualifies.
pub fn max_one_sided_biclique(g: &BipartiteGraph, d: usize) -> Result<usize> {
    if d > g.n_b() {
        return Err(Error::TargetOutOfRange {
            d,
            min: 0,
            max: g.n_b(),
        });
    }
    let mut adj_a = vec![BitSet::new(g.n_b()); g.n_a()];
    for &(a, b) in g.edges() {
        adj_a[a].insert(b);
    }

    struct Search<'a> {
        adj_a: &'a [BitSet],
        d: usize,
        best: usize,
    }
    impl Search<'_> {
        fn grow(&mut self, next: usize, size: usize, common: &BitSet) {
            self.best = self.best.max(size);
            let n = self.adj_a.len();
            for a in next..n {
                if size + (n - a) <= self.best {
                    return;
                }
                let mut c = common.clone();
                c.intersect_with(&self.adj_a[a]);
                if c.count() >= self.d {
                    self.grow(a + 1, size + 1, &c);
                }
            }
        }
    }
    let mut s = Search {
        adj_a: &adj_a,
        d,
        best: 0,
    };
    s.grow(0, 0, &BitSet::full(g.n_b()));
    Ok(s.best)
}

/// Replaces every B-node by `w` copies that inherit its A-neighbours.
/// Requires `w > n_a + n_b`.
pub fn cluster_expand(net: &InterdependentNetwork, w: usize) -> Result<InterdependentNetwork> {
    if !net.is_bidirectional_star() {
        return Err(Error::NotBidirectionalStar);
    }
    if w <= net.n_a() + net.n_b() {
        return Err(Error::InvalidParameter(format!(
            "cluster size {w} must exceed n_a + n_b = {}",
            net.n_a() + net.n_b()
        )));
    }
    let edges = net
        .edges_ab()
        .iter()
        .flat_map(|&(a, b)| (0..w).map(move |c| (a, b * w + c)))
        .collect();
    Ok(InterdependentNetwork::bidirectional_star(
        net.n_a(),
        net.n_b() * w,
        edges,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade::one_stage_failures;

    fn k22() -> InterdependentNetwork {
        InterdependentNetwork::bidirectional_star(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)])
            .unwrap()
    }

    fn matching(n: usize) -> InterdependentNetwork {
        InterdependentNetwork::bidirectional_star(n, n, (0..n).map(|i| (i, i)).collect()).unwrap()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(30, 15), 155_117_520);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(7, 0), 1);
    }

    #[test]
    fn complete_two_by_two() {
        let net = k22();
        assert_eq!(mr_exact(&net, 1).unwrap().value, 2);
        let r = mr_exact(&net, 2).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.witness, NodeSet::side_a([0, 1]));
        assert_eq!(mrb_exact(&net, 2).unwrap(), 2);
        assert_eq!(mrb_exact(&net, 0).unwrap(), 0);
    }

    #[test]
    fn matching_values() {
        let net = matching(3);
        assert_eq!(mrb_exact(&net, 1).unwrap(), 1);
        for d in 0..=3 {
            assert_eq!(mr_exact(&net, d).unwrap().value, d);
            assert_eq!(mr_branch_and_bound(&net, d).unwrap().value, d);
        }
    }

    #[test]
    fn routes_agree_on_worst_case() {
        let net = crate::generators::gen_greedy_worst_case(2, 2).unwrap();
        assert_eq!(mr_exhaustive(&net, 2).unwrap().value, 2);
        assert_eq!(mr_by_removals(&net, 2).unwrap().value, 2);
        let bb = mr_branch_and_bound(&net, 2).unwrap();
        assert_eq!(bb.value, 2);
        assert!(one_stage_failures(&net, &bb.witness).unwrap().b().len() >= 2);
    }

    #[test]
    fn target_out_of_range() {
        assert!(matches!(
            mr_exact(&k22(), 3),
            Err(Error::TargetOutOfRange { .. })
        ));
        let bb = mr_branch_and_bound(&k22(), 0).unwrap();
        assert_eq!((bb.value, bb.witness.len()), (0, 0));
    }

    #[test]
    fn rejects_non_star() {
        let uni =
            InterdependentNetwork::unidirectional_star(1, 1, vec![(0, 0)], vec![(0, 0)]).unwrap();
        assert!(matches!(
            mr_exact(&uni, 1),
            Err(Error::NotBidirectionalStar)
        ));
        assert_eq!(mr_by_cascade(&uni, 1).unwrap(), Some(1));
    }

    #[test]
    fn mrb_witness_is_sound() {
        for seed in 0..10 {
            let net = crate::generators::gen_type1(8, 2.0, seed).unwrap();
            for d in 0..=8 {
                let w = mrb_exact_with_witness(&net, d).unwrap();
                assert_eq!(w.value, mrb_exact(&net, d).unwrap());
                let r = crate::cascade::cascade(&net, &w.witness).unwrap();
                assert!(r.failed_b.len() >= d);
            }
        }
    }

    #[test]
    fn general_brute_force_small_cases() {
        let net = k22();
        // D=1: remove the B-node itself
        assert_eq!(mrb_exact_general(&net, 1).unwrap(), 1);
        assert_eq!(mrb_exact_general(&net, 2).unwrap(), 2);
        assert_eq!(mrb_exact_general(&net, 0).unwrap(), 0);
        assert_eq!(mrb_curve_general(&net).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn complement_examples() {
        assert!(complement_transform(&k22()).unwrap().edges().is_empty());
        let g = complement_transform(&matching(3)).unwrap();
        assert_eq!(g.edges().len(), 6);
        assert!(g.edges().iter().all(|&(a, b)| a != b));
        let empty = BipartiteGraph::new(2, 3, vec![]).unwrap();
        assert_eq!(complement_graph(&empty).edges().len(), 6);
    }

    #[test]
    fn biclique_examples() {
        let empty = complement_transform(&k22()).unwrap();
        assert_eq!(max_one_sided_biclique(&empty, 1).unwrap(), 0);
        let full = complement_graph(&BipartiteGraph::new(3, 3, vec![]).unwrap());
        assert_eq!(max_one_sided_biclique(&full, 2).unwrap(), 3);
        assert!(max_one_sided_biclique(&full, 4).is_err());
    }

    #[test]
    fn cluster_expansion() {
        let one = InterdependentNetwork::bidirectional_star(1, 1, vec![(0, 0)]).unwrap();
        let g = cluster_expand(&one, 3).unwrap();
        assert_eq!((g.n_a(), g.n_b(), g.edges_ab().len()), (1, 3, 3));
        assert!(cluster_expand(&one, 2).is_err());
        let net = k22();
        let w = 5;
        let g = cluster_expand(&net, w).unwrap();
        assert_eq!(g.edges_ab().len(), w * net.edges_ab().len());
        assert_eq!(mrb_exact(&g, w).unwrap(), mr_exact(&net, 1).unwrap().value);
    }

    #[test]
    fn curve_matches_pointwise() {
        let net = crate::generators::gen_type1(10, 2.0, 4).unwrap();
        let curve = mr_curve(&net).unwrap();
        assert_eq!(curve.max_d(), 10);
        for d in 0..=10 {
            assert_eq!(
                curve.get(d),
                Some(mr_exhaustive(&net, d).unwrap().value),
                "d={d}"
            );
        }
    }
}
