//! Robust interdependency design: the explicit 2-robust construction, an
//! exhaustive search for regular allocations maximising `MR(2)`, node
//! expansion and relative robustness.

use num_rational::Ratio;
use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{self, require_operating_bistar};
use crate::heuristics;
use crate::lp::{self, Fixings};
use crate::netmodel::{BipartiteGraph, InterdependentNetwork, NodeSet};
use crate::rng::{seeded, stream};

/// Side-size cap for exhaustive subset enumeration.
pub const EXPANSION_LIMIT: usize = 20;
/// Side-size cap for the exhaustive design search.
pub const DESIGN_LIMIT: usize = 12;

/// Finite field of prime-power order, as addition and multiplication tables
/// over the element codes `0..q`.
struct Gf {
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|p| q.is_multiple_of(*p))?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl Gf {
    fn new(q: usize) -> Option<Gf> {
        let (p, e) = prime_power(q)?;
        let e = e as usize;
        let digits = |mut x: usize| -> Vec<usize> {
            (0..e)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let code = |v: &[usize]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
        let add: Vec<usize> = (0..q * q)
            .map(|ab| {
                let (a, b) = (digits(ab / q), digits(ab % q));
                code(
                    &a.iter()
                        .zip(&b)
                        .map(|(x, y)| (x + y) % p)
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        // candidate monic modulus x^e + c(x); the first one yielding a field is irreducible
        for c in 0..q {
            let low = digits(c);
            let mul: Vec<usize> = (0..q * q)
                .map(|ab| {
                    let (a, b) = (digits(ab / q), digits(ab % q));
                    let mut prod = vec![0usize; 2 * e];
                    for (i, x) in a.iter().enumerate() {
                        for (j, y) in b.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    for deg in (e..2 * e).rev() {
                        let lead = prod[deg];
                        if lead != 0 {
                            prod[deg] = 0;
                            for (i, l) in low.iter().enumerate() {
                                let t = &mut prod[deg - e + i];
                                *t = (*t + p * p - lead * l % p) % p;
                            }
                        }
                    }
                    code(&prod[..e])
                })
                .collect();
            let is_field = (1..q).all(|a| (1..q).any(|b| mul[a * q + b] == 1));
            if is_field {
                return Some(Gf { q, add, mul });
            }
        }
        None
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }
}

/// Node numbering of the 2-robust construction for degree `k` (`q = k - 1`).
/// A: node 0 is the hub; batch `j` of the second A-group holds
/// `1 + j*q .. 1 + (j+1)*q` for `j = 0..k`. B: nodes `0..k` are the hub's
/// neighbours; batch `m` of the second B-group holds `k + m*q ..` for `m = 0..q`.
#[derive(Debug, Clone, Copy)]
pub struct ConstructionLayout {
    pub k: usize,
}

impl ConstructionLayout {
    pub fn q(&self) -> usize {
        self.k - 1
    }

    pub fn n(&self) -> usize {
        self.k * (self.k - 1) + 1
    }

    pub fn a_batch(&self, j: usize, i: usize) -> usize {
        1 + j * self.q() + i
    }

    pub fn b_batch(&self, m: usize, c: usize) -> usize {
        self.k + m * self.q() + c
    }
}

/// `k`-regular network on `k(k-1)+1` nodes per side in which every pair of
/// same-side nodes shares exactly one neighbour, so `MR(2) = 2k - 1`.
///
/// The cross wiring between the first `k-1` A-batches and the B-batches uses
/// field arithmetic: node `i` of A-batch `j` meets node `i + s_m x_j` of
/// B-batch `m`. This needs `k - 1` to be a prime power (or `k = 2`).
pub fn construct_2robust(k: usize) -> Result<InterdependentNetwork> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "degree must be at least 2, got {k}"
        )));
    }
    let lay = ConstructionLayout { k };
    let q = lay.q();
    let n = lay.n();
    let mut edges = Vec::with_capacity(n * k);
    for b in 0..k {
        edges.push((0, b));
        for i in 0..q {
            edges.push((lay.a_batch(b, i), b));
        }
    }
    for i in 0..q {
        for c in 0..q {
            edges.push((lay.a_batch(k - 1, i), lay.b_batch(i, c)));
        }
    }
    if q == 1 {
        edges.push((lay.a_batch(0, 0), lay.b_batch(0, 0)));
    } else {
        let gf = Gf::new(q).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "k - 1 = {q} is not a prime power; no field-based wiring exists"
            ))
        })?;
        for j in 0..q {
            for i in 0..q {
                for m in 0..q {
                    edges.push((lay.a_batch(j, i), lay.b_batch(m, gf.add(i, gf.mul(m, j)))));
                }
            }
        }
    }
    edges.sort_unstable();
    Ok(InterdependentNetwork::bidirectional_star(n, n, edges)?)
}

/// The seven wiring conditions between the first `k-1` A-batches and the
/// B-batches, evaluated on `net` using the numbering of
/// [`ConstructionLayout`]. Entry `c - 1` holds condition `c`.
pub fn construction_conditions(net: &InterdependentNetwork, k: usize) -> Result<[bool; 7]> {
    let lay = ConstructionLayout { k };
    if k < 2 || net.n_a() != lay.n() || net.n_b() != lay.n() {
        return Err(Error::InvalidParameter(format!(
            "network does not have the layout for k = {k}"
        )));
    }
    let q = lay.q();
    let a_nodes: Vec<(usize, usize)> = (0..q).flat_map(|j| (0..q).map(move |i| (j, i))).collect();
    let b_nodes = a_nodes.clone();
    let mut adj = vec![vec![false; net.n_b()]; net.n_a()];
    for &(a, b) in net.edges_ab() {
        adj[a][b] = true;
    }
    let linked =
        |(j, i): (usize, usize), (m, c): (usize, usize)| adj[lay.a_batch(j, i)][lay.b_batch(m, c)];
    let a_deg = |x| b_nodes.iter().filter(|&&y| linked(x, y)).count();
    let b_deg = |y| a_nodes.iter().filter(|&&x| linked(x, y)).count();
    let a_in_batch = |x, m: usize| (0..q).filter(|&c| linked(x, (m, c))).count();
    let b_in_batch = |y, j: usize| (0..q).filter(|&i| linked((j, i), y)).count();
    let shared_b = |x, x2| {
        b_nodes
            .iter()
            .filter(|&&y| linked(x, y) && linked(x2, y))
            .count()
    };
    let shared_a = |y, y2| {
        a_nodes
            .iter()
            .filter(|&&x| linked(x, y) && linked(x, y2))
            .count()
    };
    let pairs = |nodes: &[(usize, usize)]| -> Vec<((usize, usize), (usize, usize))> {
        nodes
            .iter()
            .enumerate()
            .flat_map(|(s, &u)| nodes[s + 1..].iter().map(move |&v| (u, v)))
            .collect()
    };
    let (pa, pb) = (pairs(&a_nodes), pairs(&b_nodes));
    Ok([
        a_nodes.iter().all(|&x| a_deg(x) == q) && b_nodes.iter().all(|&y| b_deg(y) == q),
        a_nodes
            .iter()
            .all(|&x| (0..q).all(|m| a_in_batch(x, m) == 1)),
        pa.iter()
            .filter(|(u, v)| u.0 == v.0)
            .all(|&(u, v)| shared_b(u, v) == 0),
        pa.iter()
            .filter(|(u, v)| u.0 != v.0)
            .all(|&(u, v)| shared_b(u, v) == 1),
        b_nodes
            .iter()
            .all(|&y| (0..q).all(|j| b_in_batch(y, j) == 1)),
        pb.iter()
            .filter(|(u, v)| u.0 == v.0)
            .all(|&(u, v)| shared_a(u, v) == 0),
        pb.iter()
            .filter(|(u, v)| u.0 != v.0)
            .all(|&(u, v)| shared_a(u, v) == 1),
    ])
}

/// Largest number of common neighbours over all same-side node pairs.
pub fn max_pair_overlap(g: &BipartiteGraph) -> usize {
    let mut adj_a = vec![Vec::new(); g.n_a()];
    for &(a, b) in g.edges() {
        adj_a[a].push(b);
    }
    let overlap = |x: &[usize], y: &[usize]| x.iter().filter(|v| y.contains(v)).count();
    let side_max = |lists: &[Vec<usize>]| {
        (0..lists.len())
            .flat_map(|u| (u + 1..lists.len()).map(move |v| (u, v)))
            .map(|(u, v)| overlap(&lists[u], &lists[v]))
            .max()
            .unwrap_or(0)
    };
    let adj_b: Vec<Vec<usize>> = (0..g.n_b()).map(|b| g.neighbors_of_b(b).to_vec()).collect();
    side_max(&adj_a).max(side_max(&adj_b))
}

#[derive(Debug, Clone)]
pub struct DesignResult {
    pub network: InterdependentNetwork,
    /// Smallest neighbourhood of a same-side pair, `2k - max overlap`.
    pub x: usize,
}

struct DesignSearch {
    n: usize,
    k: usize,
    combos: Vec<u32>,
    rows: Vec<usize>,
    col_sum: Vec<usize>,
    co: Vec<Vec<usize>>,
    best: usize,
    best_rows: Option<Vec<usize>>,
    floor: usize,
}

impl DesignSearch {
    fn place(&mut self, r: usize, from: usize, overlap: usize) {
        if self.best <= self.floor {
            return;
        }
        if r == self.n {
            self.best = overlap;
            self.best_rows = Some(self.rows.clone());
            return;
        }
        let remaining = self.n - r;
        if self.col_sum.iter().any(|&s| self.k - s > remaining) {
            return;
        }
        for ci in from..self.combos.len() {
            let m = self.combos[ci];
            if (0..self.n).any(|c| m >> c & 1 == 1 && self.col_sum[c] == self.k) {
                continue;
            }
            let mut ov = overlap;
            for &prev in &self.rows {
                ov = ov.max((self.combos[prev] & m).count_ones() as usize);
            }
            let cols: Vec<usize> = (0..self.n).filter(|&c| m >> c & 1 == 1).collect();
            for (s, &c) in cols.iter().enumerate() {
                for &c2 in &cols[s + 1..] {
                    ov = ov.max(self.co[c][c2] + 1);
                }
            }
            if ov >= self.best {
                continue;
            }
            for (s, &c) in cols.iter().enumerate() {
                self.col_sum[c] += 1;
                for &c2 in &cols[s + 1..] {
                    self.co[c][c2] += 1;
                }
            }
            self.rows.push(ci);
            self.place(r + 1, ci, ov);
            self.rows.pop();
            for (s, &c) in cols.iter().enumerate() {
                self.col_sum[c] -= 1;
                for &c2 in &cols[s + 1..] {
                    self.co[c][c2] -= 1;
                }
            }
            if self.best <= self.floor {
                return;
            }
        }
    }
}

/// Exhaustive search over `k`-regular allocations with `n` nodes per side
/// maximising the smallest same-side pair neighbourhood `X`. Node 0 of A is
/// fixed to B-nodes `0..k` and A-rows are kept in lexicographic order.
pub fn design_2robust_ilp(n: usize, k: usize) -> Result<DesignResult> {
    if k == 0 || n < k {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(
            "need at least two nodes per side to form a pair".into(),
        ));
    }
    if n > DESIGN_LIMIT {
        return Err(Error::TooLarge(format!("n = {n} > {DESIGN_LIMIT}")));
    }
    let mut combos = Vec::new();
    for m in 0u32..1 << n {
        if m.count_ones() as usize == k {
            combos.push(m);
        }
    }
    // lexicographic order of the sorted index lists
    combos.sort_by_key(|&m| (0..n).filter(|&c| m >> c & 1 == 1).collect::<Vec<_>>());
    let mut search = DesignSearch {
        n,
        k,
        rows: Vec::with_capacity(n),
        col_sum: vec![0; n],
        co: vec![vec![0; n]; n],
        best: k + 1,
        best_rows: None,
        // with k >= 2 some pair must share a neighbour (counting edges on A-nodes)
        floor: usize::from(k >= 2 && n * k > n),
        combos,
    };
    let first = 0; // combos[0] = {0..k}
    let cols: Vec<usize> = (0..k).collect();
    for (s, &c) in cols.iter().enumerate() {
        search.col_sum[c] += 1;
        for &c2 in &cols[s + 1..] {
            search.co[c][c2] += 1;
        }
    }
    search.rows.push(first);
    search.place(1, first, usize::from(k >= 2));
    let rows = search
        .best_rows
        .ok_or_else(|| Error::InvalidParameter(format!("no {k}-regular network with n = {n}")))?;
    let edges: Vec<(usize, usize)> = rows
        .iter()
        .enumerate()
        .flat_map(|(a, &ci)| {
            let m = search.combos[ci];
            (0..n)
                .filter(move |&c| m >> c & 1 == 1)
                .map(move |b| (a, b))
        })
        .collect();
    let network = InterdependentNetwork::bidirectional_star(n, n, edges)?;
    Ok(DesignResult {
        network,
        x: 2 * k - search.best,
    })
}

/// `min |N(S)| / |S|` over nonempty `S` of B, with the first minimising `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeExpansion {
    #[serde(serialize_with = "ratio_str")]
    pub value: Ratio<u64>,
    pub witness: NodeSet,
}

/// Bounds on node expansion from sampling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionBounds {
    #[serde(serialize_with = "ratio_str")]
    pub lower: Ratio<u64>,
    #[serde(serialize_with = "ratio_str")]
    pub upper: Ratio<u64>,
    pub witness: NodeSet,
    pub samples: usize,
}

fn ratio_str<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn neighbor_masks(g: &BipartiteGraph) -> Result<Vec<u64>> {
    if g.n_a() > 64 {
        return Err(Error::TooLarge(format!("n_a = {} > 64", g.n_a())));
    }
    Ok((0..g.n_b())
        .map(|b| g.neighbors_of_b(b).iter().fold(0u64, |m, &a| m | 1 << a))
        .collect())
}

/// Exact node expansion of the interdependency graph, by enumerating all
/// B-subsets; needs `n_b <= 20`.
pub fn node_expansion(g: &BipartiteGraph) -> Result<NodeExpansion> {
    let nb = g.n_b();
    if nb == 0 {
        return Err(Error::InvalidParameter("empty B side".into()));
    }
    if nb > EXPANSION_LIMIT {
        return Err(Error::TooLarge(format!("n_b = {nb} > {EXPANSION_LIMIT}")));
    }
    let nbrs = neighbor_masks(g)?;
    let mut cover = vec![0u64; 1 << nb];
    let mut best = (Ratio::new_raw(u64::MAX, 1), 0usize);
    for s in 1usize..1 << nb {
        let low = s.trailing_zeros() as usize;
        cover[s] = cover[s & (s - 1)] | nbrs[low];
        let ratio = Ratio::new(cover[s].count_ones() as u64, s.count_ones() as u64);
        if ratio < best.0 {
            best = (ratio, s);
        }
    }
    Ok(NodeExpansion {
        value: best.0,
        witness: NodeSet::side_b((0..nb).filter(|i| best.1 >> i & 1 == 1)),
    })
}

/// Bounds on node expansion for graphs too large to enumerate. The upper
/// bound is the best ratio among greedy solutions for every target size and
/// `samples` random subsets; the lower bound is `min_D ceil(LP(D)) / D`.
pub fn node_expansion_sampled(
    net: &InterdependentNetwork,
    samples: usize,
    seed: u64,
) -> Result<ExpansionBounds> {
    require_operating_bistar(net)?;
    let nb = net.n_b();
    let mut upper = Ratio::new_raw(u64::MAX, 1);
    let mut witness = NodeSet::new();
    let mut lower = Ratio::new_raw(u64::MAX, 1);
    let consider = |removed: usize, set: NodeSet, upper: &mut Ratio<u64>, witness: &mut NodeSet| {
        let r = Ratio::new(removed as u64, set.len() as u64);
        if r < *upper {
            *upper = r;
            *witness = set;
        }
    };
    for d in 1..=nb {
        let g = heuristics::greedy(net, d, seed)?;
        consider(g.size, g.failed, &mut upper, &mut witness);
        let lp = lp::solve_relaxation(net, d, &Fixings::none())?;
        let bound = (lp.objective - 1e-6).ceil().max(0.0) as u64;
        lower = lower.min(Ratio::new(bound, d as u64));
    }
    let mut rng = seeded(seed, stream::EXPANSION_SAMPLE);
    let mut covered = vec![false; net.n_a()];
    for _ in 0..samples {
        let size = rng.random_range(1..=nb);
        let set = sample(&mut rng, nb, size).into_vec();
        covered.fill(false);
        for &b in &set {
            for &a in net.neighbors_of_b(b) {
                covered[a] = true;
            }
        }
        let count = covered.iter().filter(|&&c| c).count();
        consider(count, NodeSet::side_b(set), &mut upper, &mut witness);
    }
    Ok(ExpansionBounds {
        lower: lower.min(upper),
        upper,
        witness,
        samples,
    })
}

/// `min_{1 <= D <= n_b} MR(D) / D` and the smallest `D` attaining it.
pub fn relative_robustness(net: &InterdependentNetwork) -> Result<(Ratio<u64>, usize)> {
    let curve = exact::mr_curve(net)?;
    if curve.max_d() == 0 {
        return Err(Error::InvalidParameter("empty B side".into()));
    }
    let mut best = (Ratio::new(curve.values[1] as u64, 1), 1);
    for d in 2..=curve.max_d() {
        let r = Ratio::new(curve.values[d] as u64, d as u64);
        if r < best.0 {
            best = (r, d);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpanderReport {
    pub n: usize,
    pub k: usize,
    pub alpha: f64,
    pub trials: usize,
    pub successes: usize,
    pub frequency: f64,
}

/// Uniform random graph with `n` nodes per side where every B-node picks
/// `k` distinct A-neighbours.
pub fn random_b_regular(n: usize, k: usize, rng: &mut impl Rng) -> BipartiteGraph {
    let mut edges = Vec::with_capacity(n * k);
    for b in 0..n {
        for a in sample(rng, n, k) {
            edges.push((a, b));
        }
    }
    edges.sort_unstable();
    BipartiteGraph::new(n, n, edges).expect("sampled edges are in range and distinct")
}

/// Whether every `S` of B with `|S| <= max_size` has `|N(S)| >= r |S|`.
pub fn is_node_expander(g: &BipartiteGraph, max_size: usize, r: usize) -> Result<bool> {
    let nb = g.n_b();
    if nb > EXPANSION_LIMIT {
        return Err(Error::TooLarge(format!("n_b = {nb} > {EXPANSION_LIMIT}")));
    }
    if r == 0 || max_size == 0 {
        return Ok(true);
    }
    let nbrs = neighbor_masks(g)?;
    let mut cover = vec![0u64; 1 << nb];
    for s in 1usize..1 << nb {
        cover[s] = cover[s & (s - 1)] | nbrs[s.trailing_zeros() as usize];
        let size = s.count_ones() as usize;
        if size <= max_size && (cover[s].count_ones() as usize) < r * size {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fraction of `trials` uniform `k`-B-regular samples with `n` nodes per side
/// that are `(floor(alpha n), k - 2)` node expanders.
pub fn expander_check(
    n: usize,
    k: usize,
    alpha: f64,
    trials: usize,
    seed: u64,
) -> Result<ExpanderReport> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    if n > EXPANSION_LIMIT {
        return Err(Error::TooLarge(format!("n = {n} > {EXPANSION_LIMIT}")));
    }
    if !(alpha >= 0.0) || trials == 0 {
        return Err(Error::InvalidParameter(
            "alpha must be non-negative and trials positive".into(),
        ));
    }
    let max_size = ((alpha * n as f64).floor() as usize).min(n);
    let r = k.saturating_sub(2);
    let mut rng = seeded(seed, stream::EXPANDER);
    let mut successes = 0;
    for _ in 0..trials {
        let g = random_b_regular(n, k, &mut rng);
        if is_node_expander(&g, max_size, r)? {
            successes += 1;
        }
    }
    Ok(ExpanderReport {
        n,
        k,
        alpha,
        trials,
        successes,
        frequency: successes as f64 / trials as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::mr_exact;

    #[test]
    fn field_tables() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let gf = Gf::new(q).unwrap();
            for a in 0..q {
                assert_eq!(gf.add(a, 0), a);
                assert_eq!(gf.mul(a, 1), a);
                for b in 0..q {
                    for c in 0..q {
                        assert_eq!(gf.mul(a, gf.add(b, c)), gf.add(gf.mul(a, b), gf.mul(a, c)));
                    }
                }
            }
        }
        assert!(Gf::new(6).is_none());
        assert!(Gf::new(10).is_none());
    }

    #[test]
    fn construction_small_cases() {
        let net = construct_2robust(2).unwrap();
        assert_eq!((net.n_a(), net.n_b()), (3, 3));
        assert_eq!(mr_exact(&net, 2).unwrap().value, 3);
        let net = construct_2robust(3).unwrap();
        assert_eq!(net.n_a(), 7);
        assert_eq!(mr_exact(&net, 2).unwrap().value, 5);
        assert_eq!(construction_conditions(&net, 3).unwrap(), [true; 7]);
        assert_eq!(max_pair_overlap(&BipartiteGraph::from(&net)), 1);
        assert!(construct_2robust(1).is_err());
        assert!(construct_2robust(7).is_err());
    }

    #[test]
    fn design_search_small_cases() {
        assert_eq!(design_2robust_ilp(3, 2).unwrap().x, 3);
        assert!(design_2robust_ilp(2, 2).unwrap().x < 3);
        let r = design_2robust_ilp(4, 2).unwrap();
        assert_eq!(
            r.x,
            2 * 2 - max_pair_overlap(&BipartiteGraph::from(&r.network))
        );
        assert!(design_2robust_ilp(2, 3).is_err());
    }

    #[test]
    fn expansion_examples() {
        let k22 =
            InterdependentNetwork::bidirectional_star(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)])
                .unwrap();
        let h = node_expansion(&BipartiteGraph::from(&k22)).unwrap();
        assert_eq!(h.value, Ratio::from_integer(1));
        assert_eq!(h.witness, NodeSet::side_b([0, 1]));
        assert_eq!(
            relative_robustness(&k22).unwrap(),
            (Ratio::from_integer(1), 2)
        );
        let m = InterdependentNetwork::bidirectional_star(4, 4, (0..4).map(|i| (i, i)).collect())
            .unwrap();
        assert_eq!(
            node_expansion(&BipartiteGraph::from(&m)).unwrap().value,
            Ratio::from_integer(1)
        );
        let b = node_expansion_sampled(&k22, 10, 1).unwrap();
        assert!(b.lower <= Ratio::from_integer(1) && b.upper == Ratio::from_integer(1));
    }

    #[test]
    fn expander_trivial_cases() {
        assert_eq!(expander_check(10, 2, 0.5, 20, 3).unwrap().frequency, 1.0);
        assert_eq!(expander_check(10, 3, 0.05, 20, 3).unwrap().frequency, 1.0);
        let r = expander_check(12, 3, 0.25, 50, 3).unwrap();
        assert!(r.frequency > 0.0 && r.frequency <= 1.0);
    }
}
