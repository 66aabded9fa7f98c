//! Seeded generators for bidirectional star networks.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::netmodel::InterdependentNetwork;
use crate::rng::{seeded, stream, Rng64};

const MAX_RESTARTS: usize = 10_000;

/// Degree law on `1..=n`: `Bin(n, mean/n)`, with zero draws redrawn so every
/// node has at least one interdependency edge. The redraw raises the realized
/// mean above `mean` for small `mean` (about 1.58 at `mean = 1`, `n = 100`).
#[derive(Debug, Clone, Copy)]
struct DegreeLaw {
    n: usize,
    p: f64,
}

impl DegreeLaw {
    fn with_mean(n: usize, mean: f64) -> Self {
        DegreeLaw {
            n,
            p: (mean / n as f64).clamp(0.0, 1.0),
        }
    }

    /// Expected degree after the zero redraw.
    #[cfg(test)]
    fn realized_mean(&self) -> f64 {
        self.n as f64 * self.p / (1.0 - (1.0 - self.p).powi(self.n as i32))
    }

    fn sample(&self, rng: &mut Rng64) -> usize {
        if self.p >= 1.0 {
            return self.n;
        }
        let bin = Binomial::new(self.n as u64, self.p).expect("valid binomial parameters");
        loop {
            let d = bin.sample(rng) as usize;
            if d >= 1 {
                return d;
            }
        }
    }
}

/// Pairs stubs uniformly and rewires parallel edges with degree-preserving
/// swaps. `None` if the repair gets stuck.
fn realize(deg_a: &[usize], deg_b: &[usize], rng: &mut Rng64) -> Option<Vec<(usize, usize)>> {
    let stubs_a: Vec<usize> = deg_a
        .iter()
        .enumerate()
        .flat_map(|(i, &d)| std::iter::repeat_n(i, d))
        .collect();
    let mut stubs_b: Vec<usize> = deg_b
        .iter()
        .enumerate()
        .flat_map(|(i, &d)| std::iter::repeat_n(i, d))
        .collect();
    debug_assert_eq!(stubs_a.len(), stubs_b.len());
    stubs_b.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = stubs_a.into_iter().zip(stubs_b).collect();
    let mut mult: HashMap<(usize, usize), u32> = HashMap::with_capacity(edges.len());
    for &e in &edges {
        *mult.entry(e).or_default() += 1;
    }
    let mut pending: Vec<usize> = (0..edges.len()).filter(|&i| mult[&edges[i]] > 1).collect();
    let m = edges.len();
    let mut budget = 200 * m + 1000;
    while let Some(&idx) = pending.last() {
        if mult[&edges[idx]] <= 1 {
            pending.pop();
            continue;
        }
        if budget == 0 {
            return None;
        }
        budget -= 1;
        let other = rng.random_range(0..m);
        let (a1, b1) = edges[idx];
        let (a2, b2) = edges[other];
        if a1 == a2 || b1 == b2 || mult.contains_key(&(a1, b2)) || mult.contains_key(&(a2, b1)) {
            continue;
        }
        for e in [(a1, b1), (a2, b2)] {
            let c = mult.get_mut(&e).expect("edge is present");
            *c -= 1;
            if *c == 0 {
                mult.remove(&e);
            }
        }
        edges[idx] = (a1, b2);
        edges[other] = (a2, b1);
        mult.insert((a1, b2), 1);
        mult.insert((a2, b1), 1);
    }
    edges.sort_unstable();
    Some(edges)
}

fn sample_sequence(laws: &[DegreeLaw], rng: &mut Rng64) -> Vec<usize> {
    laws.iter().map(|l| l.sample(rng)).collect()
}

fn configuration_network(n: usize, means: &[f64], seed: u64) -> Result<InterdependentNetwork> {
    let laws: Vec<DegreeLaw> = means.iter().map(|&m| DegreeLaw::with_mean(n, m)).collect();
    let mut rng = seeded(seed, stream::GEN_BINOMIAL);
    for _ in 0..MAX_RESTARTS {
        let deg_a = sample_sequence(&laws, &mut rng);
        let mut deg_b = sample_sequence(&laws, &mut rng);
        let total: usize = deg_a.iter().sum();
        // reconcile stub counts by redrawing the last B-node's degree
        let mut matched = false;
        for _ in 0..64 {
            let rest: usize = deg_b[..n - 1].iter().sum();
            if rest < total && total - rest <= n {
                let last = laws[n - 1].sample(&mut rng);
                deg_b[n - 1] = last;
                if rest + last == total {
                    matched = true;
                    break;
                }
            } else {
                break;
            }
        }
        if !matched {
            continue;
        }
        if let Some(edges) = realize(&deg_a, &deg_b, &mut rng) {
            return Ok(InterdependentNetwork::bidirectional_star(n, n, edges)?);
        }
    }
    Err(Error::InvalidParameter(format!(
        "could not realize a degree sequence for n={n}"
    )))
}

fn check_mean(n: usize, k: f64, what: &str) -> Result<()> {
    if !(k >= 1.0 && k <= n as f64) {
        return Err(Error::InvalidParameter(format!(
            "{what}={k} must lie in [1, n={n}]"
        )));
    }
    Ok(())
}

/// Random bipartite network with `n` nodes per side, every node drawing a
/// binomial degree (conditioned on `>= 1`) with mean `k`; stubs are paired
/// uniformly and edges mirrored in both directions.
pub fn gen_type1(n: usize, k: f64, seed: u64) -> Result<InterdependentNetwork> {
    gen_type2_unchecked(n, k, k, seed)
}

/// Like [`gen_type1`] but the first half of each side has mean degree `k1`
/// and the second half `k2`. `n` must be even.
pub fn gen_type2(n: usize, k1: f64, k2: f64, seed: u64) -> Result<InterdependentNetwork> {
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "type-2 networks need an even n, got {n}"
        )));
    }
    gen_type2_unchecked(n, k1, k2, seed)
}

fn gen_type2_unchecked(n: usize, k1: f64, k2: f64, seed: u64) -> Result<InterdependentNetwork> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    check_mean(n, k1, "k1")?;
    check_mean(n, k2, "k2")?;
    let means: Vec<f64> = (0..n).map(|i| if i < n / 2 { k1 } else { k2 }).collect();
    configuration_network(n, &means, seed)
}

/// Union of `k` random perfect matchings, collisions repaired by swapping
/// partners. Dense cases (`2k > n`) are built as the complement of an
/// `(n - k)`-regular network.
pub fn gen_regular(n: usize, k: usize, seed: u64) -> Result<InterdependentNetwork> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let mut rng = seeded(seed, stream::GEN_REGULAR);
    let (build_k, complement) = if 2 * k > n { (n - k, true) } else { (k, false) };
    let edges = regular_edges(n, build_k, &mut rng)?;
    let edges = if complement {
        let have: HashSet<(usize, usize)> = edges.into_iter().collect();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|e| !have.contains(e))
            .collect()
    } else {
        edges
    };
    Ok(InterdependentNetwork::bidirectional_star(n, n, edges)?)
}

fn regular_edges(n: usize, k: usize, rng: &mut Rng64) -> Result<Vec<(usize, usize)>> {
    'restart: for _ in 0..MAX_RESTARTS {
        let mut present = vec![false; n * n];
        for _ in 0..k {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            let mut budget = 100 * n * n + 100;
            while let Some(i) = (0..n).find(|&i| present[i * n + perm[i]]) {
                if budget == 0 {
                    continue 'restart;
                }
                budget -= 1;
                let j = rng.random_range(0..n);
                if j != i && !present[i * n + perm[j]] && !present[j * n + perm[i]] {
                    perm.swap(i, j);
                }
            }
            for (a, &b) in perm.iter().enumerate() {
                present[a * n + b] = true;
            }
        }
        let edges = (0..n * n)
            .filter(|&e| present[e])
            .map(|e| (e / n, e % n))
            .collect();
        return Ok(edges);
    }
    Err(Error::InvalidParameter(format!(
        "could not build a {k}-regular network on {n} nodes"
    )))
}

/// Worst case for the greedy heuristic: `A` has `x(d+1)` nodes in `d+1`
/// batches of `x`; `B` has `2d` nodes. B-node `i < d` is wired to all of
/// A-batch `i`, and every B-node `i >= d` to all of the last A-batch.
pub fn gen_greedy_worst_case(x: usize, d: usize) -> Result<InterdependentNetwork> {
    if x == 0 || d == 0 {
        return Err(Error::InvalidParameter("x and d must be positive".into()));
    }
    let mut edges = Vec::with_capacity(2 * d * x);
    for b in 0..2 * d {
        let batch = b.min(d);
        for a in batch * x..(batch + 1) * x {
            edges.push((a, b));
        }
    }
    Ok(InterdependentNetwork::bidirectional_star(
        x * (d + 1),
        2 * d,
        edges,
    )?)
}
