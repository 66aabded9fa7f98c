//! Cascading-failure engine.
//!
//! A node of `A` operates while (1) it still reaches the source of `A` over
//! operating `A`-nodes and (2) at least one operating `B`-node has an edge
//! into it; symmetrically for `B`. Starting from the removed nodes, each
//! round fails every node that currently violates a rule, all at once,
//! until nothing changes. The surviving set is the largest self-consistent
//! set, so the result does not depend on iteration order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::netmodel::{
    reachable_from_sources, FailureSet, InterdependentNetwork, IntraTopology, NodeSet, RemovalSet,
    Side,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CascadeResult {
    /// `stages[0]` holds the initial removals, `stages[s]` the nodes that
    /// failed in round `s`. Deltas are disjoint.
    pub stages: Vec<FailureSet>,
    /// All failed A-nodes, removals included.
    pub failed_a: Vec<usize>,
    pub failed_b: Vec<usize>,
    pub surviving_a: Vec<usize>,
    pub surviving_b: Vec<usize>,
    /// Number of non-empty rounds after the initial removal.
    pub stage_count: usize,
}

impl CascadeResult {
    pub fn failed(&self) -> FailureSet {
        NodeSet::from_sides(self.failed_a.iter().copied(), self.failed_b.iter().copied())
    }

    /// Failures caused by the cascade, i.e. excluding the initial removals.
    pub fn induced(&self) -> FailureSet {
        self.stages[1..].iter().flat_map(|s| s.iter()).collect()
    }

    pub fn removed(&self) -> &RemovalSet {
        &self.stages[0]
    }
}

/// Reusable scratch state for running many cascades on one network.
pub struct CascadeEngine<'a> {
    net: &'a InterdependentNetwork,
    intra: [Option<(Vec<usize>, Vec<Vec<usize>>)>; 2],
    alive: [Vec<bool>; 2],
}

fn slot(side: Side) -> usize {
    match side {
        Side::A => 0,
        Side::B => 1,
    }
}

impl<'a> CascadeEngine<'a> {
    pub fn new(net: &'a InterdependentNetwork) -> Self {
        let intra = [Side::A, Side::B].map(|side| match net.intra(side) {
            IntraTopology::Star => None,
            IntraTopology::General { sources, .. } => Some((
                sources.clone(),
                net.intra_adjacency(side).unwrap_or_default(),
            )),
        });
        CascadeEngine {
            net,
            intra,
            alive: [vec![true; net.n_a()], vec![true; net.n_b()]],
        }
    }

    pub fn network(&self) -> &InterdependentNetwork {
        self.net
    }

    fn reset(&mut self, removed_a: &[usize], removed_b: &[usize]) {
        self.alive[0].fill(true);
        self.alive[1].fill(true);
        for &a in removed_a {
            self.alive[0][a] = false;
        }
        for &b in removed_b {
            self.alive[1][b] = false;
        }
    }

    /// Nodes of `side` that violate a rule against the current alive sets.
    fn violators(&self, side: Side, out: &mut Vec<usize>) {
        out.clear();
        let s = slot(side);
        let other = &self.alive[1 - s];
        let alive = &self.alive[s];
        let connected: Option<Vec<bool>> = self.intra[s].as_ref().map(|(sources, adj)| {
            let live_sources: Vec<usize> = sources.iter().copied().filter(|&x| alive[x]).collect();
            let mut masked = adj.clone();
            for (u, nbrs) in masked.iter_mut().enumerate() {
                if alive[u] {
                    nbrs.retain(|&v| alive[v]);
                } else {
                    nbrs.clear();
                }
            }
            reachable_from_sources(alive.len(), &live_sources, &masked)
        });
        for (i, &up) in alive.iter().enumerate() {
            if !up {
                continue;
            }
            let node = crate::netmodel::NodeRef { side, index: i };
            let supported = self.net.supporters(node).iter().any(|&j| other[j]);
            let reaches = connected.as_ref().is_none_or(|c| c[i]);
            if !(supported && reaches) {
                out.push(i);
            }
        }
    }

    fn run_rounds(&mut self, mut on_round: impl FnMut(&[usize], &[usize])) {
        let mut va = Vec::new();
        let mut vb = Vec::new();
        loop {
            self.violators(Side::A, &mut va);
            self.violators(Side::B, &mut vb);
            if va.is_empty() && vb.is_empty() {
                break;
            }
            for &a in &va {
                self.alive[0][a] = false;
            }
            for &b in &vb {
                self.alive[1][b] = false;
            }
            on_round(&va, &vb);
        }
    }

    /// Full cascade with per-stage trace.
    pub fn run(&mut self, initial: &RemovalSet) -> Result<CascadeResult> {
        for n in initial.iter() {
            self.net.check_node(n)?;
        }
        self.reset(initial.a(), initial.b());
        let mut stages = vec![initial.clone()];
        self.run_rounds(|va, vb| {
            stages.push(NodeSet::from_sides(va.iter().copied(), vb.iter().copied()))
        });
        let split = |alive: &[bool], want: bool| -> Vec<usize> {
            alive
                .iter()
                .enumerate()
                .filter(|(_, &x)| x == want)
                .map(|(i, _)| i)
                .collect()
        };
        Ok(CascadeResult {
            stage_count: stages.len() - 1,
            stages,
            failed_a: split(&self.alive[0], false),
            failed_b: split(&self.alive[1], false),
            surviving_a: split(&self.alive[0], true),
            surviving_b: split(&self.alive[1], true),
        })
    }

    /// Number of failed B-nodes (removals included) once the cascade settles.
    /// Indices are trusted; used by the brute-force searches.
    pub fn failed_b_count(&mut self, removed_a: &[usize], removed_b: &[usize]) -> usize {
        self.reset(removed_a, removed_b);
        self.run_rounds(|_, _| {});
        self.alive[1].iter().filter(|&&x| !x).count()
    }
}

/// Runs the cascade triggered by removing `initial`.
pub fn cascade(net: &InterdependentNetwork, initial: &RemovalSet) -> Result<CascadeResult> {
    CascadeEngine::new(net).run(initial)
}

/// B-nodes whose every A-neighbour is in `removed`. In a bidirectional star
/// network this is the complete B-side outcome of removing `removed`.
pub fn one_stage_failures(net: &InterdependentNetwork, removed: &RemovalSet) -> Result<FailureSet> {
    if !net.is_bidirectional_star() {
        return Err(Error::NotBidirectionalStar);
    }
    if !removed.b().is_empty() {
        return Err(Error::InvalidParameter(
            "removal set must only contain A-nodes".into(),
        ));
    }
    for n in removed.iter() {
        net.check_node(n)?;
    }
    let mut gone = vec![false; net.n_a()];
    for &a in removed.a() {
        gone[a] = true;
    }
    Ok(NodeSet::side_b(fully_covered(net, &gone)))
}

/// B-nodes all of whose A-neighbours are flagged in `removed_a`.
pub(crate) fn fully_covered(net: &InterdependentNetwork, removed_a: &[bool]) -> Vec<usize> {
    (0..net.n_b())
        .filter(|&b| net.neighbors_of_b(b).iter().all(|&a| removed_a[a]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmodel::NodeRef;

    fn fixture(name: &str) -> InterdependentNetwork {
        InterdependentNetwork::load(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR")))
            .unwrap()
    }

    #[test]
    fn bidirectional_star_single_stage() {
        let net =
            InterdependentNetwork::bidirectional_star(2, 2, vec![(0, 0), (1, 0), (1, 1)]).unwrap();
        let r = cascade(&net, &NodeSet::side_a([1])).unwrap();
        assert_eq!(r.failed_b, vec![1]);
        assert!(r.induced().a().is_empty());
        assert_eq!(r.failed_a, vec![1]);
        assert_eq!(r.stage_count, 1);
    }

    #[test]
    fn unidirectional_chain_takes_three_stages() {
        let net = InterdependentNetwork::unidirectional_star(
            2,
            2,
            vec![(0, 0), (1, 1)],
            vec![(0, 1), (1, 0)],
        )
        .unwrap();
        assert!(net.is_valid());
        let r = cascade(&net, &NodeSet::side_a([0])).unwrap();
        assert_eq!(r.failed_a, vec![0, 1]);
        assert_eq!(r.failed_b, vec![0, 1]);
        assert_eq!(r.stage_count, 3);
        assert_eq!(r.stages[1], NodeSet::side_b([0]));
        assert_eq!(r.stages[2], NodeSet::side_a([1]));
        assert_eq!(r.stages[3], NodeSet::side_b([1]));
    }

    #[test]
    fn tree_counterexample() {
        let net = fixture("tree_counterexample.itdn");
        assert!(net.validate().is_empty());
        let r = cascade(&net, &NodeSet::side_a([1])).unwrap();
        // children A21, B21 then B22, then parent A3; parent B1 untouched
        assert_eq!(r.stages[1], NodeSet::from_sides([3], [1]));
        assert_eq!(r.stages[2], NodeSet::side_b([2]));
        assert_eq!(r.stages[3], NodeSet::side_a([2]));
        assert_eq!(r.stage_count, 3);
        assert_eq!(r.surviving_b, vec![0]);
        assert_eq!(r.surviving_a, vec![0]);
    }

    #[test]
    fn four_step_walkthrough() {
        let net = fixture("cascade_walkthrough.itdn");
        assert!(net.validate().is_empty());
        let r = cascade(&net, &NodeSet::side_a([3])).unwrap();
        assert_eq!(r.stages[1], NodeSet::side_b([2]));
        assert_eq!(r.stages[2], NodeSet::from_sides([0, 2], [1]));
        assert_eq!(r.stages[3], NodeSet::from_sides([1], [0]));
        assert_eq!(r.stage_count, 3);
    }

    #[test]
    fn one_stage_examples() {
        let k22 =
            InterdependentNetwork::bidirectional_star(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)])
                .unwrap();
        assert_eq!(
            one_stage_failures(&k22, &NodeSet::side_a([0, 1]))
                .unwrap()
                .b(),
            &[0, 1]
        );
        assert!(one_stage_failures(&k22, &NodeSet::side_a([0]))
            .unwrap()
            .is_empty());
        let m =
            InterdependentNetwork::bidirectional_star(3, 3, vec![(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(
            one_stage_failures(&m, &NodeSet::side_a([1])).unwrap().b(),
            &[1]
        );
    }

    #[test]
    fn one_stage_rejects_bad_input() {
        let uni =
            InterdependentNetwork::unidirectional_star(1, 1, vec![(0, 0)], vec![(0, 0)]).unwrap();
        assert!(matches!(
            one_stage_failures(&uni, &NodeSet::new()),
            Err(Error::NotBidirectionalStar)
        ));
        let bi = InterdependentNetwork::bidirectional_star(1, 1, vec![(0, 0)]).unwrap();
        assert!(one_stage_failures(&bi, &NodeSet::side_b([0])).is_err());
        assert!(cascade(&bi, &NodeSet::side_a([3])).is_err());
    }

    #[test]
    fn removing_nothing_changes_nothing() {
        let net = fixture("cascade_walkthrough.itdn");
        let r = cascade(&net, &NodeSet::new()).unwrap();
        assert_eq!(r.stage_count, 0);
        assert_eq!(r.surviving_a.len(), 4);
        let mut e = CascadeEngine::new(&net);
        assert_eq!(e.failed_b_count(&[], &[]), 0);
        assert_eq!(e.failed_b_count(&[3], &[]), 3);
        assert!(r.removed().is_empty());
        assert!(!r.failed().contains(NodeRef::a(0)));
    }
}
