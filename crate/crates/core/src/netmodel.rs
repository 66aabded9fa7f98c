//! Data model for a pair of interdependent networks `A` and `B`.
//!
//! Nodes are identified by `(side, dense index)`. The single source of each
//! network is implicit: in [`IntraTopology::Star`] every node hangs directly
//! off it, in [`IntraTopology::General`] only the listed gateway nodes do and
//! the rest reach it through undirected intra-network links.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::NetError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::A => f.write_str("a"),
            Side::B => f.write_str("b"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeRef {
    pub side: Side,
    pub index: usize,
}

impl NodeRef {
    pub fn a(index: usize) -> Self {
        NodeRef {
            side: Side::A,
            index,
        }
    }

    pub fn b(index: usize) -> Self {
        NodeRef {
            side: Side::B,
            index,
        }
    }
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.side, self.index)
    }
}

impl FromStr for NodeRef {
    type Err = NetError;

    /// Parses `a:4` / `b:2` (case-insensitive side letter).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NetError::InvalidNodeSpec(s.to_string());
        let (side, idx) = s.trim().split_once(':').ok_or_else(bad)?;
        let side = match side.trim() {
            "a" | "A" => Side::A,
            "b" | "B" => Side::B,
            _ => return Err(bad()),
        };
        let index = idx.trim().parse().map_err(|_| bad())?;
        Ok(NodeRef { side, index })
    }
}

/// A duplicate-free set of nodes from either side, kept as two sorted index
/// lists. Used both for attacker removals and for cascade failures.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodeSet {
    a: Vec<usize>,
    b: Vec<usize>,
}

pub type RemovalSet = NodeSet;
pub type FailureSet = NodeSet;

impl NodeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_sides(
        a: impl IntoIterator<Item = usize>,
        b: impl IntoIterator<Item = usize>,
    ) -> Self {
        let a: BTreeSet<usize> = a.into_iter().collect();
        let b: BTreeSet<usize> = b.into_iter().collect();
        NodeSet {
            a: a.into_iter().collect(),
            b: b.into_iter().collect(),
        }
    }

    pub fn side_a(a: impl IntoIterator<Item = usize>) -> Self {
        Self::from_sides(a, [])
    }

    pub fn side_b(b: impl IntoIterator<Item = usize>) -> Self {
        Self::from_sides([], b)
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn side(&self, side: Side) -> &[usize] {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    pub fn len(&self) -> usize {
        self.a.len() + self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty() && self.b.is_empty()
    }

    pub fn contains(&self, node: NodeRef) -> bool {
        self.side(node.side).binary_search(&node.index).is_ok()
    }

    pub fn insert(&mut self, node: NodeRef) -> bool {
        let list = match node.side {
            Side::A => &mut self.a,
            Side::B => &mut self.b,
        };
        match list.binary_search(&node.index) {
            Ok(_) => false,
            Err(pos) => {
                list.insert(pos, node.index);
                true
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeRef> + '_ {
        self.a
            .iter()
            .map(|&i| NodeRef::a(i))
            .chain(self.b.iter().map(|&i| NodeRef::b(i)))
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.iter().all(|n| other.contains(n))
    }
}

impl FromIterator<NodeRef> for NodeSet {
    fn from_iter<I: IntoIterator<Item = NodeRef>>(iter: I) -> Self {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for n in iter {
            match n.side {
                Side::A => a.push(n.index),
                Side::B => b.push(n.index),
            }
        }
        NodeSet::from_sides(a, b)
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|n| n.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Directionality {
    Bidirectional,
    Unidirectional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntraTopology {
    /// Every node is directly attached to the network's source.
    Star,
    /// `sources` are the nodes directly attached to the (virtual) source;
    /// everything else must reach one of them over `edges`.
    General {
        sources: Vec<usize>,
        edges: Vec<(usize, usize)>,
    },
}

impl IntraTopology {
    pub fn is_star(&self) -> bool {
        matches!(self, IntraTopology::Star)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Bidirectional network whose B→A edges are not the reversal of A→B.
    MirrorMismatch {
        missing_in_ba: Vec<(usize, usize)>,
        extra_in_ba: Vec<(usize, usize)>,
    },
    /// Node without an incoming interdependency edge.
    Unsupported(NodeRef),
    /// Node with no intra-network path to its source.
    Disconnected(NodeRef),
    /// General topology with an empty source set on a non-empty side.
    NoSource(Side),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MirrorMismatch {
                missing_in_ba,
                extra_in_ba,
            } => write!(
                f,
                "bidirectional mirror violated: {} AB edge(s) lack a BA twin, {} BA edge(s) lack an AB twin",
                missing_in_ba.len(),
                extra_in_ba.len()
            ),
            Violation::Unsupported(n) => write!(f, "{n} has no incoming interdependency edge"),
            Violation::Disconnected(n) => write!(f, "{n} is not connected to its source"),
            Violation::NoSource(s) => write!(f, "network {s} has no source node"),
        }
    }
}

/// Two interdependent networks. Immutable once built; all adjacency views
/// are derived at construction time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterdependentNetwork {
    n_a: usize,
    n_b: usize,
    edges_ab: Vec<(usize, usize)>,
    edges_ba: Vec<(usize, usize)>,
    directionality: Directionality,
    intra_a: IntraTopology,
    intra_b: IntraTopology,
    // supporters[b] = A-nodes with an edge a -> b
    supporters_of_b: Vec<Vec<usize>>,
    supporters_of_a: Vec<Vec<usize>>,
    supported_by_a: Vec<Vec<usize>>,
    supported_by_b: Vec<Vec<usize>>,
}

fn canonical_pairs(
    pairs: Vec<(usize, usize)>,
    bound_first: usize,
    bound_second: usize,
    block: &'static str,
) -> Result<Vec<(usize, usize)>, NetError> {
    let mut seen = BTreeSet::new();
    for &(u, v) in &pairs {
        if u >= bound_first || v >= bound_second {
            return Err(NetError::EdgeOutOfRange {
                block,
                from: u,
                to: v,
            });
        }
        if !seen.insert((u, v)) {
            return Err(NetError::DuplicateEdge {
                block,
                from: u,
                to: v,
            });
        }
    }
    Ok(seen.into_iter().collect())
}

fn canonical_intra(topo: IntraTopology, n: usize, side: Side) -> Result<IntraTopology, NetError> {
    match topo {
        IntraTopology::Star => Ok(IntraTopology::Star),
        IntraTopology::General { sources, edges } => {
            let mut src = BTreeSet::new();
            for s in sources {
                if s >= n {
                    return Err(NetError::NodeOutOfRange(NodeRef { side, index: s }));
                }
                src.insert(s);
            }
            let block = match side {
                Side::A => "INTRA_A",
                Side::B => "INTRA_B",
            };
            let mut seen = BTreeSet::new();
            for (u, v) in edges {
                if u >= n || v >= n || u == v {
                    return Err(NetError::EdgeOutOfRange {
                        block,
                        from: u,
                        to: v,
                    });
                }
                let e = (u.min(v), u.max(v));
                if !seen.insert(e) {
                    return Err(NetError::DuplicateEdge {
                        block,
                        from: e.0,
                        to: e.1,
                    });
                }
            }
            // every node a gateway and no links is exactly a star
            if src.len() == n && seen.is_empty() {
                return Ok(IntraTopology::Star);
            }
            Ok(IntraTopology::General {
                sources: src.into_iter().collect(),
                edges: seen.into_iter().collect(),
            })
        }
    }
}

impl InterdependentNetwork {
    /// Builds a network from raw parts. Structural problems (indices out of
    /// range, parallel edges) are errors; operating-condition problems are
    /// left for [`InterdependentNetwork::validate`].
    pub fn new(
        n_a: usize,
        n_b: usize,
        directionality: Directionality,
        edges_ab: Vec<(usize, usize)>,
        edges_ba: Vec<(usize, usize)>,
        intra_a: IntraTopology,
        intra_b: IntraTopology,
    ) -> Result<Self, NetError> {
        let edges_ab = canonical_pairs(edges_ab, n_a, n_b, "AB")?;
        let edges_ba = canonical_pairs(edges_ba, n_b, n_a, "BA")?;
        let intra_a = canonical_intra(intra_a, n_a, Side::A)?;
        let intra_b = canonical_intra(intra_b, n_b, Side::B)?;

        let mut supporters_of_b = vec![Vec::new(); n_b];
        let mut supported_by_a = vec![Vec::new(); n_a];
        for &(a, b) in &edges_ab {
            supporters_of_b[b].push(a);
            supported_by_a[a].push(b);
        }
        let mut supporters_of_a = vec![Vec::new(); n_a];
        let mut supported_by_b = vec![Vec::new(); n_b];
        for &(b, a) in &edges_ba {
            supporters_of_a[a].push(b);
            supported_by_b[b].push(a);
        }
        Ok(InterdependentNetwork {
            n_a,
            n_b,
            edges_ab,
            edges_ba,
            directionality,
            intra_a,
            intra_b,
            supporters_of_b,
            supporters_of_a,
            supported_by_a,
            supported_by_b,
        })
    }

    /// Bidirectional network with star intra-topologies; `edges` are the
    /// `(a, b)` interdependency pairs, mirrored into the B→A direction.
    pub fn bidirectional_star(
        n_a: usize,
        n_b: usize,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, NetError> {
        let mirrored = edges.iter().map(|&(a, b)| (b, a)).collect();
        Self::new(
            n_a,
            n_b,
            Directionality::Bidirectional,
            edges,
            mirrored,
            IntraTopology::Star,
            IntraTopology::Star,
        )
    }

    /// Bidirectional network with general intra-topologies.
    pub fn bidirectional(
        n_a: usize,
        n_b: usize,
        edges: Vec<(usize, usize)>,
        intra_a: IntraTopology,
        intra_b: IntraTopology,
    ) -> Result<Self, NetError> {
        let mirrored = edges.iter().map(|&(a, b)| (b, a)).collect();
        Self::new(
            n_a,
            n_b,
            Directionality::Bidirectional,
            edges,
            mirrored,
            intra_a,
            intra_b,
        )
    }

    pub fn unidirectional_star(
        n_a: usize,
        n_b: usize,
        edges_ab: Vec<(usize, usize)>,
        edges_ba: Vec<(usize, usize)>,
    ) -> Result<Self, NetError> {
        Self::new(
            n_a,
            n_b,
            Directionality::Unidirectional,
            edges_ab,
            edges_ba,
            IntraTopology::Star,
            IntraTopology::Star,
        )
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::A => self.n_a,
            Side::B => self.n_b,
        }
    }

    pub fn edges_ab(&self) -> &[(usize, usize)] {
        &self.edges_ab
    }

    pub fn edges_ba(&self) -> &[(usize, usize)] {
        &self.edges_ba
    }

    pub fn directionality(&self) -> Directionality {
        self.directionality
    }

    pub fn intra(&self, side: Side) -> &IntraTopology {
        match side {
            Side::A => &self.intra_a,
            Side::B => &self.intra_b,
        }
    }

    pub fn is_star(&self) -> bool {
        self.intra_a.is_star() && self.intra_b.is_star()
    }

    pub fn is_bidirectional(&self) -> bool {
        self.directionality == Directionality::Bidirectional
    }

    pub fn is_bidirectional_star(&self) -> bool {
        self.is_bidirectional() && self.is_star() && self.mirror_mismatch().is_none()
    }

    /// Nodes on the other side with an edge into `node`.
    pub fn supporters(&self, node: NodeRef) -> &[usize] {
        match node.side {
            Side::A => &self.supporters_of_a[node.index],
            Side::B => &self.supporters_of_b[node.index],
        }
    }

    /// Nodes on the other side that `node` has an edge into.
    pub fn dependents(&self, node: NodeRef) -> &[usize] {
        match node.side {
            Side::A => &self.supported_by_a[node.index],
            Side::B => &self.supported_by_b[node.index],
        }
    }

    /// A-neighbours of a B-node (the `N(b)` used by every removal metric).
    pub fn neighbors_of_b(&self, b: usize) -> &[usize] {
        &self.supporters_of_b[b]
    }

    /// B-nodes supported by an A-node.
    pub fn neighbors_of_a(&self, a: usize) -> &[usize] {
        &self.supported_by_a[a]
    }

    pub fn contains(&self, node: NodeRef) -> bool {
        node.index < self.side_len(node.side)
    }

    pub fn check_node(&self, node: NodeRef) -> Result<(), NetError> {
        if self.contains(node) {
            Ok(())
        } else {
            Err(NetError::NodeOutOfRange(node))
        }
    }

    /// Number of incoming interdependency edges of `node`.
    pub fn degree(&self, node: NodeRef) -> Result<usize, NetError> {
        self.check_node(node)?;
        Ok(self.supporters(node).len())
    }

    pub fn min_degree(&self, side: Side) -> Option<usize> {
        (0..self.side_len(side))
            .map(|i| self.supporters(NodeRef { side, index: i }).len())
            .min()
    }

    /// Undirected intra-network adjacency lists, `None` for star sides.
    pub fn intra_adjacency(&self, side: Side) -> Option<Vec<Vec<usize>>> {
        match self.intra(side) {
            IntraTopology::Star => None,
            IntraTopology::General { edges, .. } => {
                let mut adj = vec![Vec::new(); self.side_len(side)];
                for &(u, v) in edges {
                    adj[u].push(v);
                    adj[v].push(u);
                }
                Some(adj)
            }
        }
    }

    fn mirror_mismatch(&self) -> Option<Violation> {
        let ab: BTreeSet<(usize, usize)> = self.edges_ab.iter().copied().collect();
        let ba: BTreeSet<(usize, usize)> = self.edges_ba.iter().map(|&(b, a)| (a, b)).collect();
        if ab == ba {
            return None;
        }
        Some(Violation::MirrorMismatch {
            missing_in_ba: ab.difference(&ba).copied().collect(),
            extra_in_ba: ba.difference(&ab).map(|&(a, b)| (b, a)).collect(),
        })
    }

    /// Lists every violated operating condition; empty iff the network is
    /// a valid, initially-operating interdependent network.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.is_bidirectional() {
            if let Some(v) = self.mirror_mismatch() {
                out.push(v);
            }
        }
        for side in [Side::A, Side::B] {
            for index in 0..self.side_len(side) {
                let node = NodeRef { side, index };
                if self.supporters(node).is_empty() {
                    out.push(Violation::Unsupported(node));
                }
            }
        }
        for side in [Side::A, Side::B] {
            if let IntraTopology::General { sources, .. } = self.intra(side) {
                let n = self.side_len(side);
                if n > 0 && sources.is_empty() {
                    out.push(Violation::NoSource(side));
                }
                let reach = reachable_from_sources(
                    n,
                    sources,
                    &self.intra_adjacency(side).unwrap_or_default(),
                );
                for (index, ok) in reach.iter().enumerate() {
                    if !ok && !sources.is_empty() {
                        out.push(Violation::Disconnected(NodeRef { side, index }));
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let dir = if self.is_bidirectional() { "BI" } else { "UNI" };
        let topo = if self.is_star() { "STAR" } else { "GEN" };
        s.push_str(&format!(
            "ITDN v1 {} {} {} {}\n",
            self.n_a, self.n_b, dir, topo
        ));
        if !self.is_star() {
            // GEN: both sides written explicitly, a star side as all-sources
            for side in [Side::A, Side::B] {
                let (sources, _) = self.general_parts(side);
                s.push_str(&format!("SRC_{}\n", side_tag(side)));
                let line: Vec<String> = sources.iter().map(|i| i.to_string()).collect();
                if !line.is_empty() {
                    s.push_str(&line.join(" "));
                    s.push('\n');
                }
            }
            for side in [Side::A, Side::B] {
                let (_, edges) = self.general_parts(side);
                s.push_str(&format!("INTRA_{}\n", side_tag(side)));
                for (u, v) in edges {
                    s.push_str(&format!("{u} {v}\n"));
                }
            }
        }
        s.push_str("AB\n");
        for &(a, b) in &self.edges_ab {
            s.push_str(&format!("{a} {b}\n"));
        }
        if !(self.is_bidirectional() && self.mirror_mismatch().is_none()) {
            s.push_str("BA\n");
            for &(b, a) in &self.edges_ba {
                s.push_str(&format!("{b} {a}\n"));
            }
        }
        s
    }

    fn general_parts(&self, side: Side) -> (Vec<usize>, Vec<(usize, usize)>) {
        match self.intra(side) {
            IntraTopology::Star => ((0..self.side_len(side)).collect(), Vec::new()),
            IntraTopology::General { sources, edges } => (sources.clone(), edges.clone()),
        }
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), NetError> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, NetError> {
        let text = fs::read_to_string(path)?;
        text.parse()
    }
}

/// Plain bipartite graph between `A` and `B`, without any operating
/// requirements. Used for transformed instances and random samples that need
/// not be valid interdependent networks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_a: usize,
    n_b: usize,
    edges: Vec<(usize, usize)>,
    adj_b: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(n_a: usize, n_b: usize, edges: Vec<(usize, usize)>) -> Result<Self, NetError> {
        let edges = canonical_pairs(edges, n_a, n_b, "AB")?;
        let mut adj_b = vec![Vec::new(); n_b];
        for &(a, b) in &edges {
            adj_b[b].push(a);
        }
        Ok(BipartiteGraph {
            n_a,
            n_b,
            edges,
            adj_b,
        })
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// A-neighbours of B-node `b`.
    pub fn neighbors_of_b(&self, b: usize) -> &[usize] {
        &self.adj_b[b]
    }
}

impl From<&InterdependentNetwork> for BipartiteGraph {
    /// The A→B interdependency edges as a bipartite graph.
    fn from(net: &InterdependentNetwork) -> Self {
        BipartiteGraph::new(net.n_a(), net.n_b(), net.edges_ab().to_vec())
            .expect("network edges are canonical")
    }
}

fn side_tag(side: Side) -> &'static str {
    match side {
        Side::A => "A",
        Side::B => "B",
    }
}

pub(crate) fn reachable_from_sources(n: usize, sources: &[usize], adj: &[Vec<usize>]) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    for &s in sources {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    SrcA,
    SrcB,
    IntraA,
    IntraB,
    Ab,
    Ba,
}

impl FromStr for InterdependentNetwork {
    type Err = NetError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let perr = |line: usize, message: String| NetError::Parse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or_else(|| perr(1, "empty file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 6 || fields[0] != "ITDN" || fields[1] != "v1" {
            return Err(perr(
                hline,
                format!("expected `ITDN v1 <n_a> <n_b> <BI|UNI> <STAR|GEN>`, got `{header}`"),
            ));
        }
        let n_a: usize = fields[2]
            .parse()
            .map_err(|_| perr(hline, format!("n_a: not a count: `{}`", fields[2])))?;
        let n_b: usize = fields[3]
            .parse()
            .map_err(|_| perr(hline, format!("n_b: not a count: `{}`", fields[3])))?;
        let directionality = match fields[4] {
            "BI" => Directionality::Bidirectional,
            "UNI" => Directionality::Unidirectional,
            other => {
                return Err(perr(
                    hline,
                    format!("directionality must be BI or UNI, got `{other}`"),
                ))
            }
        };
        let general = match fields[5] {
            "STAR" => false,
            "GEN" => true,
            other => {
                return Err(perr(
                    hline,
                    format!("topology must be STAR or GEN, got `{other}`"),
                ))
            }
        };

        let mut src_a = Vec::new();
        let mut src_b = Vec::new();
        let mut intra_a = Vec::new();
        let mut intra_b = Vec::new();
        let mut ab = Vec::new();
        let mut ba = Vec::new();
        let mut seen_ba = false;
        let mut block: Option<Block> = None;

        for (ln, line) in lines {
            let next = match line {
                "SRC_A" => Some(Block::SrcA),
                "SRC_B" => Some(Block::SrcB),
                "INTRA_A" => Some(Block::IntraA),
                "INTRA_B" => Some(Block::IntraB),
                "AB" => Some(Block::Ab),
                "BA" => Some(Block::Ba),
                _ => None,
            };
            if let Some(b) = next {
                if !general
                    && matches!(b, Block::SrcA | Block::SrcB | Block::IntraA | Block::IntraB)
                {
                    return Err(perr(
                        ln,
                        format!("block `{line}` is only allowed in GEN networks"),
                    ));
                }
                if b == Block::Ba {
                    seen_ba = true;
                }
                block = Some(b);
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| perr(ln, format!("not an index: `{t}`")))
                })
                .collect::<Result<_, _>>()?;
            let pair =
                |limit_u: usize, limit_v: usize, what: &str| -> Result<(usize, usize), NetError> {
                    if nums.len() != 2 {
                        return Err(perr(
                            ln,
                            format!("{what}: expected two indices, got {}", nums.len()),
                        ));
                    }
                    if nums[0] >= limit_u || nums[1] >= limit_v {
                        return Err(perr(
                            ln,
                            format!(
                                "{what}: edge ({}, {}) out of range ({limit_u} x {limit_v})",
                                nums[0], nums[1]
                            ),
                        ));
                    }
                    Ok((nums[0], nums[1]))
                };
            match block {
                None => return Err(perr(ln, "data before any block header".into())),
                Some(Block::SrcA) | Some(Block::SrcB) => {
                    let (dst, n, what) = if block == Some(Block::SrcA) {
                        (&mut src_a, n_a, "SRC_A")
                    } else {
                        (&mut src_b, n_b, "SRC_B")
                    };
                    for &i in &nums {
                        if i >= n {
                            return Err(perr(ln, format!("{what}: index {i} out of range ({n})")));
                        }
                    }
                    dst.extend(nums.iter().copied());
                }
                Some(Block::IntraA) => intra_a.push(pair(n_a, n_a, "INTRA_A")?),
                Some(Block::IntraB) => intra_b.push(pair(n_b, n_b, "INTRA_B")?),
                Some(Block::Ab) => ab.push(pair(n_a, n_b, "AB")?),
                Some(Block::Ba) => ba.push(pair(n_b, n_a, "BA")?),
            }
        }

        if directionality == Directionality::Bidirectional && !seen_ba {
            ba = ab.iter().map(|&(a, b)| (b, a)).collect();
        }
        let (ia, ib) = if general {
            (
                IntraTopology::General {
                    sources: src_a,
                    edges: intra_a,
                },
                IntraTopology::General {
                    sources: src_b,
                    edges: intra_b,
                },
            )
        } else {
            (IntraTopology::Star, IntraTopology::Star)
        };
        InterdependentNetwork::new(n_a, n_b, directionality, ab, ba, ia, ib)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k22() -> InterdependentNetwork {
        InterdependentNetwork::bidirectional_star(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)])
            .unwrap()
    }

    fn matching(n: usize) -> InterdependentNetwork {
        InterdependentNetwork::bidirectional_star(n, n, (0..n).map(|i| (i, i)).collect()).unwrap()
    }

    #[test]
    fn minimal_network_is_valid() {
        let net = InterdependentNetwork::bidirectional_star(1, 1, vec![(0, 0)]).unwrap();
        assert!(net.validate().is_empty());
    }

    #[test]
    fn emptied_mirror_is_reported() {
        let net = InterdependentNetwork::new(
            1,
            1,
            Directionality::Bidirectional,
            vec![(0, 0)],
            vec![],
            IntraTopology::Star,
            IntraTopology::Star,
        )
        .unwrap();
        let v = net.validate();
        assert!(matches!(v[0], Violation::MirrorMismatch { .. }));
        // a0 loses its only incoming edge; b0 is still fed from AB
        assert_eq!(v[1..], [Violation::Unsupported(NodeRef::a(0))]);
    }

    #[test]
    fn unsupported_b_node() {
        let net = InterdependentNetwork::bidirectional_star(2, 2, vec![(0, 0), (1, 0)]).unwrap();
        assert_eq!(net.validate(), vec![Violation::Unsupported(NodeRef::b(1))]);
    }

    #[test]
    fn degrees() {
        let net = k22();
        for i in 0..2 {
            assert_eq!(net.degree(NodeRef::a(i)).unwrap(), 2);
            assert_eq!(net.degree(NodeRef::b(i)).unwrap(), 2);
        }
        let m = matching(3);
        for i in 0..3 {
            assert_eq!(m.degree(NodeRef::b(i)).unwrap(), 1);
        }
        assert!(matches!(
            net.degree(NodeRef::b(2)),
            Err(NetError::NodeOutOfRange(_))
        ));
    }

    #[test]
    fn rejects_parallel_and_out_of_range_edges() {
        assert!(matches!(
            InterdependentNetwork::bidirectional_star(2, 2, vec![(0, 0), (0, 0)]),
            Err(NetError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            InterdependentNetwork::bidirectional_star(2, 2, vec![(0, 2)]),
            Err(NetError::EdgeOutOfRange { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let net = k22();
        let text = net.to_text();
        assert_eq!(text, "ITDN v1 2 2 BI STAR\nAB\n0 0\n0 1\n1 0\n1 1\n");
        let back: InterdependentNetwork = text.parse().unwrap();
        assert_eq!(back, net);
    }

    #[test]
    fn parse_error_carries_line() {
        let err = "ITDN v1 2 2 BI STAR\n# c\nAB\n0 0\n1 5\n"
            .parse::<InterdependentNetwork>()
            .unwrap_err();
        match err {
            NetError::Parse { line, message } => {
                assert_eq!(line, 5);
                assert!(message.contains("out of range"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            "ITDN v2 1 1 BI STAR\n".parse::<InterdependentNetwork>(),
            Err(NetError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            "ITDN v1 1 1 BI STAR\nSRC_A\n0\n".parse::<InterdependentNetwork>(),
            Err(NetError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn unidirectional_keeps_ba_block() {
        let net = InterdependentNetwork::unidirectional_star(
            2,
            2,
            vec![(0, 0), (1, 1)],
            vec![(0, 1), (1, 0)],
        )
        .unwrap();
        let text = net.to_text();
        assert!(text.contains("BA\n0 1\n1 0\n"));
        assert_eq!(text.parse::<InterdependentNetwork>().unwrap(), net);
    }

    #[test]
    fn general_topology_connectivity() {
        let net = InterdependentNetwork::bidirectional(
            3,
            1,
            vec![(0, 0), (1, 0), (2, 0)],
            IntraTopology::General {
                sources: vec![0],
                edges: vec![(0, 1)],
            },
            IntraTopology::Star,
        )
        .unwrap();
        assert_eq!(net.validate(), vec![Violation::Disconnected(NodeRef::a(2))]);
        // star side is written as all-sources and folds back into Star
        let back: InterdependentNetwork = net.to_text().parse().unwrap();
        assert_eq!(back, net);
    }

    #[test]
    fn node_ref_parsing() {
        assert_eq!("a:4".parse::<NodeRef>().unwrap(), NodeRef::a(4));
        assert_eq!("B:0".parse::<NodeRef>().unwrap(), NodeRef::b(0));
        assert!("c:1".parse::<NodeRef>().is_err());
        assert!("a4".parse::<NodeRef>().is_err());
    }

    #[test]
    fn node_set_is_sorted_and_unique() {
        let s: NodeSet = [NodeRef::b(2), NodeRef::a(3), NodeRef::a(1), NodeRef::a(3)]
            .into_iter()
            .collect();
        assert_eq!(s.a(), &[1, 3]);
        assert_eq!(s.b(), &[2]);
        assert_eq!(s.to_string(), "a:1,a:3,b:2");
    }
}
