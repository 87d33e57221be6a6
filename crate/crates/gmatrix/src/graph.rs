//! Compressed immutable storage for directed 0/1-link networks.
//!
//! A [`DirectedGraph`] keeps the out-adjacency of every node in CSR form
//! (one sorted target slice per source). Duplicate edges are collapsed to a
//! single link and self-loops are dropped at build time, so the stored
//! structure is always a simple digraph. The struct is immutable after
//! construction and safe to share across threads.

use serde::Serialize;

use crate::error::{Error, Result};

/// Dense zero-based node identifier.
pub type NodeId = u32;

/// Immutable directed graph in compressed sparse form.
///
/// Equality is structural: two graphs compare equal iff they have the same
/// node count and the same canonical edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    /// CSR offsets, length `n + 1`; targets of node `j` live in
    /// `targets[offsets[j]..offsets[j + 1]]`, sorted ascending.
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    in_degree: Vec<u32>,
}

/// Counts of entries normalized away while building a graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BuildReport {
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
}

impl DirectedGraph {
    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of distinct directed links.
    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    /// Outgoing link count of `node`.
    pub fn out_degree(&self, node: NodeId) -> usize {
        let j = node as usize;
        self.offsets[j + 1] - self.offsets[j]
    }

    /// Incoming link count of `node`.
    pub fn in_degree(&self, node: NodeId) -> usize {
        self.in_degree[node as usize] as usize
    }

    /// Sorted slice of targets reachable from `node`.
    pub fn targets(&self, node: NodeId) -> &[NodeId] {
        let j = node as usize;
        &self.targets[self.offsets[j]..self.offsets[j + 1]]
    }

    /// True iff the directed link `src -> dst` is present.
    pub fn has_edge(&self, src: NodeId, dst: NodeId) -> bool {
        self.targets(src).binary_search(&dst).is_ok()
    }

    /// True iff `node` has no outgoing links.
    pub fn is_dangling(&self, node: NodeId) -> bool {
        self.out_degree(node) == 0
    }

    /// Number of nodes with no outgoing links.
    pub fn dangling_count(&self) -> usize {
        (0..self.node_count() as NodeId)
            .filter(|&j| self.is_dangling(j))
            .count()
    }

    /// All edges in canonical order (source ascending, target ascending).
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count() as NodeId)
            .flat_map(move |src| self.targets(src).iter().map(move |&dst| (src, dst)))
    }
}

/// Builds a graph from an edge list, collapsing duplicates and dropping
/// self-loops. Ids must lie in `[0, n)`.
pub fn build_graph(
    n: usize,
    edges: impl IntoIterator<Item = (NodeId, NodeId)>,
) -> Result<DirectedGraph> {
    build_graph_reported(n, edges).map(|(g, _)| g)
}

/// Like [`build_graph`], also reporting how many entries were normalized away.
pub fn build_graph_reported(
    n: usize,
    edges: impl IntoIterator<Item = (NodeId, NodeId)>,
) -> Result<(DirectedGraph, BuildReport)> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut report = BuildReport::default();
    let mut list: Vec<(NodeId, NodeId)> = Vec::new();
    for (position, (src, dst)) in edges.into_iter().enumerate() {
        let bad = if src as usize >= n {
            Some(src)
        } else if dst as usize >= n {
            Some(dst)
        } else {
            None
        };
        if let Some(id) = bad {
            return Err(Error::NodeOutOfRange {
                id: id as u64,
                n: n as u64,
                position: Some(position),
            });
        }
        if src == dst {
            report.self_loops_dropped += 1;
            continue;
        }
        list.push((src, dst));
    }
    list.sort_unstable();
    let before = list.len();
    list.dedup();
    report.duplicates_collapsed = before - list.len();

    let mut offsets = vec![0usize; n + 1];
    for &(src, _) in &list {
        offsets[src as usize + 1] += 1;
    }
    for j in 0..n {
        offsets[j + 1] += offsets[j];
    }
    let mut in_degree = vec![0u32; n];
    let targets: Vec<NodeId> = list
        .iter()
        .map(|&(_, dst)| {
            in_degree[dst as usize] += 1;
            dst
        })
        .collect();

    Ok((
        DirectedGraph {
            offsets,
            targets,
            in_degree,
        },
        report,
    ))
}

/// Graph with every link reversed.
pub fn transpose(g: &DirectedGraph) -> DirectedGraph {
    let n = g.node_count();
    let mut offsets = vec![0usize; n + 1];
    for &dst in &g.targets {
        offsets[dst as usize + 1] += 1;
    }
    for j in 0..n {
        offsets[j + 1] += offsets[j];
    }
    // Scanning sources in ascending order keeps each reversed target list
    // sorted without an extra pass.
    let mut cursor = offsets.clone();
    let mut targets = vec![0 as NodeId; g.edge_count()];
    let mut in_degree = vec![0u32; n];
    for (src, dst) in g.edges() {
        targets[cursor[dst as usize]] = src;
        cursor[dst as usize] += 1;
        in_degree[src as usize] += 1;
    }
    DirectedGraph {
        offsets,
        targets,
        in_degree,
    }
}

/// Structural summary of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GraphStats {
    pub n: u64,
    pub edge_count: u64,
    /// Simple-digraph density `edge_count / (n * (n - 1))`.
    pub density: f64,
    /// Average out-degree `edge_count / n`.
    pub mean_degree: f64,
    pub dangling_count: u64,
}

/// Computes summary statistics; requires `n >= 2` for the density to be
/// defined.
pub fn graph_stats(g: &DirectedGraph) -> Result<GraphStats> {
    stats_from_counts(g.node_count(), g.edge_count(), g.dangling_count())
}

fn stats_from_counts(n: usize, edge_count: usize, dangling_count: usize) -> Result<GraphStats> {
    if n < 2 {
        return Err(Error::precondition(format!(
            "density is undefined for a graph with {n} node(s); need n >= 2"
        )));
    }
    let nf = n as f64;
    Ok(GraphStats {
        n: n as u64,
        edge_count: edge_count as u64,
        density: edge_count as f64 / (nf * (nf - 1.0)),
        mean_degree: edge_count as f64 / nf,
        dangling_count: dangling_count as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_collapse_to_single_edge() {
        let (g, report) = build_graph_reported(3, [(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(
            (0..3).map(|j| g.out_degree(j)).collect::<Vec<_>>(),
            vec![1, 1, 0]
        );
        assert_eq!(report.duplicates_collapsed, 1);
    }

    #[test]
    fn self_loops_are_dropped() {
        let (g, report) = build_graph_reported(2, [(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(report.self_loops_dropped, 1);
        assert!(g.has_edge(0, 1));
        assert!(!g.has_edge(0, 0));
    }

    #[test]
    fn out_of_range_id_is_rejected_with_position() {
        let err = build_graph(2, [(0, 1), (1, 5)]).unwrap_err();
        match err {
            Error::NodeOutOfRange { id, n, position } => {
                assert_eq!((id, n, position), (5, 2, Some(1)));
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn zero_nodes_rejected() {
        assert!(matches!(build_graph(0, []), Err(Error::EmptyGraph)));
    }

    #[test]
    fn degree_sums_match_edge_count() {
        let g = build_graph(4, [(0, 1), (0, 2), (1, 2), (3, 0), (2, 0)]).unwrap();
        let out: usize = (0..4).map(|j| g.out_degree(j)).sum();
        let inn: usize = (0..4).map(|j| g.in_degree(j)).sum();
        assert_eq!(out, g.edge_count());
        assert_eq!(inn, g.edge_count());
    }

    #[test]
    fn transpose_reverses_single_edge() {
        let g = build_graph(2, [(0, 1)]).unwrap();
        let t = transpose(&g);
        assert!(t.has_edge(1, 0));
        assert!(!t.has_edge(0, 1));
        assert_eq!(t.edge_count(), 1);
    }

    #[test]
    fn transpose_reverses_cycle_and_preserves_degree_multiset() {
        let g = build_graph(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let t = transpose(&g);
        assert!(t.has_edge(0, 2) && t.has_edge(2, 1) && t.has_edge(1, 0));
        let mut degs: Vec<_> = (0..3).map(|j| (g.out_degree(j), g.in_degree(j))).collect();
        let mut tdegs: Vec<_> = (0..3).map(|j| (t.in_degree(j), t.out_degree(j))).collect();
        degs.sort_unstable();
        tdegs.sort_unstable();
        assert_eq!(degs, tdegs);
    }

    #[test]
    fn complete_digraph_stats() {
        let edges = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
        let g = build_graph(3, edges).unwrap();
        let s = graph_stats(&g).unwrap();
        assert_eq!(s.density, 1.0);
        assert_eq!(s.mean_degree, 2.0);
        assert_eq!(s.dangling_count, 0);
    }

    #[test]
    fn stats_match_known_wikipedia_counts() {
        // Known (n, links) pairs with their two-significant-digit density
        // (x 1e-5) and mean degree.
        let cases = [
            (5_416_537usize, 122_232_932usize, 0.42, 22.6),
            (939_625, 13_364_440, 1.51, 14.2),
        ];
        for (n, nl, d_e5, k) in cases {
            let s = stats_from_counts(n, nl, 0).unwrap();
            assert!(
                (s.density * 1e5 - d_e5).abs() < 0.005,
                "density {} != {d_e5}e-5",
                s.density
            );
            assert!(
                (s.mean_degree - k).abs() < 0.05,
                "mean degree {} != {k}",
                s.mean_degree
            );
        }
    }

    #[test]
    fn stats_require_two_nodes() {
        let g = build_graph(1, []).unwrap();
        assert!(graph_stats(&g).is_err());
    }

    #[test]
    fn edges_iterate_in_canonical_order() {
        let g = build_graph(3, [(2, 0), (0, 2), (0, 1), (2, 1)]).unwrap();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (2, 0), (2, 1)]);
    }

    #[test]
    fn graphs_are_shareable_across_threads() {
        fn assert_shareable<T: Send + Sync>() {}
        assert_shareable::<DirectedGraph>();
    }
}
