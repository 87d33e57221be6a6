//! Implicit Google operator and the PageRank / CheiRank power iteration.
//!
//! The Google matrix of a directed graph with adjacency `A` and out-degrees
//! `k_out` is
//!
//! > `G[i][j] = alpha * S[i][j] + (1 - alpha) / n`
//!
//! where `S[i][j] = A[i][j] / k_out(j)` and every column of a dangling node
//! (`k_out(j) = 0`) is replaced by the uniform distribution `1/n`. `G` is
//! column-stochastic with the column as the transition source. It is never
//! materialized: [`GoogleOperator::apply`] evaluates `G * v` in
//! `O(n + edges)` by gathering over incoming links and adding the two uniform
//! terms (teleportation and the pooled dangling mass).
//!
//! PageRank is the steady state `P = G * P`, computed by power iteration from
//! the uniform start. CheiRank is the PageRank of the edge-reversed graph.
//! Rank indices (`K`, `K*`) order nodes by descending probability with ties
//! broken by ascending node id so identical inputs always reproduce identical
//! tables.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{transpose, DirectedGraph, NodeId};
use crate::par::{det_gather_sum, det_l1_diff, det_sum};
use rayon::prelude::*;

/// Damping factor used throughout the literature.
pub const DEFAULT_ALPHA: f64 = 0.85;
/// Default L1 convergence tolerance of the power iteration.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default iteration cap of the power iteration.
pub const DEFAULT_MAX_ITER: usize = 1000;

/// Matrix-free Google operator `G = alpha * S + (1 - alpha) / n`.
pub struct GoogleOperator<'g> {
    graph: &'g DirectedGraph,
    /// Reversed adjacency: `reverse.targets(i)` are the in-neighbors of `i`.
    reverse: DirectedGraph,
    /// `1 / k_out(j)`, zero for dangling nodes.
    inv_out_degree: Vec<f64>,
    dangling: Vec<NodeId>,
    alpha: f64,
}

impl<'g> GoogleOperator<'g> {
    /// Builds the operator; `alpha` must lie strictly inside `(0, 1)`.
    pub fn new(graph: &'g DirectedGraph, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::precondition(format!(
                "damping factor must be in (0, 1), got {alpha}"
            )));
        }
        let n = graph.node_count();
        let mut inv_out_degree = vec![0.0; n];
        let mut dangling = Vec::new();
        for j in 0..n as NodeId {
            let deg = graph.out_degree(j);
            if deg == 0 {
                dangling.push(j);
            } else {
                inv_out_degree[j as usize] = 1.0 / deg as f64;
            }
        }
        Ok(GoogleOperator {
            graph,
            reverse: transpose(graph),
            inv_out_degree,
            dangling,
            alpha,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn graph(&self) -> &DirectedGraph {
        self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    /// Nodes without outgoing links, ascending.
    pub fn dangling(&self) -> &[NodeId] {
        &self.dangling
    }

    /// Evaluates `G * v` without forming `G`.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_len(v)?;
        let mut out = vec![0.0; v.len()];
        self.apply_into(v, &mut out);
        Ok(out)
    }

    /// Evaluates `G^T * v` (used for left eigenvectors).
    pub fn apply_transpose(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_len(v)?;
        let mut out = vec![0.0; v.len()];
        self.apply_transpose_into(v, &mut out);
        Ok(out)
    }

    fn check_len(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.node_count() {
            return Err(Error::precondition(format!(
                "vector length {} does not match node count {}",
                v.len(),
                self.node_count()
            )));
        }
        Ok(())
    }

    pub(crate) fn apply_into(&self, v: &[f64], out: &mut [f64]) {
        let n = self.node_count();
        debug_assert!(v.len() == n && out.len() == n);
        let sum_v = det_sum(v);
        let dangling_sum = det_gather_sum(v, &self.dangling);
        let uniform = (self.alpha * dangling_sum + (1.0 - self.alpha) * sum_v) / n as f64;
        out.par_iter_mut().enumerate().for_each(|(i, o)| {
            let mut acc = 0.0;
            for &j in self.reverse.targets(i as NodeId) {
                acc += v[j as usize] * self.inv_out_degree[j as usize];
            }
            *o = self.alpha * acc + uniform;
        });
    }

    pub(crate) fn apply_transpose_into(&self, v: &[f64], out: &mut [f64]) {
        let n = self.node_count();
        debug_assert!(v.len() == n && out.len() == n);
        let sum_v = det_sum(v);
        let inv_n = 1.0 / n as f64;
        let mean = sum_v * inv_n;
        out.par_iter_mut().enumerate().for_each(|(j, o)| {
            let node = j as NodeId;
            *o = if self.graph.out_degree(node) == 0 {
                mean
            } else {
                let acc: f64 = self
                    .graph
                    .targets(node)
                    .iter()
                    .map(|&i| v[i as usize])
                    .sum();
                self.alpha * acc * self.inv_out_degree[j] + (1.0 - self.alpha) * mean
            };
        });
    }

    /// Dense column `G[., src]` in `O(n + k_out(src))`.
    pub fn column(&self, src: NodeId) -> Vec<f64> {
        let n = self.node_count();
        let inv_n = 1.0 / n as f64;
        let mut col = vec![(1.0 - self.alpha) * inv_n; n];
        if self.graph.out_degree(src) == 0 {
            let pooled = self.alpha * inv_n;
            for c in &mut col {
                *c += pooled;
            }
        } else {
            let w = self.alpha * self.inv_out_degree[src as usize];
            for &i in self.graph.targets(src) {
                col[i as usize] += w;
            }
        }
        col
    }
}

/// Which steady state a probability vector describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankKind {
    PageRank,
    CheiRank,
}

/// Steady-state probability distribution over nodes.
#[derive(Debug, Clone)]
pub struct ProbabilityVector {
    pub kind: RankKind,
    pub values: Vec<f64>,
}

impl ProbabilityVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Rank permutation derived from a probability vector.
///
/// `order()[k - 1]` is the node holding rank `k`; `rank_of(node)` is the
/// 1-based rank of `node`. The two views are mutually inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    order: Vec<NodeId>,
    rank_of: Vec<u32>,
}

impl RankTable {
    /// Sorts nodes by descending probability, ties broken by ascending id.
    pub fn from_probabilities(values: &[f64]) -> RankTable {
        let mut order: Vec<NodeId> = (0..values.len() as NodeId).collect();
        order.sort_unstable_by(|&a, &b| {
            values[b as usize]
                .partial_cmp(&values[a as usize])
                .expect("probabilities must not be NaN")
                .then(a.cmp(&b))
        });
        let mut rank_of = vec![0u32; values.len()];
        for (k, &node) in order.iter().enumerate() {
            rank_of[node as usize] = k as u32 + 1;
        }
        RankTable { order, rank_of }
    }

    /// Nodes by descending probability.
    pub fn order(&self) -> &[NodeId] {
        &self.order
    }

    /// 1-based rank of `node` (1 = most probable).
    pub fn rank_of(&self, node: NodeId) -> u32 {
        self.rank_of[node as usize]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Outcome of a power-iteration solve.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SolverReport {
    pub iterations: usize,
    /// L1 change of the last iteration.
    pub residual: f64,
    pub converged: bool,
}

/// Runs `v <- G v` from `start` until the L1 change drops to `tol`.
///
/// `start` must be a probability distribution. The iterate is renormalized
/// to unit sum every step to keep floating-point drift out of the fixed
/// point. On iteration exhaustion the last iterate is returned with
/// `converged = false` rather than discarded.
pub fn power_iteration(
    op: &GoogleOperator,
    start: Vec<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, SolverReport)> {
    if tol <= 0.0 {
        return Err(Error::precondition(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if start.len() != op.node_count() {
        return Err(Error::precondition(format!(
            "start vector length {} does not match node count {}",
            start.len(),
            op.node_count()
        )));
    }
    let start_sum: f64 = start.iter().sum();
    if !start_sum.is_finite() || (start_sum - 1.0).abs() > 1e-6 || start.iter().any(|x| *x < 0.0) {
        return Err(Error::precondition(format!(
            "start vector must be a probability distribution (sum {start_sum})"
        )));
    }
    let mut v = start;
    let mut next = vec![0.0; v.len()];
    let mut residual = f64::INFINITY;
    for iteration in 1..=max_iter {
        op.apply_into(&v, &mut next);
        let sum = det_sum(&next);
        debug_assert!(
            (sum - 1.0).abs() <= 1e-12,
            "stochasticity drifted: sum = {sum}"
        );
        let scale = 1.0 / sum;
        next.iter_mut().for_each(|x| *x *= scale);
        residual = det_l1_diff(&next, &v);
        std::mem::swap(&mut v, &mut next);
        if residual <= tol {
            return Ok((
                v,
                SolverReport {
                    iterations: iteration,
                    residual,
                    converged: true,
                },
            ));
        }
    }
    Ok((
        v,
        SolverReport {
            iterations: max_iter,
            residual,
            converged: false,
        },
    ))
}

fn steady_state(
    graph: &DirectedGraph,
    kind: RankKind,
    alpha: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(ProbabilityVector, RankTable, SolverReport)> {
    let op = GoogleOperator::new(graph, alpha)?;
    let n = graph.node_count();
    let start = vec![1.0 / n as f64; n];
    let (values, report) = power_iteration(&op, start, tol, max_iter)?;
    let table = RankTable::from_probabilities(&values);
    Ok((ProbabilityVector { kind, values }, table, report))
}

/// PageRank distribution, rank table and solver report.
///
/// A hit of the iteration cap is reported via `converged = false`, not as an
/// error; the partial result is still returned.
pub fn pagerank(
    graph: &DirectedGraph,
    alpha: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(ProbabilityVector, RankTable, SolverReport)> {
    steady_state(graph, RankKind::PageRank, alpha, tol, max_iter)
}

/// CheiRank: PageRank of the edge-reversed graph. The rank index is `K*`.
pub fn cheirank(
    graph: &DirectedGraph,
    alpha: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(ProbabilityVector, RankTable, SolverReport)> {
    let reversed = transpose(graph);
    steady_state(&reversed, RankKind::CheiRank, alpha, tol, max_iter)
}

/// Ranks the members of `subset` among themselves by their global rank.
///
/// Returns 1-based local ranks aligned with the input order; the result is a
/// permutation of `1..=subset.len()`.
pub fn subset_rank(table: &RankTable, subset: &[NodeId]) -> Result<Vec<u32>> {
    let n = table.len();
    let mut seen = vec![false; n];
    for &id in subset {
        if id as usize >= n {
            return Err(Error::NodeOutOfRange {
                id: id as u64,
                n: n as u64,
                position: None,
            });
        }
        if seen[id as usize] {
            return Err(Error::DuplicateSelection(id as u64));
        }
        seen[id as usize] = true;
    }
    let mut by_global: Vec<usize> = (0..subset.len()).collect();
    by_global.sort_unstable_by_key(|&i| table.rank_of(subset[i]));
    let mut local = vec![0u32; subset.len()];
    for (k, &i) in by_global.iter().enumerate() {
        local[i] = k as u32 + 1;
    }
    Ok(local)
}
