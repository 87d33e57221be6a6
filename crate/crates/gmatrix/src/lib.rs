//! Google-matrix analysis of large directed networks.
//!
//! The crate covers the full pipeline used in network-influence studies:
//!
//! - [`graph`]: compressed immutable digraphs built from edge lists, with
//!   structural statistics.
//! - [`google`]: the matrix-free Google operator, PageRank / CheiRank power
//!   iteration and rank tables.
//! - [`reduced`]: the reduced Google matrix of a node subset, its
//!   direct / rank-one / hidden decomposition, and purely-hidden link
//!   extraction.
//! - [`rank`]: Θ-score aggregation across editions, Kendall distance,
//!   common-subset restriction and rank-plane density grids.
//! - [`io`]: the file formats shared with the `gmatrix` command-line tool.
//!
//! Results are deterministic: identical inputs and parameters reproduce
//! byte-identical reports regardless of the worker-thread count.
//!
//! ```
//! use gmatrix::{build_graph, pagerank};
//!
//! let graph = build_graph(4, [(0, 1), (1, 2), (2, 0), (3, 0)]).unwrap();
//! let (probs, table, report) = pagerank(&graph, 0.85, 1e-12, 1000).unwrap();
//! assert!(report.converged);
//! assert!((probs.values.iter().sum::<f64>() - 1.0).abs() < 1e-12);
//! assert_eq!(table.rank_of(table.order()[0]), 1);
//! ```

pub mod error;
pub mod google;
pub mod graph;
pub mod io;
pub mod labels;
mod par;
pub mod rank;
pub mod reduced;

pub use error::{Error, Result};
pub use google::{
    cheirank, pagerank, power_iteration, subset_rank, GoogleOperator, ProbabilityVector, RankKind,
    RankTable, SolverReport, DEFAULT_ALPHA, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
pub use graph::{
    build_graph, build_graph_reported, graph_stats, transpose, BuildReport, DirectedGraph,
    GraphStats, NodeId,
};
pub use labels::NodeLabelMap;
pub use rank::{
    density_grid, kendall_distance, restrict_common, theta_scores, topk_table, DensityGrid,
    Ranking, ThetaEntry, ThetaTable, GRID_SIDE,
};
pub use reduced::{
    extract_grr, ranked_hidden_links, reduced_google, solve_scatter, strongest_hidden_links,
    HiddenLink, ReducedMatrices, ReducedSelection, ScatterSolution, ScatterSpectrum,
    DEFAULT_SCATTER_MAX_ITER, DEFAULT_SCATTER_TOL,
};
