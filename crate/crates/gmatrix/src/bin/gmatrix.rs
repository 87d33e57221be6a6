//! Command-line front end: ingestion, computation and report emission.
//!
//! Every run writes its artifacts plus a `run_config.json` echo (parameters
//! and input checksums) into `--out`. Outputs are deterministic for a given
//! input/config pair, independent of the worker-thread count.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gmatrix::error::{Error, Result};
use gmatrix::google::{
    cheirank, pagerank, subset_rank, GoogleOperator, SolverReport, DEFAULT_ALPHA, DEFAULT_MAX_ITER,
    DEFAULT_TOL,
};
use gmatrix::graph::{build_graph_reported, graph_stats, DirectedGraph};
use gmatrix::io;
use gmatrix::labels::NodeLabelMap;
use gmatrix::rank::{density_grid, kendall_distance, restrict_common, theta_scores, Ranking};
use gmatrix::reduced::{
    ranked_hidden_links, reduced_google, strongest_hidden_links, HiddenLink, ReducedMatrices,
    ReducedSelection, DEFAULT_SCATTER_MAX_ITER,
};

#[derive(Parser)]
#[command(
    name = "gmatrix",
    version,
    about = "Google-matrix analysis of directed networks: PageRank/CheiRank, reduced \
             Google matrix with hidden links, and cross-ranking comparison"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Rounded CSV data files with JSON sidecars.
    Csv,
    /// Full-precision JSON data files.
    Json,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Args)]
struct RunOpts {
    /// Damping factor of the Google matrix.
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    /// L1 convergence tolerance for the iterative solves.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Iteration cap (default: 1000 for rank solves, 10000 for reduced runs).
    #[arg(long)]
    max_iter: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, env = "GMATRIX_THREADS")]
    threads: Option<usize>,
    /// Output directory, created if missing.
    #[arg(long)]
    out: PathBuf,
    /// Format of the main data artifacts.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct GraphInputs {
    /// Edge list: one `src<TAB>dst` pair of decimal ids per line.
    #[arg(long)]
    edges: PathBuf,
    /// Optional `id<TAB>label` sidecar file.
    #[arg(long)]
    labels: Option<PathBuf>,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    input: GraphInputs,
    /// Optional node subset; emits `subset_ranking.csv` (entity_label,rank)
    /// usable as an edition-ranking input.
    #[arg(long)]
    selection: Option<PathBuf>,
    #[command(flatten)]
    opts: RunOpts,
}

#[derive(Args)]
struct ReducedArgs {
    #[command(flatten)]
    input: GraphInputs,
    /// Selection file: one node label or decimal id per line.
    #[arg(long)]
    selection: PathBuf,
    #[command(flatten)]
    opts: RunOpts,
}

#[derive(Args)]
struct HiddenArgs {
    #[command(flatten)]
    input: GraphInputs,
    /// Selection file: one node label or decimal id per line.
    #[arg(long)]
    selection: PathBuf,
    /// Keep only the strongest entries of the ranked listing.
    #[arg(long)]
    top: Option<usize>,
    #[command(flatten)]
    opts: RunOpts,
}

#[derive(Args)]
struct RankingsArgs {
    /// Manifest CSV: `code,path[,role]` with role `edition` (default) or
    /// `external`.
    #[arg(long)]
    rankings: PathBuf,
    #[command(flatten)]
    opts: RunOpts,
}

#[derive(Args)]
struct DensityArgs {
    #[command(flatten)]
    input: GraphInputs,
    #[command(flatten)]
    opts: RunOpts,
}

#[derive(Args)]
struct TopkArgs {
    #[command(flatten)]
    input: GraphInputs,
    /// Restrict the table to a node subset (local ranks).
    #[arg(long)]
    selection: Option<PathBuf>,
    /// Number of rows.
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[command(flatten)]
    opts: RunOpts,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    input: GraphInputs,
    #[command(flatten)]
    opts: RunOpts,
}

#[derive(Subcommand)]
enum Command {
    /// PageRank distribution, rank table and solver report.
    Pagerank(RankArgs),
    /// CheiRank distribution (PageRank of the edge-reversed graph).
    Cheirank(RankArgs),
    /// Reduced Google matrix and its components for a node selection.
    Reduced(ReducedArgs),
    /// Hidden-link reports for a node selection.
    HiddenLinks(HiddenArgs),
    /// Aggregate edition rankings into a Θ-score table.
    Theta(RankingsArgs),
    /// Kendall distance matrix across ranking sources.
    Kendall(RankingsArgs),
    /// Node density grid over the PageRank/CheiRank rank plane.
    Density(DensityArgs),
    /// Top-k rank table (optionally within a node subset).
    Topk(TopkArgs),
    /// Structural statistics of a graph.
    Stats(StatsArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => 1,
        Error::Parse { .. } => 2,
        Error::NonConvergence { .. } => 4,
        _ => 3,
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Pagerank(args) => run_rank(args, Kind::PageRank),
        Command::Cheirank(args) => run_rank(args, Kind::CheiRank),
        Command::Reduced(args) => run_reduced(args.input, args.selection, args.opts, false, None),
        Command::HiddenLinks(args) => {
            run_reduced(args.input, args.selection, args.opts, true, args.top)
        }
        Command::Theta(args) => run_theta(args),
        Command::Kendall(args) => run_kendall(args),
        Command::Density(args) => run_density(args),
        Command::Topk(args) => run_topk(args),
        Command::Stats(args) => run_stats(args),
    }
}

fn init_threads(threads: Option<usize>) {
    if let Some(t) = threads {
        // Ignore the error if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
}

fn ensure_out_dir(out: &Path) -> Result<()> {
    std::fs::create_dir_all(out).map_err(|e| Error::Io {
        path: Some(out.to_owned()),
        source: e,
    })
}

/// Loads the graph; the node count covers every id seen in the edge file and
/// the label file.
fn load_graph(input: &GraphInputs) -> Result<(DirectedGraph, NodeLabelMap)> {
    let labels = match &input.labels {
        Some(path) => io::read_label_file(path)?,
        None => NodeLabelMap::new(),
    };
    let (edges, n_edges) = io::read_edges(&input.edges)?;
    let n = n_edges.max(labels.max_id().map_or(0, |m| m as usize + 1));
    let (graph, report) = build_graph_reported(n, edges)?;
    if report.self_loops_dropped > 0 || report.duplicates_collapsed > 0 {
        eprintln!(
            "ingest: dropped {} self-loop(s), collapsed {} duplicate edge(s)",
            report.self_loops_dropped, report.duplicates_collapsed
        );
    }
    Ok((graph, labels))
}

#[derive(Serialize)]
struct InputChecksum {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct RunConfig<'a> {
    command: &'a str,
    alpha: f64,
    tol: f64,
    max_iter: usize,
    threads: Option<usize>,
    format: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    top: Option<usize>,
    inputs: Vec<InputChecksum>,
}

fn echo_config(
    out: &Path,
    command: &str,
    opts: &RunOpts,
    max_iter: usize,
    k: Option<usize>,
    top: Option<usize>,
    inputs: &[&Path],
) -> Result<()> {
    let mut checksums = Vec::with_capacity(inputs.len());
    for path in inputs {
        checksums.push(InputChecksum {
            path: path.display().to_string(),
            sha256: io::sha256_file(path)?,
        });
    }
    io::write_json_pretty(
        &out.join("run_config.json"),
        &RunConfig {
            command,
            alpha: opts.alpha,
            tol: opts.tol,
            max_iter,
            threads: opts.threads,
            format: opts.format.name(),
            k,
            top,
            inputs: checksums,
        },
    )
}

#[derive(Clone, Copy)]
enum Kind {
    PageRank,
    CheiRank,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::PageRank => "pagerank",
            Kind::CheiRank => "cheirank",
        }
    }
}

fn run_rank(args: RankArgs, kind: Kind) -> Result<()> {
    init_threads(args.opts.threads);
    ensure_out_dir(&args.opts.out)?;
    let (graph, labels) = load_graph(&args.input)?;
    let max_iter = args.opts.max_iter.unwrap_or(DEFAULT_MAX_ITER);
    let (probs, table, report) = match kind {
        Kind::PageRank => pagerank(&graph, args.opts.alpha, args.opts.tol, max_iter)?,
        Kind::CheiRank => cheirank(&graph, args.opts.alpha, args.opts.tol, max_iter)?,
    };

    let out = &args.opts.out;
    let rows = io::rank_rows(&probs, &table, Some(&labels), None);
    match args.opts.format {
        Format::Csv => io::write_rank_csv(&out.join(format!("{}.csv", kind.name())), &rows)?,
        Format::Json => io::write_rank_json(
            &out.join(format!("{}.json", kind.name())),
            kind.name(),
            args.opts.alpha,
            &report,
            &rows,
        )?,
    }
    io::write_json_pretty(&out.join("report.json"), &report)?;

    if let Some(selection) = &args.selection {
        let ids = io::read_selection_file(selection, &labels)?;
        let local = subset_rank(&table, &ids)?;
        let entities: Vec<String> = ids.iter().map(|&id| labels.label_or_id(id)).collect();
        io::write_subset_ranking_csv(&out.join("subset_ranking.csv"), &entities, &local)?;
    }

    let mut inputs: Vec<&Path> = vec![&args.input.edges];
    if let Some(p) = &args.input.labels {
        inputs.push(p);
    }
    if let Some(p) = &args.selection {
        inputs.push(p);
    }
    echo_config(out, kind.name(), &args.opts, max_iter, None, None, &inputs)?;

    eprintln!(
        "{}: n={} iterations={} residual={:.3e} converged={}",
        kind.name(),
        graph.node_count(),
        report.iterations,
        report.residual,
        report.converged
    );
    if !report.converged {
        return Err(Error::NonConvergence {
            iterations: report.iterations,
            residual: report.residual,
        });
    }
    Ok(())
}

#[derive(Serialize)]
struct ReducedTolerances {
    solver: f64,
}

#[derive(Serialize)]
struct ReducedIterations {
    pagerank: usize,
    scatter_max: usize,
    eigen_right: usize,
    eigen_left: usize,
}

#[derive(Serialize)]
struct ReducedConverged {
    pagerank: bool,
    eigen_right: bool,
    eigen_left: bool,
}

#[derive(Serialize)]
struct ReducedMeta {
    alpha: f64,
    lambda_c: f64,
    n: u64,
    n_r: u64,
    pr_cosine: f64,
    tolerances: ReducedTolerances,
    iterations: ReducedIterations,
    converged: ReducedConverged,
}

#[derive(Serialize)]
struct StrongestJson {
    source_label: String,
    target_label: Option<String>,
    weight: Option<f64>,
}

#[derive(Serialize)]
struct HiddenRowJson {
    source_label: String,
    target_label: String,
    weight: f64,
    purely_hidden: bool,
}

#[derive(Serialize)]
struct HiddenJson {
    strongest_per_source: Vec<StrongestJson>,
    ranked: Vec<HiddenRowJson>,
}

fn hidden_row(link: &HiddenLink, labels: &[String]) -> HiddenRowJson {
    HiddenRowJson {
        source_label: labels[link.source].clone(),
        target_label: labels[link.target].clone(),
        weight: link.weight,
        purely_hidden: link.purely_hidden,
    }
}

fn write_reduced_meta(out: &Path, rm: &ReducedMatrices, alpha: f64, tol: f64) -> Result<()> {
    io::write_json_pretty(
        &out.join("reduced_meta.json"),
        &ReducedMeta {
            alpha,
            lambda_c: rm.spectrum.lambda_c,
            n: rm.selection.graph_nodes() as u64,
            n_r: rm.selection.len() as u64,
            pr_cosine: rm.pr_cosine,
            tolerances: ReducedTolerances { solver: tol },
            iterations: ReducedIterations {
                pagerank: rm.pagerank_report.iterations,
                scatter_max: rm.scatter_iterations_max,
                eigen_right: rm.spectrum.right_iterations,
                eigen_left: rm.spectrum.left_iterations,
            },
            converged: ReducedConverged {
                pagerank: rm.pagerank_report.converged,
                eigen_right: rm.spectrum.right_converged,
                eigen_left: rm.spectrum.left_converged,
            },
        },
    )
}

fn run_reduced(
    input: GraphInputs,
    selection: PathBuf,
    opts: RunOpts,
    links_only: bool,
    top: Option<usize>,
) -> Result<()> {
    init_threads(opts.threads);
    ensure_out_dir(&opts.out)?;
    let (graph, labels) = load_graph(&input)?;
    let ids = io::read_selection_file(&selection, &labels)?;
    let sel = ReducedSelection::new(ids, graph.node_count())?;
    let op = GoogleOperator::new(&graph, opts.alpha)?;
    let max_iter = opts.max_iter.unwrap_or(DEFAULT_SCATTER_MAX_ITER);
    let rm = reduced_google(&op, &sel, opts.tol, max_iter)?;

    let sel_labels: Vec<String> = sel.ids().iter().map(|&id| labels.label_or_id(id)).collect();
    let out = &opts.out;

    if !links_only {
        match opts.format {
            Format::Csv => {
                io::write_matrix_csv(&out.join("g_r.csv"), &rm.g_r, &sel_labels)?;
                io::write_matrix_csv(&out.join("g_rr.csv"), &rm.g_rr, &sel_labels)?;
                io::write_matrix_csv(&out.join("g_pr.csv"), &rm.g_pr, &sel_labels)?;
                io::write_matrix_csv(&out.join("g_qr.csv"), &rm.g_qr, &sel_labels)?;
            }
            Format::Json => io::write_matrices_json(&out.join("matrices.json"), &rm, &sel_labels)?,
        }
    }
    write_reduced_meta(out, &rm, opts.alpha, opts.tol)?;

    let strongest = strongest_hidden_links(&rm, &graph)?;
    let ranked_all = ranked_hidden_links(&rm, &graph)?;
    let ranked = match top {
        Some(t) => &ranked_all[..t.min(ranked_all.len())],
        None => &ranked_all[..],
    };
    match opts.format {
        Format::Csv => {
            io::write_hidden_links_csv(
                &out.join("hidden_links.csv"),
                &sel_labels,
                Some(&strongest),
                ranked,
            )?;
            io::write_hidden_links_csv(
                &out.join("hidden_links_ranked.csv"),
                &sel_labels,
                None,
                ranked,
            )?;
        }
        Format::Json => {
            let strongest_json = strongest
                .iter()
                .enumerate()
                .map(|(j, slot)| StrongestJson {
                    source_label: sel_labels[j].clone(),
                    target_label: slot.map(|l| sel_labels[l.target].clone()),
                    weight: slot.map(|l| l.weight),
                })
                .collect();
            io::write_json_pretty(
                &out.join("hidden_links.json"),
                &HiddenJson {
                    strongest_per_source: strongest_json,
                    ranked: ranked.iter().map(|l| hidden_row(l, &sel_labels)).collect(),
                },
            )?;
        }
    }

    if !rm.spectrum.right_converged || !rm.spectrum.left_converged {
        eprintln!(
            "warning: leading-eigenvector iteration hit the cap \
             (right converged: {}, left converged: {}); the G_pr/G_qr split \
             is less accurate than requested",
            rm.spectrum.right_converged, rm.spectrum.left_converged
        );
    }
    eprintln!(
        "reduced: n={} n_r={} lambda_c={:.6} scatter_iterations<={}",
        graph.node_count(),
        sel.len(),
        rm.spectrum.lambda_c,
        rm.scatter_iterations_max
    );

    let command = if links_only {
        "hidden-links"
    } else {
        "reduced"
    };
    let mut inputs: Vec<&Path> = vec![&input.edges];
    if let Some(p) = &input.labels {
        inputs.push(p);
    }
    inputs.push(&selection);
    echo_config(out, command, &opts, max_iter, None, top, &inputs)
}

/// Loads every manifest source, keeping manifest order within each role.
fn load_sources(manifest: &Path) -> Result<(Vec<Ranking>, Vec<Ranking>, Vec<PathBuf>)> {
    let entries = io::read_manifest(manifest)?;
    let mut editions = Vec::new();
    let mut externals = Vec::new();
    let mut files = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for entry in &entries {
        if !seen.insert(entry.code.clone()) {
            return Err(Error::precondition(format!(
                "duplicate source code {:?} in manifest",
                entry.code
            )));
        }
        let ranking = io::read_ranking_file(&entry.path, &entry.code)?;
        files.push(entry.path.clone());
        match entry.role {
            io::SourceRole::Edition => editions.push(ranking),
            io::SourceRole::External => externals.push(ranking),
        }
    }
    Ok((editions, externals, files))
}

fn run_theta(args: RankingsArgs) -> Result<()> {
    init_threads(args.opts.threads);
    ensure_out_dir(&args.opts.out)?;
    let (editions, _, files) = load_sources(&args.rankings)?;
    if editions.is_empty() {
        return Err(Error::precondition(
            "theta needs at least one edition-role ranking in the manifest",
        ));
    }
    let table = theta_scores(&editions)?;
    let out = &args.opts.out;
    match args.opts.format {
        Format::Csv => io::write_theta_csv(&out.join("theta.csv"), &table)?,
        Format::Json => io::write_json_pretty(&out.join("theta.json"), &table)?,
    }
    let mut inputs: Vec<&Path> = vec![&args.rankings];
    inputs.extend(files.iter().map(PathBuf::as_path));
    echo_config(
        out,
        "theta",
        &args.opts,
        args.opts.max_iter.unwrap_or(DEFAULT_MAX_ITER),
        None,
        None,
        &inputs,
    )?;
    eprintln!(
        "theta: {} editions, {} entities",
        editions.len(),
        table.entries.len()
    );
    Ok(())
}

/// Composite code added to Kendall comparisons when editions are present.
const COMPOSITE_CODE: &str = "WIKI";

fn run_kendall(args: RankingsArgs) -> Result<()> {
    init_threads(args.opts.threads);
    ensure_out_dir(&args.opts.out)?;
    let (editions, externals, files) = load_sources(&args.rankings)?;

    let mut sources: Vec<Ranking> = editions.clone();
    if !editions.is_empty() {
        if sources
            .iter()
            .chain(&externals)
            .any(|r| r.code == COMPOSITE_CODE)
        {
            return Err(Error::precondition(format!(
                "source code {COMPOSITE_CODE:?} is reserved for the theta composite"
            )));
        }
        sources.push(theta_scores(&editions)?.as_ranking(COMPOSITE_CODE));
    }
    sources.extend(externals);
    if sources.is_empty() {
        return Err(Error::precondition("manifest lists no ranking sources"));
    }

    let m = sources.len();
    let mut matrix = vec![vec![0.0f64; m]; m];
    for i in 0..m {
        for j in (i + 1)..m {
            let (ri, rj) = restrict_common(&sources[i], &sources[j])?;
            let d = kendall_distance(&ri.ranks, &rj.ranks)?;
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
    }
    let codes: Vec<String> = sources.iter().map(|r| r.code.clone()).collect();

    let out = &args.opts.out;
    match args.opts.format {
        Format::Csv => io::write_kendall_csv(&out.join("kendall.csv"), &codes, &matrix)?,
        Format::Json => io::write_kendall_json(&out.join("kendall.json"), &codes, &matrix)?,
    }
    let mut inputs: Vec<&Path> = vec![&args.rankings];
    inputs.extend(files.iter().map(PathBuf::as_path));
    echo_config(
        out,
        "kendall",
        &args.opts,
        args.opts.max_iter.unwrap_or(DEFAULT_MAX_ITER),
        None,
        None,
        &inputs,
    )?;
    eprintln!("kendall: {m} sources");
    Ok(())
}

#[derive(Serialize)]
struct DensityReports {
    pagerank: SolverReport,
    cheirank: SolverReport,
}

fn run_density(args: DensityArgs) -> Result<()> {
    init_threads(args.opts.threads);
    ensure_out_dir(&args.opts.out)?;
    let (graph, _) = load_graph(&args.input)?;
    let max_iter = args.opts.max_iter.unwrap_or(DEFAULT_MAX_ITER);
    let (_, pr_table, pr_report) = pagerank(&graph, args.opts.alpha, args.opts.tol, max_iter)?;
    let (_, cr_table, cr_report) = cheirank(&graph, args.opts.alpha, args.opts.tol, max_iter)?;
    let grid = density_grid(&pr_table, &cr_table)?;

    let out = &args.opts.out;
    match args.opts.format {
        Format::Csv => {
            io::write_density_csv(&out.join("density.csv"), &grid)?;
            io::write_density_axes_json(&out.join("density_axes.json"), &grid)?;
        }
        Format::Json => io::write_density_json(&out.join("density.json"), &grid)?,
    }
    io::write_json_pretty(
        &out.join("report.json"),
        &DensityReports {
            pagerank: pr_report,
            cheirank: cr_report,
        },
    )?;

    let mut inputs: Vec<&Path> = vec![&args.input.edges];
    if let Some(p) = &args.input.labels {
        inputs.push(p);
    }
    echo_config(out, "density", &args.opts, max_iter, None, None, &inputs)?;

    for (name, report) in [("pagerank", pr_report), ("cheirank", cr_report)] {
        if !report.converged {
            eprintln!("warning: {name} did not converge");
            return Err(Error::NonConvergence {
                iterations: report.iterations,
                residual: report.residual,
            });
        }
    }
    Ok(())
}

fn run_topk(args: TopkArgs) -> Result<()> {
    init_threads(args.opts.threads);
    ensure_out_dir(&args.opts.out)?;
    let (graph, labels) = load_graph(&args.input)?;
    let max_iter = args.opts.max_iter.unwrap_or(DEFAULT_MAX_ITER);
    let (probs, table, report) = pagerank(&graph, args.opts.alpha, args.opts.tol, max_iter)?;

    let rows = match &args.selection {
        Some(path) => {
            let ids = io::read_selection_file(path, &labels)?;
            if args.k > ids.len() {
                return Err(Error::precondition(format!(
                    "k = {} exceeds the {} selected nodes",
                    args.k,
                    ids.len()
                )));
            }
            let local = subset_rank(&table, &ids)?;
            let mut by_local: Vec<usize> = (0..ids.len()).collect();
            by_local.sort_unstable_by_key(|&i| local[i]);
            by_local[..args.k]
                .iter()
                .map(|&i| io::RankRow {
                    rank: local[i],
                    node_id: ids[i],
                    label: labels.label(ids[i]).map(str::to_owned),
                    probability: probs.values[ids[i] as usize],
                })
                .collect()
        }
        None => {
            if args.k > table.len() {
                return Err(Error::precondition(format!(
                    "k = {} exceeds the {} ranked nodes",
                    args.k,
                    table.len()
                )));
            }
            io::rank_rows(&probs, &table, Some(&labels), Some(args.k))
        }
    };

    let out = &args.opts.out;
    match args.opts.format {
        Format::Csv => io::write_rank_csv(&out.join("topk.csv"), &rows)?,
        Format::Json => io::write_rank_json(
            &out.join("topk.json"),
            "pagerank",
            args.opts.alpha,
            &report,
            &rows,
        )?,
    }

    let mut inputs: Vec<&Path> = vec![&args.input.edges];
    if let Some(p) = &args.input.labels {
        inputs.push(p);
    }
    if let Some(p) = &args.selection {
        inputs.push(p);
    }
    echo_config(
        out,
        "topk",
        &args.opts,
        max_iter,
        Some(args.k),
        None,
        &inputs,
    )?;
    if !report.converged {
        return Err(Error::NonConvergence {
            iterations: report.iterations,
            residual: report.residual,
        });
    }
    Ok(())
}

fn run_stats(args: StatsArgs) -> Result<()> {
    init_threads(args.opts.threads);
    ensure_out_dir(&args.opts.out)?;
    let (graph, _) = load_graph(&args.input)?;
    let stats = graph_stats(&graph)?;
    io::write_stats_json(&args.opts.out.join("stats.json"), &stats)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&stats).expect("stats serialize")
    );
    let mut inputs: Vec<&Path> = vec![&args.input.edges];
    if let Some(p) = &args.input.labels {
        inputs.push(p);
    }
    echo_config(
        &args.opts.out,
        "stats",
        &args.opts,
        args.opts.max_iter.unwrap_or(DEFAULT_MAX_ITER),
        None,
        None,
        &inputs,
    )
}
