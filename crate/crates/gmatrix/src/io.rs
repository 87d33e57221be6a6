//! File formats: edge lists, label and selection files, ranking CSVs with
//! their manifest, and the CSV/JSON report writers used by the CLI.
//!
//! Text inputs are UTF-8 with LF or CRLF line endings; lines starting with
//! `#` are ignored. Edge files carry one `src<TAB>dst` pair of decimal ids
//! per line, label files one `id<TAB>label` per line.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write as IoWrite};
use std::path::{Path, PathBuf};

use ndarray::Array2;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::google::{ProbabilityVector, RankTable, SolverReport};
use crate::graph::{DirectedGraph, GraphStats, NodeId};
use crate::labels::NodeLabelMap;
use crate::rank::{DensityGrid, Ranking, ThetaTable, GRID_SIDE};
use crate::reduced::{HiddenLink, ReducedMatrices};

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

/// Strips a trailing CR (CRLF input) and surrounding whitespace.
fn clean(line: &str) -> &str {
    line.trim_end_matches('\r').trim()
}

fn is_skippable(line: &str) -> bool {
    line.is_empty() || line.starts_with('#')
}

/// Reads an edge list; returns the pairs and the smallest node count that
/// covers every id seen (0 when the file holds no edges).
pub fn read_edges(path: &Path) -> Result<(Vec<(NodeId, NodeId)>, usize)> {
    let reader = open(path)?;
    let mut edges = Vec::new();
    let mut max_id: Option<NodeId> = None;
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = clean(&line);
        if is_skippable(line) {
            continue;
        }
        let (src, dst) = line.split_once('\t').ok_or_else(|| {
            Error::parse(
                Some(path.to_owned()),
                lineno + 1,
                "expected two tab-separated node ids",
            )
        })?;
        let parse = |field: &str| -> Result<NodeId> {
            field.trim().parse::<NodeId>().map_err(|_| {
                Error::parse(
                    Some(path.to_owned()),
                    lineno + 1,
                    format!("invalid node id {field:?}"),
                )
            })
        };
        let (s, d) = (parse(src)?, parse(dst)?);
        max_id = Some(max_id.map_or(s.max(d), |m| m.max(s).max(d)));
        edges.push((s, d));
    }
    Ok((edges, max_id.map_or(0, |m| m as usize + 1)))
}

/// Writes the canonical edge list (source ascending, target ascending).
pub fn write_edge_file(graph: &DirectedGraph, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    for (src, dst) in graph.edges() {
        writeln!(w, "{src}\t{dst}").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Reads an `id<TAB>label` file into a label map.
pub fn read_label_file(path: &Path) -> Result<NodeLabelMap> {
    let reader = open(path)?;
    let mut map = NodeLabelMap::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim_end_matches(['\n', '\r']);
        if is_skippable(line.trim()) {
            continue;
        }
        let (id, label) = line.split_once('\t').ok_or_else(|| {
            Error::parse(Some(path.to_owned()), lineno + 1, "expected id<TAB>label")
        })?;
        let id: NodeId = id.trim().parse().map_err(|_| {
            Error::parse(
                Some(path.to_owned()),
                lineno + 1,
                format!("invalid node id {id:?}"),
            )
        })?;
        let label = label.trim();
        if label.is_empty() {
            return Err(Error::parse(
                Some(path.to_owned()),
                lineno + 1,
                "empty label",
            ));
        }
        map.insert(id, label)
            .map_err(|e| Error::parse(Some(path.to_owned()), lineno + 1, e.to_string()))?;
    }
    Ok(map)
}

/// Reads a selection file: one node label or decimal id per line.
///
/// A line is resolved through the label map first; if the map has no such
/// label the line must parse as a decimal id.
pub fn read_selection_file(path: &Path, labels: &NodeLabelMap) -> Result<Vec<NodeId>> {
    let reader = open(path)?;
    let mut ids = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let token = clean(&line);
        if is_skippable(token) {
            continue;
        }
        let id = if labels.contains_label(token) {
            labels.id(token)?
        } else {
            token.parse::<NodeId>().map_err(|_| {
                Error::parse(
                    Some(path.to_owned()),
                    lineno + 1,
                    format!("unknown label (and not a decimal id): {token:?}"),
                )
            })?
        };
        ids.push(id);
    }
    Ok(ids)
}

/// Reads one edition ranking file: CSV `entity_label,rank`.
pub fn read_ranking_file(path: &Path, code: &str) -> Result<Ranking> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::parse(Some(path.to_owned()), 0, e.to_string()))?;
    let mut entities = Vec::new();
    let mut ranks = Vec::new();
    for (lineno, record) in reader.records().enumerate() {
        let record =
            record.map_err(|e| Error::parse(Some(path.to_owned()), lineno + 1, e.to_string()))?;
        if record.len() != 2 {
            return Err(Error::parse(
                Some(path.to_owned()),
                lineno + 1,
                format!("expected entity_label,rank but got {} fields", record.len()),
            ));
        }
        let rank: u32 = record[1].parse().map_err(|_| {
            Error::parse(
                Some(path.to_owned()),
                lineno + 1,
                format!("invalid rank {:?}", &record[1]),
            )
        })?;
        entities.push(record[0].to_string());
        ranks.push(rank);
    }
    Ranking::new(code, entities, ranks)
}

/// Role of a ranking source in cross-comparison reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceRole {
    /// Full edition over the shared entity list; participates in the
    /// Θ-composite.
    Edition,
    /// External ranking, possibly over a subset of entities.
    External,
}

#[derive(Debug, Clone)]
pub struct ManifestEntry {
    pub code: String,
    pub path: PathBuf,
    pub role: SourceRole,
}

/// Reads a ranking manifest: CSV `code,path[,role]` with `role` one of
/// `edition` (default) or `external`. Relative paths are resolved against
/// the manifest location.
pub fn read_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let base = path.parent().unwrap_or(Path::new("."));
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .map_err(|e| Error::parse(Some(path.to_owned()), 0, e.to_string()))?;
    let mut entries = Vec::new();
    for (lineno, record) in reader.records().enumerate() {
        let record =
            record.map_err(|e| Error::parse(Some(path.to_owned()), lineno + 1, e.to_string()))?;
        if record.len() < 2 || record.len() > 3 {
            return Err(Error::parse(
                Some(path.to_owned()),
                lineno + 1,
                format!("expected code,path[,role] but got {} fields", record.len()),
            ));
        }
        let role = match record.get(2).unwrap_or("edition") {
            "" | "edition" => SourceRole::Edition,
            "external" => SourceRole::External,
            other => {
                return Err(Error::parse(
                    Some(path.to_owned()),
                    lineno + 1,
                    format!("unknown role {other:?} (expected edition or external)"),
                ))
            }
        };
        let file = PathBuf::from(&record[1]);
        let file = if file.is_absolute() {
            file
        } else {
            base.join(file)
        };
        entries.push(ManifestEntry {
            code: record[0].to_string(),
            path: file,
            role,
        });
    }
    if entries.is_empty() {
        return Err(Error::parse(
            Some(path.to_owned()),
            0,
            "manifest lists no ranking sources",
        ));
    }
    Ok(entries)
}

/// Hex SHA-256 of a file, for config echoes.
pub fn sha256_file(path: &Path) -> Result<String> {
    let mut reader = open(path)?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 64 * 1024];
    loop {
        let n = reader.read(&mut buf).map_err(|e| Error::io(path, e))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    let digest = hasher.finalize();
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

/// One row of a rank report.
#[derive(Debug, Clone, Serialize)]
pub struct RankRow {
    pub rank: u32,
    pub node_id: NodeId,
    pub label: Option<String>,
    pub probability: f64,
}

/// Builds report rows in rank order; `limit` caps the row count.
pub fn rank_rows(
    probs: &ProbabilityVector,
    table: &RankTable,
    labels: Option<&NodeLabelMap>,
    limit: Option<usize>,
) -> Vec<RankRow> {
    let take = limit.unwrap_or(table.len()).min(table.len());
    table.order()[..take]
        .iter()
        .enumerate()
        .map(|(k, &node)| RankRow {
            rank: k as u32 + 1,
            node_id: node,
            label: labels.and_then(|m| m.label(node).map(str::to_owned)),
            probability: probs.values[node as usize],
        })
        .collect()
}

/// Writes `rank,node_id,label,probability` (label blank when unknown).
pub fn write_rank_csv(path: &Path, rows: &[RankRow]) -> Result<()> {
    let file = create(path)?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(["rank", "node_id", "label", "probability"])
        .map_err(|e| Error::parse(Some(path.to_owned()), 0, e.to_string()))?;
    for row in rows {
        w.write_record([
            row.rank.to_string(),
            row.node_id.to_string(),
            row.label.clone().unwrap_or_default(),
            format!("{:.12e}", row.probability),
        ])
        .map_err(|e| Error::parse(Some(path.to_owned()), 0, e.to_string()))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

#[derive(Serialize)]
struct RankReportJson<'a> {
    kind: &'a str,
    alpha: f64,
    report: &'a SolverReport,
    rows: &'a [RankRow],
}

/// Full-precision JSON variant of the rank report, solver report attached.
pub fn write_rank_json(
    path: &Path,
    kind: &str,
    alpha: f64,
    report: &SolverReport,
    rows: &[RankRow],
) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer(
        &mut w,
        &RankReportJson {
            kind,
            alpha,
            report,
            rows,
        },
    )
    .map_err(|e| Error::io(path, e.into()))?;
    writeln!(w).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_json_pretty<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Error::io(path, e.into()))?;
    writeln!(w).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes a subset ranking as `entity_label,rank`, the edition-ranking
/// input format, so per-edition outputs feed straight into `theta`/`kendall`.
pub fn write_subset_ranking_csv(path: &Path, entities: &[String], ranks: &[u32]) -> Result<()> {
    let file = create(path)?;
    let mut w = csv::Writer::from_writer(file);
    for (e, r) in entities.iter().zip(ranks) {
        w.write_record([e.as_str(), &r.to_string()])
            .map_err(|e| Error::parse(Some(path.to_owned()), 0, e.to_string()))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes one reduced-matrix component as CSV with label headers.
///
/// The first header cell names the orientation; entry `(row i, column j)` is
/// the transition weight from source `j` to target `i`.
pub fn write_matrix_csv(path: &Path, matrix: &Array2<f64>, labels: &[String]) -> Result<()> {
    let mut file = create(path)?;
    writeln!(
        file,
        "# column = transition source, row = transition target"
    )
    .map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    let mut header = vec!["target\\source".to_string()];
    header.extend(labels.iter().cloned());
    w.write_record(&header)
        .map_err(|e| Error::parse(Some(path.to_owned()), 0, e.to_string()))?;
    let n = labels.len();
    for i in 0..n {
        let mut record = vec![labels[i].clone()];
        for j in 0..n {
            record.push(format!("{:.12e}", matrix[(i, j)]));
        }
        w.write_record(&record)
            .map_err(|e| Error::parse(Some(path.to_owned()), 0, e.to_string()))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn matrix_rows(m: &Array2<f64>) -> Vec<Vec<f64>> {
    m.rows().into_iter().map(|r| r.to_vec()).collect()
}

#[derive(Serialize)]
struct ReducedJson<'a> {
    labels: &'a [String],
    g_r: Vec<Vec<f64>>,
    g_rr: Vec<Vec<f64>>,
    g_pr: Vec<Vec<f64>>,
    g_qr: Vec<Vec<f64>>,
    p_r: &'a [f64],
    p_r_normalized: &'a [f64],
}

/// Full-precision JSON variant of all four reduced components.
pub fn write_matrices_json(path: &Path, rm: &ReducedMatrices, labels: &[String]) -> Result<()> {
    write_json_pretty(
        path,
        &ReducedJson {
            labels,
            g_r: matrix_rows(&rm.g_r),
            g_rr: matrix_rows(&rm.g_rr),
            g_pr: matrix_rows(&rm.g_pr),
            g_qr: matrix_rows(&rm.g_qr),
            p_r: &rm.p_r,
            p_r_normalized: &rm.p_r_normalized,
        },
    )
}

/// Writes `source_label,target_label,weight,purely_hidden` rows.
///
/// For the per-source view, sources whose eligible weights are all
/// non-positive get a `#` comment instead of a data row.
pub fn write_hidden_links_csv(
    path: &Path,
    labels: &[String],
    strongest: Option<&[Option<HiddenLink>]>,
    ranked: &[HiddenLink],
) -> Result<()> {
    let mut file = create(path)?;
    if let Some(per_source) = strongest {
        for (j, slot) in per_source.iter().enumerate() {
            if slot.is_none() {
                writeln!(
                    file,
                    "# no positive purely-hidden weight from: {}",
                    labels[j]
                )
                .map_err(|e| Error::io(path, e))?;
            }
        }
    }
    let mut w = csv::Writer::from_writer(file);
    w.write_record(["source_label", "target_label", "weight", "purely_hidden"])
        .map_err(|e| Error::parse(Some(path.to_owned()), 0, e.to_string()))?;
    let rows: Vec<&HiddenLink> = match strongest {
        Some(per_source) => per_source.iter().flatten().collect(),
        None => ranked.iter().collect(),
    };
    for link in rows {
        w.write_record([
            labels[link.source].as_str(),
            labels[link.target].as_str(),
            &format!("{:.12e}", link.weight),
            if link.purely_hidden { "true" } else { "false" },
        ])
        .map_err(|e| Error::parse(Some(path.to_owned()), 0, e.to_string()))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes `display_rank,entity_label,theta` with Θ at 3 decimals; the JSON
/// variant keeps full precision.
pub fn write_theta_csv(path: &Path, table: &ThetaTable) -> Result<()> {
    let file = create(path)?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(["display_rank", "entity_label", "theta"])
        .map_err(|e| Error::parse(Some(path.to_owned()), 0, e.to_string()))?;
    for entry in &table.entries {
        w.write_record([
            entry.display_rank.to_string(),
            entry.label.clone(),
            format!("{:.3}", entry.theta),
        ])
        .map_err(|e| Error::parse(Some(path.to_owned()), 0, e.to_string()))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

#[derive(Serialize)]
struct KendallJson<'a> {
    codes: &'a [String],
    distances: &'a [Vec<f64>],
}

/// Symmetric Kendall-distance matrix across all ranked sources.
pub fn write_kendall_csv(path: &Path, codes: &[String], matrix: &[Vec<f64>]) -> Result<()> {
    let file = create(path)?;
    let mut w = csv::Writer::from_writer(file);
    let mut header = vec!["code".to_string()];
    header.extend(codes.iter().cloned());
    w.write_record(&header)
        .map_err(|e| Error::parse(Some(path.to_owned()), 0, e.to_string()))?;
    for (i, code) in codes.iter().enumerate() {
        let mut record = vec![code.clone()];
        for v in &matrix[i] {
            record.push(format!("{v:.4}"));
        }
        w.write_record(&record)
            .map_err(|e| Error::parse(Some(path.to_owned()), 0, e.to_string()))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_kendall_json(path: &Path, codes: &[String], matrix: &[Vec<f64>]) -> Result<()> {
    write_json_pretty(
        path,
        &KendallJson {
            codes,
            distances: matrix,
        },
    )
}

/// 100x100 grid counts; row = PageRank-index bin, column = CheiRank-index
/// bin, bin 0 holding rank 1.
pub fn write_density_csv(path: &Path, grid: &DensityGrid) -> Result<()> {
    let mut file = create(path)?;
    writeln!(
        file,
        "# row = PageRank-index bin (K), column = CheiRank-index bin (K*); bin 0 holds rank 1"
    )
    .map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    for i in 0..GRID_SIDE {
        let record: Vec<String> = (0..GRID_SIDE)
            .map(|j| grid.count(i, j).to_string())
            .collect();
        w.write_record(&record)
            .map_err(|e| Error::parse(Some(path.to_owned()), 0, e.to_string()))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

#[derive(Serialize)]
struct DensityAxes {
    n: u64,
    log10_n: f64,
    /// 101 shared bin edges for both axes.
    edges: Vec<f64>,
}

pub fn write_density_axes_json(path: &Path, grid: &DensityGrid) -> Result<()> {
    write_json_pretty(
        path,
        &DensityAxes {
            n: grid.node_count() as u64,
            log10_n: (grid.node_count() as f64).log10(),
            edges: grid.edges(),
        },
    )
}

#[derive(Serialize)]
struct DensityJson {
    n: u64,
    edges: Vec<f64>,
    /// 100 rows (K bins) of 100 counts (K* bins).
    bins: Vec<Vec<u32>>,
}

pub fn write_density_json(path: &Path, grid: &DensityGrid) -> Result<()> {
    let bins: Vec<Vec<u32>> = (0..GRID_SIDE)
        .map(|i| (0..GRID_SIDE).map(|j| grid.count(i, j)).collect())
        .collect();
    write_json_pretty(
        path,
        &DensityJson {
            n: grid.node_count() as u64,
            edges: grid.edges(),
            bins,
        },
    )
}

/// Single JSON object `{n, edge_count, density, mean_degree, dangling_count}`.
pub fn write_stats_json(path: &Path, stats: &GraphStats) -> Result<()> {
    write_json_pretty(path, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use std::io::Write;

    fn tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn edge_file_round_trip_is_canonical() {
        let f = tmp("# comment\n2\t0\n0\t1\n\n0\t1\n");
        let (edges, n) = read_edges(f.path()).unwrap();
        assert_eq!(n, 3);
        let g = build_graph(n, edges).unwrap();
        let out = tempfile::NamedTempFile::new().unwrap();
        write_edge_file(&g, out.path()).unwrap();
        let text = std::fs::read_to_string(out.path()).unwrap();
        assert_eq!(text, "0\t1\n2\t0\n");
        let (edges2, n2) = read_edges(out.path()).unwrap();
        assert_eq!(g, build_graph(n2, edges2).unwrap());
    }

    #[test]
    fn crlf_and_comments_are_tolerated() {
        let f = tmp("0\t1\r\n# c\r\n1\t2\r\n");
        let (edges, n) = read_edges(f.path()).unwrap();
        assert_eq!(edges, vec![(0, 1), (1, 2)]);
        assert_eq!(n, 3);
    }

    #[test]
    fn bad_edge_line_reports_its_number() {
        let f = tmp("0\t1\nnot-an-edge\n");
        match read_edges(f.path()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn label_file_parses_and_rejects_duplicates() {
        let f = tmp("0\tAristotle\n1\tPlato\n");
        let m = read_label_file(f.path()).unwrap();
        assert_eq!(m.id("Plato").unwrap(), 1);

        let dup = tmp("0\tA\n0\tB\n");
        assert!(matches!(
            read_label_file(dup.path()),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn selection_resolves_labels_then_ids() {
        let labels = read_label_file(tmp("0\tAristotle\n3\tPlato\n").path()).unwrap();
        let f = tmp("Plato\n# note\n2\nAristotle\n");
        let ids = read_selection_file(f.path(), &labels).unwrap();
        assert_eq!(ids, vec![3, 2, 0]);

        let bad = tmp("Socrates\n");
        assert!(read_selection_file(bad.path(), &labels).is_err());
    }

    #[test]
    fn ranking_file_and_manifest_parse() {
        let r = tmp("Aristotle,1\nPlato,2\n");
        let ranking = read_ranking_file(r.path(), "EN").unwrap();
        assert_eq!(ranking.entities, vec!["Aristotle", "Plato"]);
        assert_eq!(ranking.ranks, vec![1, 2]);

        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("en.csv"), "A,1\nB,2\n").unwrap();
        std::fs::write(dir.path().join("iep.csv"), "A,1\n").unwrap();
        let manifest = tmp_in(
            &dir,
            "EN,en.csv\nIEP,iep.csv,external\n# trailing comment\n",
        );
        let entries = read_manifest(&manifest).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].role, SourceRole::Edition);
        assert_eq!(entries[1].role, SourceRole::External);
        assert!(entries[1].path.ends_with("iep.csv"));
    }

    fn tmp_in(dir: &tempfile::TempDir, content: &str) -> PathBuf {
        let path = dir.path().join("manifest.csv");
        std::fs::write(&path, content).unwrap();
        path
    }

    #[test]
    fn sha256_is_stable() {
        let f = tmp("abc");
        assert_eq!(
            sha256_file(f.path()).unwrap(),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
