//! Cross-ranking analytics: Θ-score aggregation over editions, Kendall
//! distance, common-subset restriction, rank-plane density grids and top-k
//! tables.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::google::RankTable;
use crate::graph::NodeId;
use crate::labels::NodeLabelMap;

/// A ranking of labeled entities attributed to one source (a Wikipedia
/// edition, an external encyclopedia, a composite score, ...).
///
/// Ranks are 1-based and may contain ties unless constructed through
/// [`Ranking::permutation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    pub code: String,
    pub entities: Vec<String>,
    pub ranks: Vec<u32>,
}

impl Ranking {
    /// Builds a ranking, validating that entities are distinct and each has
    /// exactly one rank value >= 1.
    pub fn new(code: impl Into<String>, entities: Vec<String>, ranks: Vec<u32>) -> Result<Self> {
        let code = code.into();
        if entities.len() != ranks.len() {
            return Err(Error::precondition(format!(
                "ranking {code}: {} entities but {} ranks",
                entities.len(),
                ranks.len()
            )));
        }
        let mut seen = HashMap::new();
        for (i, e) in entities.iter().enumerate() {
            if let Some(first) = seen.insert(e.clone(), i) {
                return Err(Error::precondition(format!(
                    "ranking {code}: entity {e:?} appears at positions {first} and {i}"
                )));
            }
        }
        if let Some(&bad) = ranks.iter().find(|&&r| r == 0) {
            return Err(Error::precondition(format!(
                "ranking {code}: rank {bad} is not a 1-based rank"
            )));
        }
        Ok(Ranking {
            code,
            entities,
            ranks,
        })
    }

    /// Like [`Ranking::new`] but additionally requires the ranks to be a
    /// permutation of `1..=len`.
    pub fn permutation(
        code: impl Into<String>,
        entities: Vec<String>,
        ranks: Vec<u32>,
    ) -> Result<Self> {
        let r = Self::new(code, entities, ranks)?;
        let n = r.ranks.len() as u32;
        let mut seen = vec![false; r.ranks.len()];
        for &k in &r.ranks {
            if k > n || seen[(k - 1) as usize] {
                return Err(Error::precondition(format!(
                    "ranking {}: ranks are not a permutation of 1..={n} (offending rank {k})",
                    r.code
                )));
            }
            seen[(k - 1) as usize] = true;
        }
        Ok(r)
    }

    pub fn len(&self) -> usize {
        self.entities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entities.is_empty()
    }
}

/// One row of a Θ table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaEntry {
    pub label: String,
    pub theta: f64,
    /// Competition-style rank: equal Θ shares a rank, the next distinct Θ
    /// skips accordingly (1, 2, 2, 4, ...).
    pub display_rank: u32,
}

/// Θ-scores sorted by descending score; equal scores are ordered
/// lexicographically by label.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaTable {
    pub entries: Vec<ThetaEntry>,
}

impl ThetaTable {
    /// Ranking view of the table (labels with their display ranks), usable as
    /// a Kendall source.
    pub fn as_ranking(&self, code: impl Into<String>) -> Ranking {
        Ranking {
            code: code.into(),
            entities: self.entries.iter().map(|e| e.label.clone()).collect(),
            ranks: self.entries.iter().map(|e| e.display_rank).collect(),
        }
    }
}

fn check_identical_entities(rankings: &[Ranking]) -> Result<()> {
    let first = &rankings[0];
    let mut problems = Vec::new();
    for r in &rankings[1..] {
        if r.entities == first.entities {
            continue;
        }
        let here: HashMap<&str, ()> = r.entities.iter().map(|e| (e.as_str(), ())).collect();
        let there: HashMap<&str, ()> = first.entities.iter().map(|e| (e.as_str(), ())).collect();
        for e in &first.entities {
            if !here.contains_key(e.as_str()) {
                problems.push(format!("{}: missing entity {e:?}", r.code));
            }
        }
        for e in &r.entities {
            if !there.contains_key(e.as_str()) {
                problems.push(format!("{}: extra entity {e:?}", r.code));
            }
        }
        if r.entities.len() == first.entities.len() && problems.is_empty() {
            problems.push(format!(
                "{}: same entity set as {} but in a different order",
                r.code, first.code
            ));
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::EntityMismatch(problems))
    }
}

/// Aggregates per-edition local ranks into Θ-scores.
///
/// With `n_ph` entities and `n_ed` editions,
/// `theta = sum_e (n_ph + 1 - k_e) / (n_ph * n_ed)`, which spans
/// `[1/n_ph, 1]`: 1 for an entity ranked first everywhere, `1/n_ph` for one
/// ranked last everywhere. Score ties are detected on the exact integer sums,
/// not on floating-point values.
pub fn theta_scores(rankings: &[Ranking]) -> Result<ThetaTable> {
    if rankings.is_empty() {
        return Err(Error::precondition("need at least one edition ranking"));
    }
    let n_ph = rankings[0].len();
    if n_ph == 0 {
        return Err(Error::precondition("edition rankings must not be empty"));
    }
    for r in rankings {
        // Re-validate: callers may have constructed Ranking directly.
        Ranking::permutation(r.code.clone(), r.entities.clone(), r.ranks.clone())?;
    }
    check_identical_entities(rankings)?;

    let n_ed = rankings.len();
    let mut sums = vec![0u64; n_ph];
    for r in rankings {
        for (p, &k) in r.ranks.iter().enumerate() {
            sums[p] += (n_ph as u64 + 1) - k as u64;
        }
    }
    let denom = (n_ph * n_ed) as f64;
    let mut order: Vec<usize> = (0..n_ph).collect();
    order.sort_by(|&a, &b| {
        sums[b]
            .cmp(&sums[a])
            .then_with(|| rankings[0].entities[a].cmp(&rankings[0].entities[b]))
    });

    let mut entries = Vec::with_capacity(n_ph);
    let mut display_rank = 0u32;
    let mut prev_sum = None;
    for (pos, &p) in order.iter().enumerate() {
        if prev_sum != Some(sums[p]) {
            display_rank = pos as u32 + 1;
            prev_sum = Some(sums[p]);
        }
        entries.push(ThetaEntry {
            label: rankings[0].entities[p].clone(),
            theta: sums[p] as f64 / denom,
            display_rank,
        });
    }
    Ok(ThetaTable { entries })
}

/// Kendall distance between two rank assignments over the same entities.
///
/// `d = sum over pairs of (1 - sign(dr1) * sign(dr2)) / (n (n - 1))`: 0 for
/// identical rankings, 1 for exact reversal. A pair tied in either ranking
/// contributes 1 (`sign(0) = 0`). Runs in `O(n log n)` via merge-sort
/// inversion counting; the quadratic literal evaluation is kept to tests.
///
/// ```
/// use gmatrix::kendall_distance;
///
/// assert_eq!(kendall_distance(&[1, 2, 3], &[1, 2, 3]).unwrap(), 0.0);
/// assert_eq!(kendall_distance(&[1, 2, 3], &[3, 2, 1]).unwrap(), 1.0);
/// ```
pub fn kendall_distance(r1: &[u32], r2: &[u32]) -> Result<f64> {
    let n = r1.len();
    if r2.len() != n {
        return Err(Error::precondition(format!(
            "rank assignments differ in length: {n} vs {}",
            r2.len()
        )));
    }
    if n < 2 {
        return Err(Error::precondition(
            "kendall distance needs at least two entities",
        ));
    }

    let mut idx: Vec<u32> = (0..n as u32).collect();
    idx.sort_unstable_by(|&a, &b| {
        r1[a as usize]
            .cmp(&r1[b as usize])
            .then(r2[a as usize].cmp(&r2[b as usize]))
    });

    let tie_pairs = |run: u64| run * (run.saturating_sub(1)) / 2;

    // Pairs tied in r1 and pairs tied in both, from the (r1, r2) sort.
    let mut t1 = 0u64;
    let mut t12 = 0u64;
    let mut run1 = 1u64;
    let mut run12 = 1u64;
    for w in idx.windows(2) {
        let (a, b) = (w[0] as usize, w[1] as usize);
        if r1[a] == r1[b] {
            run1 += 1;
            if r2[a] == r2[b] {
                run12 += 1;
            } else {
                t12 += tie_pairs(run12);
                run12 = 1;
            }
        } else {
            t1 += tie_pairs(run1);
            t12 += tie_pairs(run12);
            run1 = 1;
            run12 = 1;
        }
    }
    t1 += tie_pairs(run1);
    t12 += tie_pairs(run12);

    // Discordant pairs: strict inversions of the r2 sequence ordered by r1
    // (ties in r1 were pre-sorted by r2, so they contribute none).
    let mut seq: Vec<u32> = idx.iter().map(|&i| r2[i as usize]).collect();
    let mut buf = vec![0u32; n];
    let discordant = count_inversions(&mut seq, &mut buf);

    // Pairs tied in r2.
    let mut sorted2 = r2.to_vec();
    sorted2.sort_unstable();
    let mut t2 = 0u64;
    let mut run2 = 1u64;
    for w in sorted2.windows(2) {
        if w[0] == w[1] {
            run2 += 1;
        } else {
            t2 += tie_pairs(run2);
            run2 = 1;
        }
    }
    t2 += tie_pairs(run2);

    let numerator = 2 * discordant + (t1 + t2 - t12);
    Ok(numerator as f64 / (n as u64 * (n as u64 - 1)) as f64)
}

/// Counts pairs `i < j` with `seq[i] > seq[j]` (strict), merge-sort style.
fn count_inversions(seq: &mut [u32], buf: &mut [u32]) -> u64 {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let (left, right) = seq.split_at_mut(mid);
    let mut inv = count_inversions(left, buf) + count_inversions(right, buf);
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < left.len() && j < right.len() {
        if left[i] <= right[j] {
            buf[k] = left[i];
            i += 1;
        } else {
            inv += (left.len() - i) as u64;
            buf[k] = right[j];
            j += 1;
        }
        k += 1;
    }
    while i < left.len() {
        buf[k] = left[i];
        i += 1;
        k += 1;
    }
    while j < right.len() {
        buf[k] = right[j];
        j += 1;
        k += 1;
    }
    seq.copy_from_slice(&buf[..n]);
    inv
}

/// Restricts two rankings to their common entities.
///
/// Each output keeps the relative order (and any ties) of its parent and is
/// re-ranked densely over the intersection, in the entity order of `a`.
pub fn restrict_common(a: &Ranking, b: &Ranking) -> Result<(Ranking, Ranking)> {
    let rank_b: HashMap<&str, u32> = b
        .entities
        .iter()
        .map(String::as_str)
        .zip(b.ranks.iter().copied())
        .collect();
    let mut entities = Vec::new();
    let mut raw_a = Vec::new();
    let mut raw_b = Vec::new();
    for (e, &ka) in a.entities.iter().zip(&a.ranks) {
        if let Some(&kb) = rank_b.get(e.as_str()) {
            entities.push(e.clone());
            raw_a.push(ka);
            raw_b.push(kb);
        }
    }
    if entities.len() < 2 {
        return Err(Error::precondition(format!(
            "rankings {} and {} share only {} entities; need at least 2",
            a.code,
            b.code,
            entities.len()
        )));
    }
    let ra = dense_rerank(&raw_a);
    let rb = dense_rerank(&raw_b);
    Ok((
        Ranking {
            code: a.code.clone(),
            entities: entities.clone(),
            ranks: ra,
        },
        Ranking {
            code: b.code.clone(),
            entities,
            ranks: rb,
        },
    ))
}

/// Maps rank values to dense 1..=k preserving order and ties.
fn dense_rerank(raw: &[u32]) -> Vec<u32> {
    let mut distinct: Vec<u32> = raw.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    raw.iter()
        .map(|v| distinct.binary_search(v).unwrap() as u32 + 1)
        .collect()
}

/// 100x100 log-binned histogram of nodes over the two rank indices.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    /// Row-major counts: `bins[k_bin * 100 + kstar_bin]`.
    bins: Vec<u32>,
    n: usize,
}

/// Cells per axis.
pub const GRID_SIDE: usize = 100;

impl DensityGrid {
    pub fn count(&self, k_bin: usize, kstar_bin: usize) -> u32 {
        self.bins[k_bin * GRID_SIDE + kstar_bin]
    }

    pub fn bins(&self) -> &[u32] {
        &self.bins
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// The 101 shared bin edges over `[0, log10(n)]`.
    pub fn edges(&self) -> Vec<f64> {
        let l = (self.n as f64).log10();
        (0..=GRID_SIDE).map(|i| i as f64 * l / 100.0).collect()
    }

    pub fn total(&self) -> u64 {
        self.bins.iter().map(|&c| c as u64).sum()
    }
}

/// Bins every node by `(log10 K, log10 K*)` into the 100x100 grid over
/// `[0, log10 n]^2`. Cells are half-open except the final one, which is
/// right-closed so rank `n` lands in bin 99.
pub fn density_grid(pr_table: &RankTable, cr_table: &RankTable) -> Result<DensityGrid> {
    let n = pr_table.len();
    if cr_table.len() != n {
        return Err(Error::precondition(format!(
            "rank tables differ in size: {n} vs {}",
            cr_table.len()
        )));
    }
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let l = (n as f64).log10();
    let bin = |rank: u32| -> usize {
        if l <= 0.0 {
            return 0;
        }
        let x = (rank as f64).log10();
        let b = (x / l * GRID_SIDE as f64).floor();
        (b as usize).min(GRID_SIDE - 1)
    };
    let mut bins = vec![0u32; GRID_SIDE * GRID_SIDE];
    for node in 0..n as NodeId {
        let kb = bin(pr_table.rank_of(node));
        let sb = bin(cr_table.rank_of(node));
        bins[kb * GRID_SIDE + sb] += 1;
    }
    Ok(DensityGrid { bins, n })
}

/// First `k` labels of the rank order; unlabeled nodes fall back to their
/// decimal id.
pub fn topk_table(table: &RankTable, labels: &NodeLabelMap, k: usize) -> Result<Vec<String>> {
    if k > table.len() {
        return Err(Error::precondition(format!(
            "k = {k} exceeds the {} ranked nodes",
            table.len()
        )));
    }
    Ok(table.order()[..k]
        .iter()
        .map(|&node| labels.label_or_id(node))
        .collect())
}
