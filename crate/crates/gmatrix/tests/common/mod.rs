//! Shared dense reference implementations for the integration suites.
//!
//! Everything here recomputes results from first principles (explicit dense
//! matrices, Gaussian elimination, literal pairwise sums) and stays
//! independent of the library's matrix-free code paths.

#![allow(dead_code)] // each test binary uses a subset

use rand::Rng;

/// Row-major dense matrix: `m[i][j]`, column `j` = transition source.
pub type Dense = Vec<Vec<f64>>;

/// Explicit Google matrix of an edge list (duplicates and self-loops
/// normalized away by the 0/1 adjacency).
pub fn dense_google(n: usize, edges: &[(u32, u32)], alpha: f64) -> Dense {
    let mut adj = vec![vec![0.0; n]; n];
    for &(s, d) in edges {
        if s != d {
            adj[d as usize][s as usize] = 1.0;
        }
    }
    let k_out: Vec<f64> = (0..n).map(|j| (0..n).map(|i| adj[i][j]).sum()).collect();
    let teleport = (1.0 - alpha) / n as f64;
    let mut g = vec![vec![0.0; n]; n];
    for j in 0..n {
        for i in 0..n {
            let s = if k_out[j] == 0.0 {
                1.0 / n as f64
            } else {
                adj[i][j] / k_out[j]
            };
            g[i][j] = alpha * s + teleport;
        }
    }
    g
}

pub fn dense_apply(g: &Dense, v: &[f64]) -> Vec<f64> {
    let n = g.len();
    (0..n)
        .map(|i| (0..n).map(|j| g[i][j] * v[j]).sum())
        .collect()
}

pub fn l1_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Steady state by repeated dense multiplication, iterated to machine noise.
pub fn dense_pagerank(g: &Dense) -> Vec<f64> {
    let n = g.len();
    let mut v = vec![1.0 / n as f64; n];
    for _ in 0..5000 {
        let next = dense_apply(g, &v);
        let diff = l1_diff(&next, &v);
        v = next;
        if diff <= 1e-14 {
            break;
        }
    }
    v
}

/// Solves `A X = B` with partial pivoting; `b_columns` holds the columns of
/// `B`, the result holds the columns of `X`.
pub fn gauss_solve(a: &Dense, b_columns: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let m = b_columns.len();
    // Augmented system [A | B].
    let mut work = vec![vec![0.0; n + m]; n];
    for i in 0..n {
        work[i][..n].copy_from_slice(&a[i]);
        for (c, col) in b_columns.iter().enumerate() {
            work[i][n + c] = col[i];
        }
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&p, &q| work[p][col].abs().partial_cmp(&work[q][col].abs()).unwrap())
            .unwrap();
        work.swap(col, pivot);
        let pivot_row = work[col].clone();
        let diag = pivot_row[col];
        assert!(diag.abs() > 1e-300, "singular system in oracle");
        for (row, row_data) in work.iter_mut().enumerate() {
            if row == col {
                continue;
            }
            let factor = row_data[col] / diag;
            if factor != 0.0 {
                for (value, pivot_value) in row_data[col..].iter_mut().zip(&pivot_row[col..]) {
                    *value -= factor * pivot_value;
                }
            }
        }
    }
    (0..m)
        .map(|c| (0..n).map(|i| work[i][n + c] / work[i][i]).collect())
        .collect()
}

/// Leading eigenpair of a nonnegative dense matrix by L1-normalized power
/// iteration.
pub fn dense_leading_eigen(m: &Dense, max_iter: usize) -> (Vec<f64>, f64) {
    let n = m.len();
    let mut v = vec![1.0 / n as f64; n];
    let mut lambda = 0.0;
    for _ in 0..max_iter {
        let next = dense_apply(m, &v);
        lambda = next.iter().sum();
        let scaled: Vec<f64> = next.iter().map(|x| x / lambda).collect();
        let diff = l1_diff(&scaled, &v);
        v = scaled;
        if diff <= 1e-14 {
            break;
        }
    }
    (v, lambda)
}

fn transpose_dense(m: &Dense) -> Dense {
    let rows = m.len();
    let cols = m[0].len();
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j]).collect())
        .collect()
}

/// Dense reference for the reduced pipeline.
pub struct DenseReduced {
    pub g_r: Dense,
    pub g_rr: Dense,
    pub g_pr: Dense,
    pub g_qr: Dense,
    pub lambda_c: f64,
    /// Scatter solve columns `(1 - G_ss)^-1 G_sr e_j` in scatterer
    /// coordinates.
    pub f_columns: Vec<Vec<f64>>,
    /// Scatterer node ids, ascending (the oracle's coordinate order).
    pub scatterers: Vec<u32>,
}

pub fn dense_reduced(n: usize, edges: &[(u32, u32)], alpha: f64, sel: &[u32]) -> DenseReduced {
    let g = dense_google(n, edges, alpha);
    let in_sel = {
        let mut mask = vec![false; n];
        for &id in sel {
            mask[id as usize] = true;
        }
        mask
    };
    let scatterers: Vec<u32> = (0..n as u32).filter(|&i| !in_sel[i as usize]).collect();
    let n_r = sel.len();
    let n_s = scatterers.len();

    let pick = |rows: &[u32], cols: &[u32]| -> Dense {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| g[i as usize][j as usize]).collect())
            .collect()
    };
    let g_rr = pick(sel, sel);
    let g_rs = pick(sel, &scatterers);
    let g_sr = pick(&scatterers, sel);
    let g_ss = pick(&scatterers, &scatterers);

    // (1 - G_ss)^-1 G_sr by direct solve.
    let mut a = vec![vec![0.0; n_s]; n_s];
    for i in 0..n_s {
        for j in 0..n_s {
            a[i][j] = if i == j { 1.0 } else { 0.0 } - g_ss[i][j];
        }
    }
    let b_columns: Vec<Vec<f64>> = (0..n_r)
        .map(|j| (0..n_s).map(|i| g_sr[i][j]).collect())
        .collect();
    let f_columns = gauss_solve(&a, &b_columns);

    let mut g_r = g_rr.clone();
    for (j, x) in f_columns.iter().enumerate() {
        for i in 0..n_r {
            let add: f64 = (0..n_s).map(|s| g_rs[i][s] * x[s]).sum();
            g_r[i][j] += add;
        }
    }

    let (psi_right, lambda_c) = dense_leading_eigen(&g_ss, 500_000);
    let (psi_left, _) = dense_leading_eigen(&transpose_dense(&g_ss), 500_000);
    let overlap: f64 = psi_left.iter().zip(&psi_right).map(|(a, b)| a * b).sum();
    let u: Vec<f64> = (0..n_r)
        .map(|i| (0..n_s).map(|s| g_rs[i][s] * psi_right[s]).sum())
        .collect();
    let w: Vec<f64> = (0..n_r)
        .map(|j| (0..n_s).map(|s| g_sr[s][j] * psi_left[s]).sum())
        .collect();
    let denom = (1.0 - lambda_c) * overlap;
    let g_pr: Dense = (0..n_r)
        .map(|i| (0..n_r).map(|j| u[i] * w[j] / denom).collect())
        .collect();
    let g_qr: Dense = (0..n_r)
        .map(|i| {
            (0..n_r)
                .map(|j| g_r[i][j] - g_rr[i][j] - g_pr[i][j])
                .collect()
        })
        .collect();

    DenseReduced {
        g_r,
        g_rr,
        g_pr,
        g_qr,
        lambda_c,
        f_columns,
        scatterers,
    }
}

/// Literal evaluation of the pairwise-disagreement distance.
pub fn kendall_literal(r1: &[u32], r2: &[u32]) -> f64 {
    let n = r1.len();
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let s1 = (r1[i] as i64 - r1[j] as i64).signum();
            let s2 = (r2[i] as i64 - r2[j] as i64).signum();
            sum += 1.0 - (s1 * s2) as f64;
        }
    }
    sum / (n as f64 * (n as f64 - 1.0))
}

/// Random digraph edge list; a `dangling_frac` share of nodes gets no
/// out-links at all, the rest draw up to `2 * avg_out` targets.
pub fn random_digraph(
    rng: &mut impl Rng,
    n: usize,
    avg_out: f64,
    dangling_frac: f64,
) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    let cap = (2.0 * avg_out).ceil() as usize;
    for s in 0..n {
        if rng.random::<f64>() < dangling_frac {
            continue;
        }
        let deg = rng.random_range(0..=cap);
        for _ in 0..deg {
            edges.push((s as u32, rng.random_range(0..n as u32)));
        }
    }
    edges
}
