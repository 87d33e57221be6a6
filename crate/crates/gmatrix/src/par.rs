//! Deterministic parallel reductions.
//!
//! Results must be bit-identical regardless of the rayon pool size, so every
//! reduction here splits the input into fixed-width chunks, sums each chunk
//! sequentially, and combines the partials in chunk order.

use rayon::prelude::*;

const CHUNK: usize = 16 * 1024;

/// Order-fixed parallel sum.
pub(crate) fn det_sum(xs: &[f64]) -> f64 {
    if xs.len() <= CHUNK {
        return xs.iter().sum();
    }
    let partials: Vec<f64> = xs
        .par_chunks(CHUNK)
        .map(|c| c.iter().sum::<f64>())
        .collect();
    partials.iter().sum()
}

/// Order-fixed parallel L1 distance between two equal-length slices.
pub(crate) fn det_l1_diff(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    if a.len() <= CHUNK {
        return a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum();
    }
    let partials: Vec<f64> = a
        .par_chunks(CHUNK)
        .zip(b.par_chunks(CHUNK))
        .map(|(ca, cb)| ca.iter().zip(cb).map(|(x, y)| (x - y).abs()).sum::<f64>())
        .collect();
    partials.iter().sum()
}

/// Order-fixed parallel sum of `v[i]` over the given indices.
pub(crate) fn det_gather_sum(v: &[f64], ids: &[u32]) -> f64 {
    if ids.len() <= CHUNK {
        return ids.iter().map(|&i| v[i as usize]).sum();
    }
    let partials: Vec<f64> = ids
        .par_chunks(CHUNK)
        .map(|c| c.iter().map(|&i| v[i as usize]).sum::<f64>())
        .collect();
    partials.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunked_sum_matches_sequential() {
        let xs: Vec<f64> = (0..100_000).map(|i| (i as f64).sin()).collect();
        let seq: f64 = xs.iter().sum();
        assert!((det_sum(&xs) - seq).abs() < 1e-9);
    }

    #[test]
    fn chunked_sum_is_pool_size_invariant() {
        let xs: Vec<f64> = (0..70_000).map(|i| 1.0 / (1.0 + i as f64)).collect();
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| det_sum(&xs));
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| det_sum(&xs));
        assert_eq!(one.to_bits(), four.to_bits());
    }
}
