//! Polar encoding and successive-cancellation decoding.
//!
//! LLR convention: positive means bit 0 is more likely. The decoder uses the
//! min-sum check-node rule, so list path metrics accumulate `|alpha|`
//! whenever a decision disagrees with the sign of its LLR.

use crate::error::{Error, Result};
use crate::reliability::FrozenSet;

/// In-place butterfly transform; equals multiplication by the n-fold
/// Kronecker power of [[1,0],[1,1]] over GF(2). The transform is its own
/// inverse.
pub fn encode(u: &[u8]) -> Result<Vec<u8>> {
    if !u.len().is_power_of_two() {
        return Err(Error::NotPowerOfTwo { len: u.len() });
    }
    debug_assert!(u.iter().all(|&b| b <= 1));
    let n = u.len();
    let mut x = u.to_vec();
    let mut half = 1;
    while half < n {
        for block in (0..n).step_by(2 * half) {
            for i in 0..half {
                x[block + i] ^= x[block + half + i];
            }
        }
        half *= 2;
    }
    Ok(x)
}

/// Min-sum check-node update.
fn f_min_sum(a: f64, b: f64) -> f64 {
    let m = a.abs().min(b.abs());
    if (a < 0.0) != (b < 0.0) {
        -m
    } else {
        m
    }
}

/// Variable-node update given the left partial sum.
fn g_combine(a: f64, b: f64, left_bit: u8) -> f64 {
    if left_bit == 1 {
        b - a
    } else {
        b + a
    }
}

/// Penalty a path pays for deciding `bit` against LLR `alpha`.
fn metric_penalty(alpha: f64, bit: u8) -> f64 {
    if (alpha < 0.0) != (bit == 1) {
        alpha.abs()
    } else {
        0.0
    }
}

/// Walks the SC schedule over `llrs`, calling `leaf(i, alpha)` for each bit
/// index in decoding order. The closure returns the bit to commit, so the
/// same traversal serves the plain decoder and genie-aided measurement.
/// Returns the re-encoded codeword of the committed bits.
pub fn sc_traverse(llrs: &[f64], leaf: &mut impl FnMut(usize, f64) -> u8) -> Result<Vec<u8>> {
    if !llrs.len().is_power_of_two() {
        return Err(Error::NotPowerOfTwo { len: llrs.len() });
    }
    debug_assert!(llrs.iter().all(|a| a.is_finite()));
    Ok(sc_node(llrs, 0, leaf))
}

fn sc_node(alpha: &[f64], base: usize, leaf: &mut impl FnMut(usize, f64) -> u8) -> Vec<u8> {
    let len = alpha.len();
    if len == 1 {
        return vec![leaf(base, alpha[0])];
    }
    let half = len / 2;
    let left: Vec<f64> = (0..half)
        .map(|i| f_min_sum(alpha[i], alpha[i + half]))
        .collect();
    let beta_l = sc_node(&left, base, leaf);
    let right: Vec<f64> = (0..half)
        .map(|i| g_combine(alpha[i], alpha[i + half], beta_l[i]))
        .collect();
    let beta_r = sc_node(&right, base + half, leaf);
    let mut beta = vec![0u8; len];
    for i in 0..half {
        beta[i] = beta_l[i] ^ beta_r[i];
        beta[i + half] = beta_r[i];
    }
    beta
}

/// Successive-cancellation decoding. Frozen positions decode as 0; at
/// information positions the sign of the LLR decides, with zero resolving
/// to 0. Returns the full estimated input vector.
pub fn sc_decode(llrs: &[f64], frozen: &FrozenSet) -> Result<Vec<u8>> {
    if llrs.len() != frozen.n() {
        return Err(Error::LengthMismatch {
            expected: frozen.n(),
            got: llrs.len(),
        });
    }
    let mask = frozen.mask();
    let mut u = vec![0u8; llrs.len()];
    sc_traverse(llrs, &mut |i, alpha| {
        let bit = if mask[i] || alpha >= 0.0 { 0 } else { 1 };
        u[i] = bit;
        bit
    })?;
    Ok(u)
}

/// One decoding hypothesis inside the list decoder. The alpha stack mirrors
/// the DFS: the top entry is the LLR vector of the node being expanded. The
/// beta stack collects finished subtree partial sums.
#[derive(Clone)]
struct Path {
    alpha: Vec<Vec<f64>>,
    beta: Vec<Vec<u8>>,
    u: Vec<u8>,
    metric: f64,
}

/// Successive-cancellation list decoding with up to `list_size` paths.
///
/// Information bits fork every surviving path; the list is then pruned to
/// the `list_size` best metrics with a stable sort, so ties keep their
/// creation order (parent path first, bit 0 before bit 1). Returns the full
/// input vector of the best final path.
pub fn scl_decode(llrs: &[f64], frozen: &FrozenSet, list_size: usize) -> Result<Vec<u8>> {
    if llrs.len() != frozen.n() {
        return Err(Error::LengthMismatch {
            expected: frozen.n(),
            got: llrs.len(),
        });
    }
    if list_size == 0 {
        return Err(Error::InvalidConfig("list size must be at least 1".into()));
    }
    debug_assert!(llrs.iter().all(|a| a.is_finite()));
    let n = llrs.len();
    let mask = frozen.mask();
    let mut paths = vec![Path {
        alpha: vec![llrs.to_vec()],
        beta: Vec::new(),
        u: Vec::with_capacity(n),
        metric: 0.0,
    }];
    scl_node(n, &mut paths, &mask, list_size);
    // Frozen leaves after the last fork can shuffle metrics without a prune,
    // so pick the minimum explicitly; ties keep the earliest path.
    let best = paths
        .iter()
        .min_by(|a, b| a.metric.total_cmp(&b.metric))
        .unwrap();
    Ok(best.u.clone())
}

fn scl_node(len: usize, paths: &mut Vec<Path>, frozen_mask: &[bool], list_size: usize) {
    if len == 1 {
        scl_leaf(paths, frozen_mask, list_size);
        return;
    }
    let half = len / 2;
    for p in paths.iter_mut() {
        let alpha = p.alpha.last().unwrap();
        let left: Vec<f64> = (0..half)
            .map(|i| f_min_sum(alpha[i], alpha[i + half]))
            .collect();
        p.alpha.push(left);
    }
    scl_node(half, paths, frozen_mask, list_size);
    for p in paths.iter_mut() {
        let beta_l = p.beta.last().unwrap();
        let alpha = &p.alpha[p.alpha.len() - 1];
        let right: Vec<f64> = (0..half)
            .map(|i| g_combine(alpha[i], alpha[i + half], beta_l[i]))
            .collect();
        p.alpha.push(right);
    }
    scl_node(half, paths, frozen_mask, list_size);
    for p in paths.iter_mut() {
        let beta_r = p.beta.pop().unwrap();
        let beta_l = p.beta.pop().unwrap();
        p.alpha.pop();
        let mut beta = vec![0u8; len];
        for i in 0..half {
            beta[i] = beta_l[i] ^ beta_r[i];
            beta[i + half] = beta_r[i];
        }
        p.beta.push(beta);
    }
}

fn scl_leaf(paths: &mut Vec<Path>, frozen_mask: &[bool], list_size: usize) {
    let bit_index = paths[0].u.len();
    if frozen_mask[bit_index] {
        for p in paths.iter_mut() {
            let alpha = p.alpha.pop().unwrap()[0];
            p.metric += metric_penalty(alpha, 0);
            p.u.push(0);
            p.beta.push(vec![0]);
        }
        return;
    }
    // Fork every path, then keep the `list_size` best candidates. Candidate
    // order is (parent index, bit), and the sort below is stable, so metric
    // ties resolve in favor of earlier parents and bit 0.
    let mut candidates: Vec<(usize, u8, f64)> = Vec::with_capacity(paths.len() * 2);
    for (pi, p) in paths.iter().enumerate() {
        let alpha = *p.alpha.last().unwrap().first().unwrap();
        for bit in [0u8, 1] {
            candidates.push((pi, bit, p.metric + metric_penalty(alpha, bit)));
        }
    }
    candidates.sort_by(|a, b| a.2.total_cmp(&b.2));
    candidates.truncate(list_size);

    let old_paths = std::mem::take(paths);
    let mut reusable: Vec<Option<Path>> = old_paths.into_iter().map(Some).collect();
    let mut last_use = vec![0usize; reusable.len()];
    for &(pi, _, _) in &candidates {
        last_use[pi] += 1;
    }
    for (pi, bit, metric) in candidates {
        last_use[pi] -= 1;
        let mut p = if last_use[pi] == 0 {
            reusable[pi].take().unwrap()
        } else {
            reusable[pi].clone().unwrap()
        };
        p.alpha.pop();
        p.metric = metric;
        p.u.push(bit);
        p.beta.push(vec![bit]);
        paths.push(p);
    }
}
