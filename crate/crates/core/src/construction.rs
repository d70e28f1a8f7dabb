//! Exact bit-channel constructions used as references for the approximate
//! sequences: Bhattacharyya parameters on the BEC, a Gaussian-approximation
//! density evolution for BPSK/AWGN, and a genie-aided Monte Carlo probe.
//!
//! All three produce per-index unreliability metrics (larger is worse) that
//! [`rank_from_metrics`] turns into a reliability vector.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::codec;
use crate::error::{Error, Result};
use crate::reliability::ReliabilityVector;
use crate::sim;

/// A reference channel construction.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum ChannelModel {
    /// Binary erasure channel with erasure probability `eps`.
    Bec { eps: f64 },
    /// BPSK over AWGN, analyzed with the Gaussian approximation at the given
    /// design point.
    AwgnGa { ebn0_db: f64, rate: f64 },
    /// BPSK over AWGN, measured with genie-aided decoding.
    AwgnGenie {
        ebn0_db: f64,
        rate: f64,
        frames: u64,
        seed: u64,
    },
}

/// Per-index unreliability metrics for the `n` synthesized bit-channels.
#[derive(Clone, PartialEq, Debug)]
pub struct BitChannelMetrics {
    metrics: Vec<f64>,
}

#[allow(clippy::len_without_is_empty)]
impl BitChannelMetrics {
    pub fn len(&self) -> usize {
        self.metrics.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.metrics
    }

    /// CSV rendering with an `index,metric,rank` header.
    pub fn to_csv(&self) -> String {
        let ranks = rank_from_metrics(self);
        let mut out = String::from("index,metric,rank\n");
        for (i, m) in self.metrics.iter().enumerate() {
            out.push_str(&format!("{i},{m:e},{}\n", ranks[i]));
        }
        out
    }
}

impl std::ops::Index<usize> for BitChannelMetrics {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.metrics[i]
    }
}

/// Dispatches to the construction named by `model`.
pub fn bit_channel_metrics(model: ChannelModel, n: usize) -> Result<BitChannelMetrics> {
    match model {
        ChannelModel::Bec { eps } => bhattacharyya_bec(n, eps),
        ChannelModel::AwgnGa { ebn0_db, rate } => ga_awgn(n, ebn0_db, rate),
        ChannelModel::AwgnGenie {
            ebn0_db,
            rate,
            frames,
            seed,
        } => genie_monte_carlo(n, ebn0_db, rate, frames, seed),
    }
}

/// Bhattacharyya parameters of the `n` bit-channels of a BEC(`eps`).
///
/// Each polarization stage maps a parameter `z` to `2z - z^2` (the degraded
/// minus channel, even offspring) and `z^2` (the upgraded plus channel, odd
/// offspring), so entry `i` follows the binary digits of `i` from the most
/// significant stage down.
pub fn bhattacharyya_bec(n: usize, eps: f64) -> Result<BitChannelMetrics> {
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { len: n });
    }
    if !(0.0..=1.0).contains(&eps) || eps.is_nan() {
        return Err(Error::InvalidErasureProb { eps });
    }
    let mut z = vec![eps];
    while z.len() < n {
        let mut next = Vec::with_capacity(z.len() * 2);
        for zi in z {
            next.push(2.0 * zi - zi * zi);
            next.push(zi * zi);
        }
        z = next;
    }
    Ok(BitChannelMetrics { metrics: z })
}

/// Gaussian-approximation density evolution for BPSK over AWGN.
///
/// Tracks the mean of each bit-channel's LLR, starting from `2/sigma^2` at
/// the design point. A plus stage doubles the mean; a minus stage passes it
/// through the usual phi-function relation `phi(m') = 1 - (1 - phi(m))^2`.
/// The returned metric is the predicted error probability
/// `Q(sqrt(m / 2))` of each synthesized channel.
pub fn ga_awgn(n: usize, ebn0_db: f64, rate: f64) -> Result<BitChannelMetrics> {
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { len: n });
    }
    let sigma2 = sim::noise_sigma2(ebn0_db, rate)?;
    let mut means = vec![2.0 / sigma2];
    while means.len() < n {
        let mut next = Vec::with_capacity(means.len() * 2);
        for m in means {
            next.push(ga_minus(m));
            next.push(2.0 * m);
        }
        means = next;
    }
    let metrics = means.into_iter().map(|m| q_func((m / 2.0).sqrt())).collect();
    Ok(BitChannelMetrics { metrics })
}

/// Gaussian tail probability.
fn q_func(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// Mean of the minus offspring channel: solves
/// `phi(m') = phi(m) * (2 - phi(m))` in the log domain so deep recursions
/// with underflowing phi values stay finite.
fn ga_minus(m: f64) -> f64 {
    if m == 0.0 {
        return 0.0;
    }
    let ln_phi_m = ln_phi(m);
    let phi_m = ln_phi_m.exp();
    ln_phi_inv(ln_phi_m + (2.0 - phi_m).ln())
}

/// Two-segment approximation of ln(phi(x)): a stretched exponential for
/// small means and an asymptotic expansion for large ones. The seam sits
/// where the branches intersect, keeping the function continuous and
/// strictly decreasing.
fn ln_phi(x: f64) -> f64 {
    if x < phi_seam() {
        ln_phi_small(x)
    } else {
        ln_phi_large(x)
    }
}

fn ln_phi_small(x: f64) -> f64 {
    0.0218 - 0.4527 * x.powf(0.86)
}

fn ln_phi_large(x: f64) -> f64 {
    0.5 * (std::f64::consts::PI.ln() - x.ln()) - 0.25 * x + (-10.0 / (7.0 * x)).ln_1p()
}

fn phi_seam() -> f64 {
    static SEAM: OnceLock<f64> = OnceLock::new();
    *SEAM.get_or_init(|| {
        let (mut lo, mut hi) = (10.0f64, 20.0f64);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if ln_phi_small(mid) < ln_phi_large(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    })
}

/// Inverse of [`ln_phi`]. The small-mean branch inverts in closed form; the
/// large-mean branch bisects the monotone asymptotic segment.
fn ln_phi_inv(ln_y: f64) -> f64 {
    let seam = phi_seam();
    if ln_y >= ln_phi_small(seam) {
        return ((0.0218 - ln_y) / 0.4527).powf(1.0 / 0.86);
    }
    let mut lo = seam;
    let mut hi = seam * 2.0;
    while ln_phi_large(hi) > ln_y {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if ln_phi_large(mid) > ln_y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Genie-aided Monte Carlo probe of the `n` bit-channels.
///
/// Each frame encodes a random input vector, passes it through BPSK/AWGN at
/// the design point and runs SC decoding in which every decision is compared
/// against the true bit and then corrected. The metric for index `i` is the
/// fraction of frames whose bit `i` came out wrong given correct priors.
///
/// Frames use independent RNG streams keyed by `(seed, frame index)`, so
/// results are reproducible and independent of how work is parallelized.
pub fn genie_monte_carlo(
    n: usize,
    ebn0_db: f64,
    rate: f64,
    frames: u64,
    seed: u64,
) -> Result<BitChannelMetrics> {
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { len: n });
    }
    if frames == 0 {
        return Err(Error::InvalidConfig("genie probe needs at least one frame".into()));
    }
    sim::noise_sigma2(ebn0_db, rate)?;
    let counts = (0..frames)
        .into_par_iter()
        .fold(
            || vec![0u64; n],
            |mut acc, frame| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(frame);
                let u: Vec<u8> = (0..n).map(|_| rng.gen::<bool>() as u8).collect();
                let x = codec::encode(&u).expect("length checked");
                let llrs = sim::awgn_transmit(&x, ebn0_db, rate, &mut rng).expect("rate checked");
                codec::sc_traverse(&llrs, &mut |i, alpha| {
                    let hard = u8::from(alpha < 0.0);
                    if hard != u[i] {
                        acc[i] += 1;
                    }
                    u[i]
                })
                .expect("length checked");
                acc
            },
        )
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                for (ai, bi) in a.iter_mut().zip(b) {
                    *ai += bi;
                }
                a
            },
        );
    let metrics = counts
        .into_iter()
        .map(|c| c as f64 / frames as f64)
        .collect();
    Ok(BitChannelMetrics { metrics })
}

/// Ranks metrics into a reliability vector: the largest metric gets rank
/// `n-1` (least reliable), the smallest gets 0. Ties resolve with the
/// smaller index taking the larger rank, matching the tendency of later
/// indices to be more reliable.
pub fn rank_from_metrics(metrics: &BitChannelMetrics) -> ReliabilityVector {
    let n = metrics.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| metrics[b].total_cmp(&metrics[a]).then(a.cmp(&b)));
    let mut p = vec![0i64; n];
    for (pos, &i) in order.iter().enumerate() {
        p[i] = (n - 1 - pos) as i64;
    }
    ReliabilityVector::new(p).expect("metrics length is a power of two")
}
