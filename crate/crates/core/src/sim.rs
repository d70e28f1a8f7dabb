//! Frame-error-rate measurement over BPSK/AWGN.
//!
//! Reproducibility: every frame draws from its own RNG stream keyed by
//! `(seed, frame index)`, and frames are scheduled in fixed-size batches, so
//! a run's results do not depend on the number of worker threads. The same
//! seed also reuses identical noise across Eb/N0 points and across codes,
//! which keeps curve gaps low-variance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codec;
use crate::error::{Error, Result};
use crate::reliability::{CodeSpec, FrozenSet};

/// Default RNG seed; spells "polar" in ASCII.
pub const DEFAULT_SEED: u64 = 0x0070_6f6c_6172;

/// Frames per scheduling batch. Stopping conditions are evaluated at batch
/// boundaries to keep runs deterministic under parallelism.
const BATCH_FRAMES: u64 = 1024;

/// Noise variance for BPSK with unit symbol energy at the given Eb/N0.
pub fn noise_sigma2(ebn0_db: f64, rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::InvalidRate { rate });
    }
    if !ebn0_db.is_finite() {
        return Err(Error::InvalidConfig(format!("Eb/N0 {ebn0_db} is not finite")));
    }
    Ok(1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0)))
}

/// Maps codeword bits to BPSK (`0 -> +1`, `1 -> -1`), adds white Gaussian
/// noise for the given design point, and returns channel LLRs `2r/sigma^2`.
pub fn awgn_transmit(
    x: &[u8],
    ebn0_db: f64,
    rate: f64,
    rng: &mut impl Rng,
) -> Result<Vec<f64>> {
    let sigma2 = noise_sigma2(ebn0_db, rate)?;
    let sigma = sigma2.sqrt();
    Ok(x.iter()
        .map(|&bit| {
            let s = 1.0 - 2.0 * f64::from(bit);
            let noise: f64 = rng.sample(StandardNormal);
            2.0 * (s + sigma * noise) / sigma2
        })
        .collect())
}

/// Which decoder a measurement runs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum DecoderKind {
    Sc,
    Scl { list_size: usize },
}

impl std::fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DecoderKind::Sc => write!(f, "sc"),
            DecoderKind::Scl { list_size } => write!(f, "scl{list_size}"),
        }
    }
}

/// A full FER measurement request.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FerConfig {
    pub code: CodeSpec,
    pub frozen: FrozenSet,
    pub decoder: DecoderKind,
    /// Strictly increasing Eb/N0 grid in dB.
    pub ebn0_db_points: Vec<f64>,
    /// Each point stops after this many frame errors...
    pub min_frame_errors: u64,
    /// ...or after this many frames, whichever comes first.
    pub max_frames: u64,
    pub seed: u64,
}

impl FerConfig {
    fn validate(&self) -> Result<()> {
        if self.frozen.n() != self.code.n() {
            return Err(Error::InvalidConfig(format!(
                "frozen set is for length {}, code is {}",
                self.frozen.n(),
                self.code.n()
            )));
        }
        if self.frozen.k() != self.code.k() {
            return Err(Error::InvalidConfig(format!(
                "frozen set leaves k = {}, code wants {}",
                self.frozen.k(),
                self.code.k()
            )));
        }
        if self.ebn0_db_points.is_empty() {
            return Err(Error::InvalidConfig("no Eb/N0 points".into()));
        }
        if !self
            .ebn0_db_points
            .windows(2)
            .all(|w| w[0] < w[1] && w[0].is_finite() && w[1].is_finite())
            || !self.ebn0_db_points[0].is_finite()
        {
            return Err(Error::InvalidConfig(
                "Eb/N0 points must be finite and strictly increasing".into(),
            ));
        }
        if self.min_frame_errors == 0 || self.max_frames == 0 {
            return Err(Error::InvalidConfig(
                "min_frame_errors and max_frames must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// One measured point.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct FerPoint {
    pub ebn0_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub fer: f64,
}

/// A measured curve plus the configuration that produced it.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FerCurve {
    pub fingerprint: String,
    pub config: FerConfig,
    pub points: Vec<FerPoint>,
}

impl FerCurve {
    /// CSV rendering with an `ebn0_db,frames,errors,fer` header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("ebn0_db,frames,errors,fer\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{:e}\n",
                p.ebn0_db, p.frames, p.frame_errors, p.fer
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("curve serializes")
    }
}

/// Measures the configured FER curve. A frame counts as an error when any
/// information bit of the decoded vector differs from what was sent.
pub fn fer_run(config: &FerConfig) -> Result<FerCurve> {
    config.validate()?;
    let fingerprint = fingerprint(config);
    let info = config.frozen.information_indices();
    let mut points = Vec::with_capacity(config.ebn0_db_points.len());
    for &ebn0_db in &config.ebn0_db_points {
        let point = if config.code.k() == 0 {
            // Nothing to err: the decoder pins every position to 0.
            FerPoint {
                ebn0_db,
                frames: config.max_frames,
                frame_errors: 0,
                fer: 0.0,
            }
        } else {
            measure_point(config, &info, ebn0_db)?
        };
        points.push(point);
    }
    Ok(FerCurve {
        fingerprint,
        config: config.clone(),
        points,
    })
}

fn measure_point(config: &FerConfig, info: &[usize], ebn0_db: f64) -> Result<FerPoint> {
    noise_sigma2(ebn0_db, config.code.rate())?;
    let mut frames = 0u64;
    let mut frame_errors = 0u64;
    while frames < config.max_frames && frame_errors < config.min_frame_errors {
        let batch = BATCH_FRAMES.min(config.max_frames - frames);
        frame_errors += (frames..frames + batch)
            .into_par_iter()
            .map(|frame| u64::from(simulate_frame(config, info, ebn0_db, frame)))
            .sum::<u64>();
        frames += batch;
    }
    Ok(FerPoint {
        ebn0_db,
        frames,
        frame_errors,
        fer: frame_errors as f64 / frames as f64,
    })
}

fn simulate_frame(config: &FerConfig, info: &[usize], ebn0_db: f64, frame: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(frame);
    let n = config.code.n();
    let mut u = vec![0u8; n];
    for &i in info {
        u[i] = rng.gen::<bool>() as u8;
    }
    let x = codec::encode(&u).expect("length is a power of two");
    let llrs =
        awgn_transmit(&x, ebn0_db, config.code.rate(), &mut rng).expect("config validated");
    let decoded = match config.decoder {
        DecoderKind::Sc => codec::sc_decode(&llrs, &config.frozen),
        DecoderKind::Scl { list_size } => codec::scl_decode(&llrs, &config.frozen, list_size),
    }
    .expect("config validated");
    info.iter().any(|&i| decoded[i] != u[i])
}

/// FNV-1a hash of the canonical JSON form, rendered as hex.
fn fingerprint(config: &FerConfig) -> String {
    let json = serde_json::to_string(config).expect("config serializes");
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in json.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

/// Outcome of a gap measurement between two curves.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum GapResult {
    /// Eb/N0 the `other` curve needs beyond the `reference` to reach the
    /// target FER; positive means `other` is worse.
    Db(f64),
    /// At least one curve does not bracket the target FER.
    NotMeasurable,
}

/// Eb/N0 distance between two curves at a target FER, interpolating
/// log-linearly between measured points. Returns `other - reference`.
pub fn curve_gap_db(reference: &FerCurve, other: &FerCurve, target_fer: f64) -> GapResult {
    match (crossing(reference, target_fer), crossing(other, target_fer)) {
        (Some(a), Some(b)) => GapResult::Db(b - a),
        _ => GapResult::NotMeasurable,
    }
}

/// First Eb/N0 at which the curve crosses the target, or None when no
/// adjacent pair of positive-FER points brackets it.
fn crossing(curve: &FerCurve, target: f64) -> Option<f64> {
    for w in curve.points.windows(2) {
        let (hi, lo) = (w[0], w[1]);
        if hi.fer >= target && target >= lo.fer && hi.fer > 0.0 && lo.fer > 0.0 {
            if hi.fer == lo.fer {
                return Some(hi.ebn0_db);
            }
            let span = hi.fer.ln() - lo.fer.ln();
            let frac = (hi.fer.ln() - target.ln()) / span;
            return Some(hi.ebn0_db + frac * (lo.ebn0_db - hi.ebn0_db));
        }
    }
    None
}
