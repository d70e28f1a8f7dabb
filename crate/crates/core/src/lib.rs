//! Polar code reliability sequences without stored tables.
//!
//! Multi-length polar encoders and decoders need one reliability vector per
//! supported code length. Instead of storing every vector, this crate
//! generates them on the fly from a small *variable scheme*: byte-sized rows
//! of sequence variables plus per-length init/update rules. The built-in
//! 24-variable scheme covers lengths 8 through 256; user schemes load from a
//! plain-text document.
//!
//! Around that core sit the pieces needed to judge such approximations:
//!
//! - [`construction`]: exact reference constructions (BEC Bhattacharyya,
//!   Gaussian-approximation density evolution, genie-aided Monte Carlo).
//! - [`codec`]: polar transform plus SC and SC list decoding.
//! - [`hw`]: a cycle-level model of the two-engine generator datapath with
//!   its structure/init/update memories.
//! - [`sim`]: a reproducible frame-error-rate harness and curve-gap
//!   measurement.

pub mod codec;
pub mod construction;
pub mod error;
pub mod hw;
pub mod reliability;
pub mod scheme;
pub mod sim;

pub use error::{Error, Result};

pub use construction::{
    bhattacharyya_bec, bit_channel_metrics, ga_awgn, genie_monte_carlo, rank_from_metrics,
    BitChannelMetrics, ChannelModel,
};
pub use hw::{load as hw_load, memory_report, run as hw_run, HwEngine, MemoryReport};
pub use reliability::{select_frozen, CodeSpec, FrozenSet, ReliabilityVector, RoundingMode};
pub use scheme::{Half, ReliabilityByte, Rule, SchemeBuilder, VariableId, VariableScheme};
pub use sim::{
    awgn_transmit, curve_gap_db, fer_run, DecoderKind, FerConfig, FerCurve, FerPoint, GapResult,
    DEFAULT_SEED,
};
