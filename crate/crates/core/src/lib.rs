//! Matching statistics over a run-length compressed BWT, with thresholds
//! that carry the LCE values needed to skip most LCE queries while matching.

pub mod bench;
pub mod bits;
pub(crate) mod codec;
pub mod dac;
pub mod encoding;
pub mod error;
pub mod index;
pub mod io;
pub mod lce;
pub mod matcher;
pub mod oracle;
pub mod rlbwt;
pub mod rmq;
pub mod suffix;
pub mod synth;
pub mod text;
pub mod thresholds;

pub use encoding::{LceEncoding, ThresholdLces, Variant};
pub use error::{Error, Result};
pub use index::{BuildContext, IndexBuilder, MsIndex};
pub use lce::{LceBackend, LceBackendKind};
pub use matcher::{
    compute_ms, compute_ms_verified, extract_mems, MatchingStatistics, Mem, Mode, MsCursor, MsEntry,
    QueryStats,
};
pub use rlbwt::Rlbwt;
pub use suffix::SuffixBundle;
pub use text::Text;
pub use thresholds::{LceSide, RawThresholds, ThresholdStorage, ThresholdTable, TieBreak};
