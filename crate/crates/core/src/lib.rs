//! Erasure-channel decoding and analysis for LDPC and fixed-rate Raptor codes.
//!
//! * [`binmat`]: dense and sparse GF(2) matrices.
//! * [`ldpc`]: parity-check codes, ensemble sampling and puncturing.
//! * [`erasure_decode`]: peeling, maximum likelihood and hybrid decoders.
//! * [`raptor`]: fixed-rate systematic Raptor codes.
//! * [`analysis`]: density evolution, EXIT area bounds and CER bounds.
//! * [`sim`]: Monte Carlo CER estimation.

pub mod analysis;
pub mod binmat;
pub mod erasure_decode;
pub mod error;
pub mod ldpc;
pub mod raptor;
pub mod sim;

pub use analysis::{DegreeDistribution, ThresholdReport, WeightSpectrumTail};
pub use binmat::{dense_gauss_solve, BinVector, DenseBinMatrix, SolveOutcome, SparseBinMatrix};
pub use erasure_decode::{DecodeResult, DecodeStats, DecodeStatus, ReceivedWord};
pub use error::{Error, Result};
pub use ldpc::{GeiraSpec, LdpcCode, Protograph, Rate};
pub use raptor::{RaptorCode, RaptorOutcome, RaptorParams};
pub use sim::{ChannelKind, ChannelModel, DecoderKind, SimPlan, SimRecord, StopRule};
