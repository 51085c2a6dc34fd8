//! Transmit antenna selection (TAS) for physical-layer network coding over a
//! MISO two-way relay channel.
//!
//! Two users with `N_A` and `N_B` transmit antennas each activate a single
//! antenna and transmit simultaneously to a single-antenna relay (the
//! multiple-access phase). The relay performs ML joint detection of the
//! symbol pair and maps it to a network-coded symbol with a fixed XOR map.
//!
//! The crate provides:
//!
//! * [`constellation`]: PSK alphabets, difference sets and the XOR cluster map.
//! * [`channel`]: Rayleigh fading, AWGN and reproducible random streams.
//! * [`selection`]: max-SNR (TAS1) and max-min cluster distance (TAS2) selection.
//! * [`detector`]: the relay's exhaustive ML joint detector.
//! * [`bounds`]: closed-form SER bounds, asymptotic coefficients and the
//!   rank/eigenvalue machinery behind the TAS2 diversity bound.
//! * [`montecarlo`]: a deterministic, parallel, frame-based SER simulator.

pub mod bounds;
pub mod channel;
pub mod constellation;
pub mod detector;
mod error;
pub mod montecarlo;
pub mod selection;

pub use num_complex::Complex64 as Complex;

pub use channel::{ChannelRealization, NoisePower};
pub use constellation::{Constellation, DifferenceSet, PncMap};
pub use detector::{CandidateTable, DetectionResult};
pub use error::{Error, Result};
pub use montecarlo::{SerEstimate, SimConfig};
pub use selection::{AntennaChoice, ClusterDistance, DifferencePairs, Scheme};
