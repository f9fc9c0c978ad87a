//! Diversity gain region of the single-antenna Rayleigh-fading
//! Z-interference channel under Han-Kobayashi rate and power splitting.
//!
//! The crate is `no_std` with `alloc`. Closed forms live in [`closedform`],
//! the outage sets they summarize in [`regions`], and [`oracle`] recomputes
//! every exponent from those sets as an independent check. [`tradeoff`]
//! builds the RX1/RX2 tradeoff curves, [`timeshare`] checks that time
//! sharing does not beat them, and [`finitesnr`] measures outage at finite
//! SNR.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod closedform;
pub mod error;
pub mod finitesnr;
pub mod model;
pub mod oracle;
pub mod regions;
pub mod timeshare;
pub mod tradeoff;

pub use error::{Error, Result};
pub use model::{exponent_weight, plus, DiversityPair, GammaTriple, OperatingPoint, SplitParams};
pub use regions::{MixedParams, Receiver, Scenario, Scheme, TimeShareParams};
