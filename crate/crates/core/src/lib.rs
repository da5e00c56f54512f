//! Thermodynamic accounting for finite-memory models of sequential qubit
//! measurement.
//!
//! The crate has four parts:
//!
//! - [`erasure`]: exact evaluation of the erased-information lower bound
//!   `I(n) > n` for the dyadic measurement family, plus Landauer conversions
//!   from bits to joules.
//! - [`machine`]: finite labeled stochastic machines (ε-machines), their
//!   stationary analysis, statistical complexity, Bayes-reversed kernels,
//!   and the average information erased per step; trajectory sampling and a
//!   bootstrapped Monte Carlo estimator of the same quantity.
//! - [`dyadic`]: the concrete qubit machine family — real-amplitude states
//!   at dyadic angles, Born-rule outcome probabilities, projective collapse —
//!   whose per-step erasure reproduces the analytic bound.
//! - [`szilard`]: the partitioned-box model with an honest work/heat ledger;
//!   its cycle audit shows that treating measurements as thermodynamically
//!   free lets a repeat-until-zero protocol extract net work from a single
//!   bath.
//!
//! All stochastic operations draw from explicitly seeded generators, so every
//! result is reproducible from its inputs.

pub mod dyadic;
pub mod erasure;
pub mod error;
pub mod machine;
pub mod prob;
pub mod szilard;

mod trig;

pub use erasure::{BitQuantity, FamilyIndex, HeatQuantity};
pub use error::Error;
pub use machine::EpsilonMachine;
pub use prob::ProbabilityVector;
pub use szilard::{AccountingPolicy, Partition, SzilardBox, ThermoLedger};

/// Mixes a trial index into a master seed, so fan-out runs get independent
/// but reproducible streams. SplitMix64 finalizer over `master + (index+1)·γ`.
pub fn mix_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add((index.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
