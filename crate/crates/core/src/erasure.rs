//! The erased-information bound for the dyadic measurement family, and
//! Landauer conversions from bits to heat.
//!
//! For family parameter `n`, the post-measurement causal state of the qubit
//! model is distributed over 2^(n+1) dyadic angles with weights
//! cos²(πj/2^(n+1)) / 2^n. The Shannon entropy of that distribution is the
//! average information erased per measurement; it exceeds `n` strictly for
//! every n ≥ 1 because the weights are not uniform. Erasing that many bits
//! costs at least `bits · kT ln 2` of dissipated heat.

use crate::error::{Error, Result};
use crate::prob::{self, ProbabilityVector};
use crate::trig::dyadic_cos2;

/// Boltzmann constant, joules per kelvin (exact SI value).
pub const BOLTZMANN_J_PER_K: f64 = 1.380649e-23;

/// The family parameter `n`: the measurement set has 2^n basis choices and
/// the model 2^(n+1) causal states.
///
/// Capped at 24 so that the 2^(n+1) summands stay exactly enumerable in
/// sub-second time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyIndex(u32);

impl FamilyIndex {
    pub const MAX: u32 = 24;

    pub fn new(n: u32) -> Result<Self> {
        if n > Self::MAX {
            return Err(Error::Domain(format!(
                "family index {n} out of range 0..={}",
                Self::MAX
            )));
        }
        Ok(Self(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// 2^(n+1), the number of causal states / summation terms.
    pub fn state_count(self) -> usize {
        1usize << (self.0 + 1)
    }

    /// 2^n, the number of basis choices.
    pub fn choice_count(self) -> usize {
        1usize << self.0
    }
}

/// An information quantity in bits (Shannon, log base 2). Nonnegative, finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BitQuantity(f64);

impl BitQuantity {
    pub fn new(bits: f64) -> Result<Self> {
        if !bits.is_finite() || bits < 0.0 {
            return Err(Error::Domain(format!("{bits} is not a valid bit count")));
        }
        Ok(Self(bits))
    }

    pub fn bits(self) -> f64 {
        self.0
    }
}

/// A heat quantity in joules at a given bath temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatQuantity {
    joules: f64,
    temperature: f64,
}

impl HeatQuantity {
    pub fn joules(self) -> f64 {
        self.joules
    }

    pub fn temperature_kelvin(self) -> f64 {
        self.temperature
    }
}

/// cos²(πj/2^(n+1)) for j = 0..2^(n+1)−1.
///
/// The weights sum to exactly 2^n in exact arithmetic; the compensated float
/// sum stays within relative 1e-9 of that.
pub fn cos2_weights(n: FamilyIndex) -> Vec<f64> {
    let level = n.get() + 1;
    (0..n.state_count())
        .map(|j| dyadic_cos2(j as i64, level))
        .collect()
}

/// The causal-state distribution p_j = cos²(πj/2^(n+1)) / 2^n.
pub fn causal_state_distribution(n: FamilyIndex) -> ProbabilityVector {
    let scale = n.choice_count() as f64;
    let entries: Vec<f64> = cos2_weights(n).into_iter().map(|c| c / scale).collect();
    ProbabilityVector::new(entries)
        .expect("cos² weights over a full period normalize by construction")
}

/// The information erased per measurement: the entropy of the causal-state
/// distribution. Strictly greater than `n` bits for every n ≥ 1; exactly 0
/// at n = 0, where the distribution is a point mass and the bound degenerates
/// to equality.
pub fn erased_information(n: FamilyIndex) -> BitQuantity {
    BitQuantity(causal_state_distribution(n).entropy_bits())
}

/// Landauer conversion: erasing `bits` at bath temperature `T` dissipates at
/// least `bits · k · T · ln 2` joules.
pub fn landauer_heat(bits: BitQuantity, temperature_kelvin: f64) -> Result<HeatQuantity> {
    check_temperature(temperature_kelvin)?;
    Ok(HeatQuantity {
        joules: bits.bits() * BOLTZMANN_J_PER_K * temperature_kelvin * std::f64::consts::LN_2,
        temperature: temperature_kelvin,
    })
}

/// kT ln 2: the per-measurement ceiling on any erasure bound for a bare qubit
/// treated by its quantum (von Neumann) entropy, whose state space holds at
/// most one bit. A comparison constant for the finite-memory bound, which
/// grows past it linearly in `n`.
pub fn qubit_landauer_ceiling(temperature_kelvin: f64) -> Result<HeatQuantity> {
    landauer_heat(BitQuantity(1.0), temperature_kelvin)
}

fn check_temperature(t: f64) -> Result<()> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("temperature {t} K must be positive")));
    }
    Ok(())
}

/// Compensated sum of the cos² weights, for the normalization check.
pub fn weight_sum(n: FamilyIndex) -> f64 {
    prob::kahan_sum(cos2_weights(n))
}
