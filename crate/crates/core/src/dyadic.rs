//! The dyadic qubit machine family.
//!
//! States are real-amplitude qubit rays at angles πj/2^m, taken modulo π
//! (a ray at φ and φ+π is the same state). Measurement bases sit at dyadic
//! angles below π/2, with projectors at the basis angle and a quarter turn
//! above it. Outcome probabilities are cos² of angle differences; collapse
//! lands exactly on a lattice angle, so the family of 2^(n+1) states is
//! closed under measurement in any of its 2^n bases.

use crate::erasure::FamilyIndex;
use crate::error::{Error, Result};
use crate::machine::{EpsilonMachine, KernelEntry};
use crate::trig::dyadic_cos2;

/// Largest supported lattice level.
pub const MAX_LEVEL: u32 = 25;
/// Largest family parameter for machine construction: the kernel enumerates
/// 2^(n+1) states × 2^n choices.
pub const MAX_MACHINE_FAMILY: u32 = 12;

/// An angle πj/2^m with 0 ≤ j < 2^m, stored in canonical reduced form so
/// equality and hashing are exact across levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicAngle {
    numer: u64,
    level: u32,
}

impl DyadicAngle {
    pub fn new(numer: u64, level: u32) -> Result<Self> {
        if level == 0 || level > MAX_LEVEL {
            return Err(Error::Domain(format!("level {level} out of range 1..={MAX_LEVEL}")));
        }
        if numer >= (1u64 << level) {
            return Err(Error::Domain(format!(
                "numerator {numer} out of range for level {level}"
            )));
        }
        let mut a = Self { numer, level };
        while a.numer % 2 == 0 && a.level > 1 {
            a.numer /= 2;
            a.level -= 1;
        }
        Ok(a)
    }

    pub fn zero() -> Self {
        Self { numer: 0, level: 1 }
    }

    pub fn numer(self) -> u64 {
        self.numer
    }

    pub fn level(self) -> u32 {
        self.level
    }

    pub fn radians(self) -> f64 {
        std::f64::consts::PI * self.numer as f64 / (1u64 << self.level) as f64
    }

    /// The angle plus a quarter turn, modulo π.
    pub fn quarter_turn(self) -> Self {
        let full = 1u64 << self.level;
        Self::new((self.numer + full / 2) % full, self.level)
            .expect("shift stays on the lattice")
    }

    /// cos² of the angle difference to `other`, via exact integer reduction.
    pub fn cos2_to(self, other: DyadicAngle) -> f64 {
        let level = self.level.max(other.level);
        let a = (self.numer << (level - self.level)) as i64;
        let b = (other.numer << (level - other.level)) as i64;
        dyadic_cos2(a - b, level)
    }
}

/// A measurement basis: projectors at `angle` and `angle + π/2`, with
/// `angle` in [0, π/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisChoice(DyadicAngle);

impl BasisChoice {
    pub fn new(angle: DyadicAngle) -> Result<Self> {
        // angle < π/2 ⟺ 2·numer < 2^level
        if 2 * angle.numer() >= (1u64 << angle.level()) {
            return Err(Error::Domain(format!(
                "basis angle {}π/{} is not below π/2",
                angle.numer(),
                1u64 << angle.level()
            )));
        }
        Ok(Self(angle))
    }

    pub fn angle(self) -> DyadicAngle {
        self.0
    }
}

/// A binary measurement outcome. `Zero` is the projector aligned with the
/// basis angle, `One` the orthogonal one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Zero,
    One,
}

impl Outcome {
    pub fn index(self) -> usize {
        match self {
            Outcome::Zero => 0,
            Outcome::One => 1,
        }
    }
}

/// Born rule: the probability of the outcome aligned with the basis angle,
/// cos²(φ_state − φ_basis). The orthogonal outcome has the complementary
/// probability, and the two are exactly complementary in floating point.
pub fn born(state: DyadicAngle, basis: BasisChoice) -> f64 {
    state.cos2_to(basis.angle())
}

/// Projective update: the post-measurement state is the projector ray the
/// outcome selected.
pub fn collapse(basis: BasisChoice, outcome: Outcome) -> DyadicAngle {
    match outcome {
        Outcome::Zero => basis.angle(),
        Outcome::One => basis.angle().quarter_turn(),
    }
}

/// Builds the family-`n` machine: 2^(n+1) states at angles πj/2^(n+1),
/// 2^n uniformly chosen bases at angles πk/2^(n+1) below π/2, transitions
/// from the Born rule and collapse. Every transition carries its outcome
/// label.
pub fn build_dyadic_machine(n: FamilyIndex) -> Result<EpsilonMachine> {
    let n_val = n.get();
    if n_val < 1 || n_val > MAX_MACHINE_FAMILY {
        return Err(Error::Domain(format!(
            "machine family parameter {n_val} out of range 1..={MAX_MACHINE_FAMILY}"
        )));
    }
    let level = n_val + 1;
    let state_count = n.state_count(); // 2^(n+1)
    let choice_count = n.choice_count(); // 2^n
    let denom = 1u64 << level;

    let states: Vec<String> = (0..state_count).map(|j| format!("{j}/{denom}")).collect();
    let choices: Vec<String> = (0..choice_count).map(|k| format!("{k}/{denom}")).collect();
    let choice_dist = vec![1.0 / choice_count as f64; choice_count];
    let outcomes = vec!["0".to_string(), "1".to_string()];

    let mut kernel = Vec::with_capacity(state_count * choice_count);
    for j in 0..state_count {
        for k in 0..choice_count {
            let p_zero = dyadic_cos2(j as i64 - k as i64, level);
            let p_one = 1.0 - p_zero;
            let mut row = Vec::with_capacity(2);
            if p_zero > 0.0 {
                row.push(KernelEntry {
                    outcome: 0,
                    next_state: k,
                    probability: p_zero,
                });
            }
            if p_one > 0.0 {
                row.push(KernelEntry {
                    outcome: 1,
                    next_state: k + choice_count,
                    probability: p_one,
                });
            }
            kernel.push(row);
        }
    }
    EpsilonMachine::new(states, choices, choice_dist, outcomes, kernel)
}
