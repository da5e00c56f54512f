//! Finite probability vectors and entropy.

use crate::error::{Error, Result};

/// A finite nonnegative vector summing to 1 within [`ProbabilityVector::SUM_TOLERANCE`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub const SUM_TOLERANCE: f64 = 1e-10;

    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Domain("probability vector must be nonempty".into()));
        }
        for (i, &p) in entries.iter().enumerate() {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::Domain(format!("entry {i} is {p}, not a probability")));
            }
        }
        let total = kahan_sum(entries.iter().copied());
        if (total - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::Domain(format!(
                "entries sum to {total}, off from 1 by {:.3e}",
                (total - 1.0).abs()
            )));
        }
        Ok(Self(entries))
    }

    pub fn uniform(len: usize) -> Self {
        Self(vec![1.0 / len as f64; len])
    }

    pub fn point(len: usize, index: usize) -> Self {
        let mut v = vec![0.0; len];
        v[index] = 1.0;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn get(&self, index: usize) -> f64 {
        self.0[index]
    }

    /// Shannon entropy in bits, with the 0·log 0 = 0 convention.
    pub fn entropy_bits(&self) -> f64 {
        entropy_bits(&self.0)
    }
}

/// −Σ p log₂ p over the slice, skipping zero entries; compensated accumulation.
pub fn entropy_bits(p: &[f64]) -> f64 {
    kahan_sum(p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()))
}

/// Kahan compensated summation.
pub fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}
