//! Finite labeled stochastic machines over causal states.
//!
//! A machine has a finite state set, a distribution over measurement choices,
//! and a per-(state, choice) kernel giving probabilities over (outcome, next
//! state) pairs. Every transition emits an outcome label: a machine that is
//! silent does not simulate a measurement experiment.
//!
//! The quantities of interest are the entropy of the stationary state
//! distribution (statistical complexity) and the average entropy of the
//! Bayes-reversed kernel (the information about the previous state destroyed
//! by one step).

mod file;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::erasure::BitQuantity;
use crate::error::{Error, Result};
use crate::prob::{self, ProbabilityVector};

/// Tolerance for kernel row sums.
pub const KERNEL_ROW_TOLERANCE: f64 = 1e-12;
/// Residual tolerance for the stationary distribution, ‖πP − π‖₁.
pub const STATIONARY_TOLERANCE: f64 = 1e-12;
/// Iteration cap for the damped power iteration.
pub const STATIONARY_MAX_ITERS: u64 = 1_000_000;

/// One (outcome, next-state) branch of a kernel row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEntry {
    pub outcome: usize,
    pub next_state: usize,
    pub probability: f64,
}

/// A finite labeled stochastic machine. Immutable after construction.
#[derive(Debug, Clone)]
pub struct EpsilonMachine {
    states: Vec<String>,
    choices: Vec<String>,
    choice_dist: Vec<f64>,
    outcomes: Vec<String>,
    // indexed [state * choices.len() + choice]
    kernel: Vec<Vec<KernelEntry>>,
}

impl EpsilonMachine {
    /// Builds and validates a machine. Every (state, choice) row must sum to
    /// 1 within [`KERNEL_ROW_TOLERANCE`]; the choice distribution must be a
    /// probability vector; all index references must be in range.
    pub fn new(
        states: Vec<String>,
        choices: Vec<String>,
        choice_dist: Vec<f64>,
        outcomes: Vec<String>,
        kernel: Vec<Vec<KernelEntry>>,
    ) -> Result<Self> {
        if states.is_empty() || choices.is_empty() || outcomes.is_empty() {
            return Err(Error::Structural(
                "state, choice, and outcome sets must be nonempty".into(),
            ));
        }
        if choice_dist.len() != choices.len() {
            return Err(Error::Structural(format!(
                "{} choice probabilities for {} choices",
                choice_dist.len(),
                choices.len()
            )));
        }
        ProbabilityVector::new(choice_dist.clone()).map_err(|e| {
            Error::Structural(format!("choice distribution invalid: {e}"))
        })?;
        if kernel.len() != states.len() * choices.len() {
            return Err(Error::Structural(format!(
                "kernel has {} rows, expected {}",
                kernel.len(),
                states.len() * choices.len()
            )));
        }
        for (row_idx, row) in kernel.iter().enumerate() {
            let mut total = 0.0;
            for e in row {
                if e.outcome >= outcomes.len() || e.next_state >= states.len() {
                    return Err(Error::Structural(format!(
                        "kernel row {row_idx} references outcome {} / state {} out of range",
                        e.outcome, e.next_state
                    )));
                }
                if !e.probability.is_finite() || !(0.0..=1.0).contains(&e.probability) {
                    return Err(Error::Structural(format!(
                        "kernel row {row_idx} has probability {}",
                        e.probability
                    )));
                }
                total += e.probability;
            }
            if (total - 1.0).abs() > KERNEL_ROW_TOLERANCE {
                let state = row_idx / choices.len();
                let choice = row_idx % choices.len();
                return Err(Error::Structural(format!(
                    "kernel row (state {state}, choice {choice}) sums to {total}"
                )));
            }
        }
        Ok(Self {
            states,
            choices,
            choice_dist,
            outcomes,
            kernel,
        })
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn choice_count(&self) -> usize {
        self.choices.len()
    }

    pub fn state_ids(&self) -> &[String] {
        &self.states
    }

    pub fn choice_ids(&self) -> &[String] {
        &self.choices
    }

    pub fn outcome_labels(&self) -> &[String] {
        &self.outcomes
    }

    pub fn choice_distribution(&self) -> &[f64] {
        &self.choice_dist
    }

    pub fn kernel_row(&self, state: usize, choice: usize) -> &[KernelEntry] {
        &self.kernel[state * self.choices.len() + choice]
    }

    /// The choice-marginalized state chain P(s'|s) = Σ_c P(c) Σ_o k(s,c)(o,s'),
    /// as sparse rows of (next_state, probability).
    pub fn choice_marginal(&self) -> Vec<Vec<(usize, f64)>> {
        let n = self.state_count();
        let mut rows = Vec::with_capacity(n);
        let mut acc = vec![0.0f64; n];
        for s in 0..n {
            for x in acc.iter_mut() {
                *x = 0.0;
            }
            for (c, &pc) in self.choice_dist.iter().enumerate() {
                if pc == 0.0 {
                    continue;
                }
                for e in self.kernel_row(s, c) {
                    acc[e.next_state] += pc * e.probability;
                }
            }
            rows.push(
                acc.iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0.0)
                    .map(|(j, &p)| (j, p))
                    .collect(),
            );
        }
        rows
    }

    /// Stationary distribution of the choice-marginalized chain, by damped
    /// power iteration (damping ½) from the uniform vector. The damping makes
    /// periodic chains converge; the fixed point is unchanged. Fails fast
    /// with a structural error when the chain is reducible.
    pub fn stationary(&self) -> Result<ProbabilityVector> {
        let marginal = self.choice_marginal();
        self.check_irreducible(&marginal)?;
        let n = self.state_count();
        let mut pi = vec![1.0 / n as f64; n];
        let mut next = vec![0.0f64; n];
        for _ in 0..STATIONARY_MAX_ITERS {
            for x in next.iter_mut() {
                *x = 0.0;
            }
            for (i, row) in marginal.iter().enumerate() {
                let w = pi[i];
                for &(j, p) in row {
                    next[j] += w * p;
                }
            }
            let residual: f64 = pi.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
            if residual < STATIONARY_TOLERANCE {
                let total: f64 = next.iter().sum();
                for x in next.iter_mut() {
                    *x /= total;
                }
                return ProbabilityVector::new(next.clone())
                    .map_err(|e| Error::Structural(format!("stationary vector invalid: {e}")));
            }
            for (a, b) in pi.iter_mut().zip(&next) {
                *a = 0.5 * *a + 0.5 * b;
            }
        }
        let residual: f64 = pi.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        Err(Error::Convergence {
            iterations: STATIONARY_MAX_ITERS,
            residual,
        })
    }

    fn check_irreducible(&self, marginal: &[Vec<(usize, f64)>]) -> Result<()> {
        let n = self.state_count();
        let forward: Vec<Vec<usize>> = marginal
            .iter()
            .map(|row| row.iter().map(|&(j, _)| j).collect())
            .collect();
        let mut backward = vec![Vec::new(); n];
        for (i, row) in forward.iter().enumerate() {
            for &j in row {
                backward[j].push(i);
            }
        }
        if reach_count(&forward, 0) != n || reach_count(&backward, 0) != n {
            return Err(Error::Structural(
                "choice-marginalized chain is reducible: not every state reaches every other".into(),
            ));
        }
        Ok(())
    }

    /// H(π): the statistical complexity in bits.
    pub fn statistical_complexity(&self) -> Result<BitQuantity> {
        Ok(BitQuantity::new(self.stationary()?.entropy_bits())
            .expect("entropy of a probability vector is a valid bit count"))
    }

    /// Bayes inversion of the choice-marginalized chain: for each target
    /// state j with positive stationary mass, the distribution of the
    /// predecessor state, P(S_prev = i | S_now = j) = π_i P(i→j) / π_j.
    /// Targets with zero mass are excluded (`None`), not errors.
    pub fn reverse_kernel(&self) -> Result<ReverseKernel> {
        let pi = self.stationary()?;
        let marginal = self.choice_marginal();
        let n = self.state_count();
        let mut flows = vec![vec![0.0f64; n]; n]; // flows[j][i] = π_i P(i→j)
        for (i, row) in marginal.iter().enumerate() {
            for &(j, p) in row {
                flows[j][i] = pi.get(i) * p;
            }
        }
        let mut rows = Vec::with_capacity(n);
        for (j, flow) in flows.into_iter().enumerate() {
            if pi.get(j) <= 0.0 {
                rows.push(None);
                continue;
            }
            // normalize by the realized column sum so each row is a clean
            // probability vector; it differs from π_j by the stationary residual
            let total: f64 = prob::kahan_sum(flow.iter().copied());
            let row: Vec<f64> = flow.into_iter().map(|f| f / total).collect();
            rows.push(Some(ProbabilityVector::new(row).map_err(|e| {
                Error::Structural(format!("reverse row {j} invalid: {e}"))
            })?));
        }
        Ok(ReverseKernel { stationary: pi, rows })
    }

    /// The average information erased per step:
    /// Σ_j π_j · H(S_prev | S_now = j), from the Bayes-reversed kernel.
    pub fn mean_erased_information(&self) -> Result<BitQuantity> {
        let rev = self.reverse_kernel()?;
        let mut total = 0.0;
        for (j, row) in rev.rows.iter().enumerate() {
            if let Some(row) = row {
                total += rev.stationary.get(j) * row.entropy_bits();
            }
        }
        Ok(BitQuantity::new(total).expect("weighted entropies are nonnegative and finite"))
    }

    /// Samples a trajectory: i.i.d. choice draws from the choice
    /// distribution, then an (outcome, next state) draw from the kernel row.
    /// Bit-reproducible for a given (machine, start, length, seed).
    pub fn sample_trajectory(
        &self,
        start: usize,
        length: usize,
        seed: u64,
    ) -> Result<TrajectoryRecord> {
        if start >= self.state_count() {
            return Err(Error::Domain(format!(
                "start state {start} out of range 0..{}",
                self.state_count()
            )));
        }
        if length == 0 {
            return Err(Error::Domain("trajectory length must be ≥ 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut steps = Vec::with_capacity(length);
        let mut state = start;
        for _ in 0..length {
            let choice = sample_index(&self.choice_dist, &mut rng);
            let row = self.kernel_row(state, choice);
            let entry = sample_entry(row, &mut rng);
            steps.push(TrajectoryStep {
                choice,
                outcome: entry.outcome,
                state: entry.next_state,
            });
            state = entry.next_state;
        }
        Ok(TrajectoryRecord { seed, start, steps })
    }

    /// Plug-in estimate of the mean erased information from a sampled
    /// trajectory's transition counts, with a bootstrap standard error
    /// (200 multinomial resamples of the transition pairs).
    ///
    /// States never visited as targets are excluded and counted in the
    /// result; the estimate needs at least 10⁴ steps.
    pub fn empirical_erasure(&self, record: &TrajectoryRecord) -> Result<EmpiricalErasure> {
        const MIN_STEPS: usize = 10_000;
        const BOOTSTRAP_RESAMPLES: usize = 200;
        if record.steps.len() < MIN_STEPS {
            return Err(Error::Domain(format!(
                "need ≥ {MIN_STEPS} steps for an empirical estimate, got {}",
                record.steps.len()
            )));
        }
        let n = self.state_count();
        if record.start >= n || record.steps.iter().any(|s| s.state >= n) {
            return Err(Error::Domain(
                "trajectory references states outside this machine".into(),
            ));
        }
        let mut counts = vec![0u64; n * n]; // counts[i*n + j]: i → j
        let mut prev = record.start;
        for step in &record.steps {
            counts[prev * n + step.state] += 1;
            prev = step.state;
        }
        let total = record.steps.len() as u64;
        let estimate = plug_in_erasure(&counts, n, total);

        // block length 1 is adequate: the choice draws are i.i.d., so the
        // pair process has no long-range dependence worth blocking over
        let mut rng = ChaCha8Rng::seed_from_u64(crate::mix_seed(record.seed, 0xB007));
        let nonzero: Vec<(usize, u64)> = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| (k, c))
            .collect();
        let mut resampled = vec![0u64; n * n];
        let mut replicates = Vec::with_capacity(BOOTSTRAP_RESAMPLES);
        for _ in 0..BOOTSTRAP_RESAMPLES {
            multinomial_resample(&nonzero, total, &mut resampled, &mut rng);
            replicates.push(plug_in_erasure(&resampled, n, total));
        }
        let mean = replicates.iter().sum::<f64>() / replicates.len() as f64;
        let var = replicates.iter().map(|r| (r - mean).powi(2)).sum::<f64>()
            / (replicates.len() - 1) as f64;

        let visited = (0..n)
            .filter(|&j| (0..n).any(|i| counts[i * n + j] > 0))
            .count();
        Ok(EmpiricalErasure {
            estimate: BitQuantity::new(estimate).expect("plug-in entropy is finite"),
            std_error: var.sqrt(),
            excluded_states: n - visited,
            transitions: total,
        })
    }
}

/// Bayes-reversed kernel: per-target predecessor distributions, with the
/// stationary vector they were computed under.
#[derive(Debug, Clone)]
pub struct ReverseKernel {
    stationary: ProbabilityVector,
    rows: Vec<Option<ProbabilityVector>>,
}

impl ReverseKernel {
    pub fn stationary(&self) -> &ProbabilityVector {
        &self.stationary
    }

    /// Predecessor distribution for target state `j`, if it has mass.
    pub fn row(&self, j: usize) -> Option<&ProbabilityVector> {
        self.rows[j].as_ref()
    }
}

/// One sampled step: the drawn choice, the emitted outcome, and the
/// post-measurement state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrajectoryStep {
    pub choice: usize,
    pub outcome: usize,
    pub state: usize,
}

/// A finite realization of the measurement sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryRecord {
    pub seed: u64,
    pub start: usize,
    pub steps: Vec<TrajectoryStep>,
}

/// Monte Carlo estimate of the mean erased information.
#[derive(Debug, Clone, Copy)]
pub struct EmpiricalErasure {
    pub estimate: BitQuantity,
    pub std_error: f64,
    /// States that were never reached as transition targets.
    pub excluded_states: usize,
    pub transitions: u64,
}

fn reach_count(adj: &[Vec<usize>], from: usize) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![from];
    seen[from] = true;
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += 1;
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    count
}

fn sample_index(dist: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut last = 0;
    for (i, &p) in dist.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        acc += p;
        last = i;
        if u < acc {
            return i;
        }
    }
    last
}

fn sample_entry<'a>(row: &'a [KernelEntry], rng: &mut ChaCha8Rng) -> &'a KernelEntry {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut last = &row[0];
    for e in row {
        if e.probability == 0.0 {
            continue;
        }
        acc += e.probability;
        last = e;
        if u < acc {
            return e;
        }
    }
    last
}

fn plug_in_erasure(counts: &[u64], n: usize, total: u64) -> f64 {
    let mut result = 0.0;
    for j in 0..n {
        let col_total: u64 = (0..n).map(|i| counts[i * n + j]).sum();
        if col_total == 0 {
            continue;
        }
        let mut h = 0.0;
        for i in 0..n {
            let c = counts[i * n + j];
            if c > 0 {
                let p = c as f64 / col_total as f64;
                h -= p * p.log2();
            }
        }
        result += (col_total as f64 / total as f64) * h;
    }
    result
}

/// Multinomial draw over the observed nonzero cells, by a chain of
/// conditional binomials.
fn multinomial_resample(
    cells: &[(usize, u64)],
    total: u64,
    out: &mut [u64],
    rng: &mut ChaCha8Rng,
) {
    use rand_distr::{Binomial, Distribution};
    for x in out.iter_mut() {
        *x = 0;
    }
    let mut remaining_n = total;
    let mut remaining_w = total as f64;
    for &(k, w) in cells {
        if remaining_n == 0 {
            break;
        }
        let p = (w as f64 / remaining_w).clamp(0.0, 1.0);
        let draw = if p >= 1.0 {
            remaining_n
        } else {
            Binomial::new(remaining_n, p)
                .expect("clamped probability is valid")
                .sample(rng)
        };
        out[k] = draw;
        remaining_n -= draw;
        remaining_w -= w as f64;
    }
}
