//! The partitioned-box model and its thermodynamic ledger.
//!
//! A single particle lives in a box cut into four cells by two removable
//! partitions. The computational partition separates cells {0,1} from {2,3};
//! the phase partition separates {0,2} from {1,3}. Cell `c` has computational
//! coordinate `c >> 1` and phase coordinate `c & 1`.
//!
//! "Measuring" means shuffling partitions and reading which side of one of
//! them holds the particle. Partition moves and free equilibration are
//! cost-free; all thermodynamic cost enters through isothermal volume changes
//! (kT·ln of the volume ratio) and through the erasure of measurement
//! records (kT·ln 2 per bit — or nothing, under the accounting policy the
//! audit is designed to expose). Work and heat are kept in kT units
//! throughout.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::prob;

/// Iteration cap for the repeat-until-zero audit loop.
pub const AUDIT_LOOP_CAP: u64 = 10_000;

/// One of the two removable partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Partition {
    Computational,
    Phase,
}

impl Partition {
    pub fn other(self) -> Self {
        match self {
            Partition::Computational => Partition::Phase,
            Partition::Phase => Partition::Computational,
        }
    }

    fn side_of(self, cell: usize) -> u8 {
        match self {
            Partition::Computational => (cell >> 1) as u8,
            Partition::Phase => (cell & 1) as u8,
        }
    }
}

/// How a partition goes back in: fast against the free motion of the
/// particle, or after the position has relaxed to uniform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertSpeed {
    Rapid,
    AfterEquilibration,
}

/// Who pays for measurement records.
///
/// `LandauerHonest` charges kT·ln 2 of work (dissipated as heat) for each
/// record bit erased. `PtFreeMeasurement` treats records as cost-free — the
/// claim under audit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AccountingPolicy {
    LandauerHonest,
    PtFreeMeasurement,
}

/// Which partitions are currently inserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Partitions {
    pub computational: bool,
    pub phase: bool,
}

impl Partitions {
    pub fn both() -> Self {
        Self { computational: true, phase: true }
    }

    pub fn none() -> Self {
        Self::default()
    }

    pub fn only(p: Partition) -> Self {
        let mut s = Self::none();
        s.set(p, true);
        s
    }

    pub fn contains(self, p: Partition) -> bool {
        match p {
            Partition::Computational => self.computational,
            Partition::Phase => self.phase,
        }
    }

    fn set(&mut self, p: Partition, value: bool) {
        match p {
            Partition::Computational => self.computational = value,
            Partition::Phase => self.phase = value,
        }
    }

    fn count(self) -> usize {
        usize::from(self.computational) + usize::from(self.phase)
    }

    /// Cells connected to `cell` under the current walls.
    fn region(self, cell: usize) -> Vec<usize> {
        (0..4)
            .filter(|&c| {
                (!self.computational
                    || Partition::Computational.side_of(c) == Partition::Computational.side_of(cell))
                    && (!self.phase || Partition::Phase.side_of(c) == Partition::Phase.side_of(cell))
            })
            .collect()
    }
}

/// One ledger line. Work and heat are in kT units; heat is never negative
/// (extraction steps absorb heat from the bath, which is not a dissipation
/// entry).
#[derive(Debug, Clone, Serialize)]
pub struct LedgerEntry {
    pub op: String,
    pub work_on_system: f64,
    pub work_extracted: f64,
    pub heat_dissipated: f64,
    pub record_bits_created: u64,
    pub record_bits_erased: u64,
}

/// Append-only work/heat/record log.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ThermoLedger {
    entries: Vec<LedgerEntry>,
}

impl ThermoLedger {
    fn push(&mut self, entry: LedgerEntry) {
        assert!(entry.heat_dissipated >= 0.0, "heat entries must be nonnegative");
        assert!(entry.work_on_system >= 0.0 && entry.work_extracted >= 0.0);
        self.entries.push(entry);
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn work_on_system(&self) -> f64 {
        self.entries.iter().map(|e| e.work_on_system).sum()
    }

    pub fn work_extracted(&self) -> f64 {
        self.entries.iter().map(|e| e.work_extracted).sum()
    }

    pub fn heat_dissipated(&self) -> f64 {
        self.entries.iter().map(|e| e.heat_dissipated).sum()
    }

    pub fn record_bits_created(&self) -> u64 {
        self.entries.iter().map(|e| e.record_bits_created).sum()
    }

    pub fn record_bits_erased(&self) -> u64 {
        self.entries.iter().map(|e| e.record_bits_erased).sum()
    }

    pub fn outstanding_records(&self) -> u64 {
        self.record_bits_created() - self.record_bits_erased()
    }

    pub fn net_work_extracted(&self) -> f64 {
        self.work_extracted() - self.work_on_system()
    }
}

/// The box: actual particle cell, an observer's distribution over cells, the
/// inserted partitions, a seeded generator, and the running ledger.
#[derive(Debug, Clone)]
pub struct SzilardBox {
    ontic: usize,
    epistemic: [f64; 4],
    inserted: Partitions,
    rand_probs: [f64; 3],
    rng: ChaCha8Rng,
    ledger: ThermoLedger,
}

/// Default RAND output distribution over the support cells (0,0), (1,0),
/// (1,1): sequential coordinate equilibration — the computational coordinate
/// randomizes first, and the phase coordinate randomizes only on the moved
/// branch.
pub const DEFAULT_RAND_PROBS: [f64; 3] = [0.5, 0.25, 0.25];

/// RAND support: cells (x,y) = (0,0), (1,0), (1,1). The fourth cell (0,1) is
/// never produced.
pub const RAND_SUPPORT: [usize; 3] = [0, 2, 3];

impl SzilardBox {
    /// A box with the given walls, the particle equilibrated: uniform
    /// epistemic state, ontic cell sampled from it.
    pub fn equilibrated(inserted: Partitions, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ontic = rng.gen_range(0..4);
        Self {
            ontic,
            epistemic: [0.25; 4],
            inserted,
            rand_probs: DEFAULT_RAND_PROBS,
            rng,
            ledger: ThermoLedger::default(),
        }
    }

    /// A box with the particle known to be in `cell`.
    pub fn at_cell(cell: usize, inserted: Partitions, seed: u64) -> Result<Self> {
        if cell >= 4 {
            return Err(Error::Domain(format!("cell {cell} out of range 0..4")));
        }
        let mut epistemic = [0.0; 4];
        epistemic[cell] = 1.0;
        Ok(Self {
            ontic: cell,
            epistemic,
            inserted,
            rand_probs: DEFAULT_RAND_PROBS,
            rng: ChaCha8Rng::seed_from_u64(seed),
            ledger: ThermoLedger::default(),
        })
    }

    /// Overrides the RAND output distribution over [`RAND_SUPPORT`].
    pub fn set_rand_probabilities(&mut self, probs: [f64; 3]) -> Result<()> {
        let total = probs.iter().sum::<f64>();
        if probs.iter().any(|&p| !p.is_finite() || p < 0.0) || (total - 1.0).abs() > 1e-10 {
            return Err(Error::Domain(format!("invalid RAND distribution {probs:?}")));
        }
        self.rand_probs = probs;
        Ok(())
    }

    pub fn ontic_cell(&self) -> usize {
        self.ontic
    }

    pub fn epistemic(&self) -> &[f64; 4] {
        &self.epistemic
    }

    pub fn inserted(&self) -> Partitions {
        self.inserted
    }

    pub fn ledger(&self) -> &ThermoLedger {
        &self.ledger
    }

    /// Entropy of the epistemic distribution, bits.
    pub fn epistemic_entropy_bits(&self) -> f64 {
        prob::entropy_bits(&self.epistemic)
    }

    /// Pulls a partition out. Cost-free; the position distribution does not
    /// change until the particle has had time to move (`equilibrate`).
    pub fn remove_partition(&mut self, which: Partition) -> Result<()> {
        if !self.inserted.contains(which) {
            return Err(Error::State(format!("{which:?} partition is not inserted")));
        }
        self.inserted.set(which, false);
        Ok(())
    }

    /// Puts a partition back. `Rapid` freezes the current occupancy (the
    /// particle has no time to cross); `AfterEquilibration` lets the position
    /// relax first, so each side ends up with mass proportional to its
    /// volume. Cost-free either way.
    pub fn insert_partition(&mut self, which: Partition, speed: InsertSpeed) -> Result<()> {
        if self.inserted.contains(which) {
            return Err(Error::State(format!("{which:?} partition is already inserted")));
        }
        if speed == InsertSpeed::AfterEquilibration {
            self.equilibrate();
        }
        self.inserted.set(which, true);
        Ok(())
    }

    /// Lets the particle position relax: uniform over the region the particle
    /// can reach, with the actual cell resampled within it. Cost-free.
    pub fn equilibrate(&mut self) {
        let region = self.inserted.region(self.ontic);
        let share = 1.0 / region.len() as f64;
        self.epistemic = [0.0; 4];
        for &c in &region {
            self.epistemic[c] = share;
        }
        self.ontic = region[self.rng.gen_range(0..region.len())];
    }

    /// Reads which side of an inserted partition holds the particle. Creates
    /// one record bit; the observer's distribution is conditioned on the
    /// answer. The eventual cost of the record depends on the accounting
    /// policy at erasure time.
    pub fn read_side(&mut self, which: Partition, policy: AccountingPolicy) -> Result<u8> {
        if !self.inserted.contains(which) {
            return Err(Error::State(format!(
                "cannot read {which:?}: partition is not inserted"
            )));
        }
        let side = which.side_of(self.ontic);
        let mut kept = 0.0;
        for c in 0..4 {
            if which.side_of(c) != side {
                self.epistemic[c] = 0.0;
            } else {
                kept += self.epistemic[c];
            }
        }
        debug_assert!(kept > 0.0, "ontic cell must carry epistemic mass");
        for p in self.epistemic.iter_mut() {
            *p /= kept;
        }
        self.ledger.push(LedgerEntry {
            op: format!("read_side:{which:?}:{policy:?}"),
            work_on_system: 0.0,
            work_extracted: 0.0,
            heat_dissipated: 0.0,
            record_bits_created: 1,
            record_bits_erased: 0,
        });
        Ok(side)
    }

    /// One measurement in the one-partition-at-a-time model: remove the
    /// partition that is in, rapidly insert the queried one, read the side,
    /// then let the position relax within the accessible region. Requires
    /// exactly one partition inserted; ends with `which` inserted.
    pub fn pt_measurement(&mut self, which: Partition, policy: AccountingPolicy) -> Result<u8> {
        if self.inserted.count() != 1 {
            return Err(Error::State(format!(
                "measurement needs exactly one partition inserted, found {}",
                self.inserted.count()
            )));
        }
        let existing = if self.inserted.computational {
            Partition::Computational
        } else {
            Partition::Phase
        };
        self.remove_partition(existing)?;
        self.insert_partition(which, InsertSpeed::Rapid)?;
        let side = self.read_side(which, policy)?;
        self.equilibrate();
        Ok(side)
    }

    /// One measurement in the both-partitions model: remove one partition,
    /// read the side of the remaining one, let the position relax, re-insert
    /// the removed partition. Requires both inserted; both are inserted at
    /// exit.
    pub fn ontic_measurement(
        &mut self,
        which_to_remove: Partition,
        policy: AccountingPolicy,
    ) -> Result<u8> {
        if self.inserted.count() != 2 {
            return Err(Error::State("both partitions must be inserted".into()));
        }
        self.remove_partition(which_to_remove)?;
        let side = self.read_side(which_to_remove.other(), policy)?;
        self.equilibrate();
        self.insert_partition(which_to_remove, InsertSpeed::Rapid)?;
        Ok(side)
    }

    /// The RAND map: from cell (0,0) with both partitions in, the state is
    /// randomized over the three cells (0,0), (1,0), (1,1) — never (0,1).
    /// Logically irreversible, but carries no ledger cost: nothing is reset
    /// to a standard state. The output distribution is configurable; the
    /// default comes from sequential coordinate equilibration.
    pub fn rand_op(&mut self) -> Result<()> {
        if self.ontic != 0 || self.inserted.count() != 2 {
            return Err(Error::State(
                "RAND is defined on cell (0,0) with both partitions inserted".into(),
            ));
        }
        let u: f64 = self.rng.gen();
        let idx = if u < self.rand_probs[0] {
            0
        } else if u < self.rand_probs[0] + self.rand_probs[1] {
            1
        } else {
            2
        };
        self.ontic = RAND_SUPPORT[idx];
        self.epistemic = [0.0; 4];
        for (k, &cell) in RAND_SUPPORT.iter().enumerate() {
            self.epistemic[cell] = self.rand_probs[k];
        }
        Ok(())
    }

    /// Deterministic reset to the computational-0 side: remove the
    /// computational partition, compress each accessible region along the
    /// computational direction to half its size with pistons, re-insert the
    /// partition, return the pistons. Ends with everything on side 0.
    ///
    /// Isothermal compression of the one-particle gas from V to V/2 takes
    /// ln 2 kT of work, all dissipated into the bath, regardless of where the
    /// particle was — so a second reset costs the same again. The phase
    /// partition, when inserted, stays in place: the pistons sweep each phase
    /// region separately.
    pub fn reset(&mut self, policy: AccountingPolicy) {
        let had_comp = self.inserted.computational;
        if had_comp {
            self.inserted.set(Partition::Computational, false);
        }
        // piston sweep: cell (1,y) → (0,y)
        self.epistemic = [
            self.epistemic[0] + self.epistemic[2],
            self.epistemic[1] + self.epistemic[3],
            0.0,
            0.0,
        ];
        if self.ontic >= 2 {
            self.ontic -= 2;
        }
        self.inserted.set(Partition::Computational, true);
        self.ledger.push(LedgerEntry {
            op: format!("reset:{policy:?}"),
            work_on_system: LN_2,
            work_extracted: 0.0,
            heat_dissipated: LN_2,
            record_bits_created: 0,
            record_bits_erased: 0,
        });
    }

    /// The reset run backwards: with the particle known to be on the
    /// computational-0 side, replace the partition by a piston and let the
    /// gas expand isothermally to the full box, extracting ln 2 kT of work
    /// (drawn from the bath). Requires the epistemic state to be confined to
    /// side 0; ends with the partition back in and the side unknown.
    pub fn reversed_reset(&mut self, policy: AccountingPolicy) -> Result<()> {
        if !self.inserted.computational {
            return Err(Error::State(
                "reversed reset needs the computational partition inserted".into(),
            ));
        }
        let side1_mass = self.epistemic[2] + self.epistemic[3];
        if side1_mass > 1e-12 {
            return Err(Error::State(format!(
                "reversed reset needs the state confined to side 0 (side-1 mass {side1_mass:.3e})"
            )));
        }
        self.inserted.set(Partition::Computational, false);
        self.epistemic = [
            self.epistemic[0] / 2.0,
            self.epistemic[1] / 2.0,
            self.epistemic[0] / 2.0,
            self.epistemic[1] / 2.0,
        ];
        if self.rng.gen::<bool>() {
            self.ontic += 2;
        }
        self.inserted.set(Partition::Computational, true);
        self.ledger.push(LedgerEntry {
            op: format!("reversed_reset:{policy:?}"),
            work_on_system: 0.0,
            work_extracted: LN_2,
            heat_dissipated: 0.0,
            record_bits_created: 0,
            record_bits_erased: 0,
        });
        Ok(())
    }

    /// Erases all outstanding measurement records. Under honest accounting
    /// each bit takes ln 2 kT of work, dissipated as heat; under the
    /// free-measurement claim the books show nothing.
    pub fn erase_records(&mut self, policy: AccountingPolicy) {
        let outstanding = self.ledger.outstanding_records();
        if outstanding == 0 {
            return;
        }
        let charge = match policy {
            AccountingPolicy::LandauerHonest => outstanding as f64 * LN_2,
            AccountingPolicy::PtFreeMeasurement => 0.0,
        };
        self.ledger.push(LedgerEntry {
            op: format!("erase_records:{policy:?}"),
            work_on_system: charge,
            work_extracted: 0.0,
            heat_dissipated: charge,
            record_bits_created: 0,
            record_bits_erased: outstanding,
        });
    }
}

/// Outcome of one full audit cycle.
#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub policy: AccountingPolicy,
    pub seed: u64,
    /// Computational-basis measurements until the first 0 outcome.
    pub loop_iterations: u64,
    /// All measurements performed (computational and phase).
    pub measurements: u64,
    pub work_on_kt: f64,
    pub work_extracted_kt: f64,
    pub heat_dissipated_kt: f64,
    pub record_bits_created: u64,
    pub record_bits_erased: u64,
    pub net_work_extracted_kt: f64,
    /// Raised when the cycle extracted net positive work from a single bath.
    pub violation_flag: bool,
    pub ledger: ThermoLedger,
}

/// Runs the repeat-until-zero protocol and closes the cycle:
/// measure the computational side; stop on 0, otherwise measure the phase
/// side and repeat. Once the state reads 0, run the reset backwards to
/// extract ln 2 kT, then erase every record the loop wrote.
///
/// Under honest accounting the erasure charge cancels the extraction (net
/// ≤ 0, with equality only for a one-measurement loop). Under free
/// measurements the cycle nets +ln 2 kT per pass and the violation flag is
/// raised.
pub fn perpetuum_audit(seed: u64, policy: AccountingPolicy) -> Result<AuditReport> {
    let mut b = SzilardBox::equilibrated(Partitions::only(Partition::Computational), seed);
    let mut loop_iterations = 0u64;
    let mut measurements = 0u64;
    loop {
        loop_iterations += 1;
        if loop_iterations > AUDIT_LOOP_CAP {
            return Err(Error::NonTermination { cap: AUDIT_LOOP_CAP });
        }
        let outcome = b.pt_measurement(Partition::Computational, policy)?;
        measurements += 1;
        if outcome == 0 {
            break;
        }
        b.pt_measurement(Partition::Phase, policy)?;
        measurements += 1;
    }
    b.reversed_reset(policy)?;
    b.erase_records(policy);
    let ledger = b.ledger;
    let net = ledger.net_work_extracted();
    Ok(AuditReport {
        policy,
        seed,
        loop_iterations,
        measurements,
        work_on_kt: ledger.work_on_system(),
        work_extracted_kt: ledger.work_extracted(),
        heat_dissipated_kt: ledger.heat_dissipated(),
        record_bits_created: ledger.record_bits_created(),
        record_bits_erased: ledger.record_bits_erased(),
        net_work_extracted_kt: net,
        violation_flag: net > 0.0,
        ledger,
    })
}
