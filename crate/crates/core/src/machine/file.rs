//! Machine-definition files.
//!
//! TOML with four fields: `states` (list of ids), `outcomes` (list of
//! labels), `choices` (list of `{ id, probability }` tables), and `kernel`
//! (list of `{ state, choice, outcome, next, probability }` transitions).
//! Omitted (state, choice, outcome, next) combinations have probability 0.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machine::{EpsilonMachine, KernelEntry};

#[derive(Debug, Serialize, Deserialize)]
struct MachineFile {
    states: Vec<String>,
    outcomes: Vec<String>,
    choices: Vec<ChoiceDef>,
    kernel: Vec<TransitionDef>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ChoiceDef {
    id: String,
    probability: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct TransitionDef {
    state: String,
    choice: String,
    outcome: String,
    next: String,
    probability: f64,
}

impl EpsilonMachine {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let def: MachineFile =
            toml::from_str(text).map_err(|e| Error::MachineFile(e.to_string()))?;
        let state_idx = index_of(&def.states, "state")?;
        let outcome_idx = index_of(&def.outcomes, "outcome")?;
        let choice_ids: Vec<String> = def.choices.iter().map(|c| c.id.clone()).collect();
        let choice_idx = index_of(&choice_ids, "choice")?;
        let choice_dist: Vec<f64> = def.choices.iter().map(|c| c.probability).collect();

        let mut kernel: Vec<Vec<KernelEntry>> =
            vec![Vec::new(); def.states.len() * def.choices.len()];
        for t in &def.kernel {
            let s = *state_idx.get(t.state.as_str()).ok_or_else(|| {
                Error::MachineFile(format!("kernel references unknown state {:?}", t.state))
            })?;
            let c = *choice_idx.get(t.choice.as_str()).ok_or_else(|| {
                Error::MachineFile(format!("kernel references unknown choice {:?}", t.choice))
            })?;
            let o = *outcome_idx.get(t.outcome.as_str()).ok_or_else(|| {
                Error::MachineFile(format!("kernel references unknown outcome {:?}", t.outcome))
            })?;
            let next = *state_idx.get(t.next.as_str()).ok_or_else(|| {
                Error::MachineFile(format!("kernel references unknown state {:?}", t.next))
            })?;
            kernel[s * def.choices.len() + c].push(KernelEntry {
                outcome: o,
                next_state: next,
                probability: t.probability,
            });
        }
        EpsilonMachine::new(def.states, choice_ids, choice_dist, def.outcomes, kernel)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::MachineFile(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        let mut kernel = Vec::new();
        for s in 0..self.state_count() {
            for c in 0..self.choice_count() {
                for e in self.kernel_row(s, c) {
                    kernel.push(TransitionDef {
                        state: self.state_ids()[s].clone(),
                        choice: self.choice_ids()[c].clone(),
                        outcome: self.outcome_labels()[e.outcome].clone(),
                        next: self.state_ids()[e.next_state].clone(),
                        probability: e.probability,
                    });
                }
            }
        }
        let def = MachineFile {
            states: self.state_ids().to_vec(),
            outcomes: self.outcome_labels().to_vec(),
            choices: self
                .choice_ids()
                .iter()
                .zip(self.choice_distribution())
                .map(|(id, &probability)| ChoiceDef { id: id.clone(), probability })
                .collect(),
            kernel,
        };
        toml::to_string(&def).expect("machine definitions serialize without error")
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_toml_string())
            .map_err(|e| Error::MachineFile(format!("{}: {e}", path.display())))
    }
}

fn index_of(ids: &[String], kind: &str) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::with_capacity(ids.len());
    for (i, id) in ids.iter().enumerate() {
        if map.insert(id.clone(), i).is_some() {
            return Err(Error::MachineFile(format!("duplicate {kind} id {id:?}")));
        }
    }
    Ok(map)
}
