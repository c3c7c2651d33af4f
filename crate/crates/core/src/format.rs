//! JSON instance documents.
//!
//! ```json
//! {
//!   "agents":    [{"id": "f1", "side": "firm"}, {"id": "w1", "side": "worker"}],
//!   "contracts": [{"id": "e11", "firm": "f1", "worker": "w1"}],
//!   "choices": {
//!     "f1": {"family": "linear", "payload": ["e11"]},
//!     "w1": {"family": "quota",  "payload": {"q": 1, "priority": ["e11"]}}
//!   }
//! }
//! ```
//!
//! Table payloads list `{"menu": [...], "choice": [...]}` rows covering every
//! subset of the agent's contracts. Agents without contracts may omit their
//! choice entry.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::choice::{ChoiceFunction, Family};
use crate::error::{Error, Result};
use crate::instance::{Agent, AgentId, Contract, Instance, Side};
use crate::set::{ContractId, ContractSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub agents: Vec<AgentEntry>,
    pub contracts: Vec<ContractEntry>,
    #[serde(default)]
    pub choices: BTreeMap<String, ChoiceEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentEntry {
    pub id: String,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContractEntry {
    pub id: String,
    pub firm: String,
    pub worker: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "payload", rename_all = "lowercase")]
pub enum ChoiceEntry {
    Linear(Vec<String>),
    Quota { q: usize, priority: Vec<String> },
    Table(Vec<TableRow>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    pub menu: Vec<String>,
    pub choice: Vec<String>,
}

const FAMILIES: [&str; 3] = ["linear", "quota", "table"];

/// Reads and validates an instance file.
pub fn parse_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    parse_str(&text)
}

pub fn parse_str(text: &str) -> Result<Instance> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    // Surface an unknown family as its own error instead of a serde message.
    if let Some(choices) = value.get("choices").and_then(|c| c.as_object()) {
        for entry in choices.values() {
            if let Some(fam) = entry.get("family").and_then(|f| f.as_str()) {
                if !FAMILIES.contains(&fam) {
                    return Err(Error::UnknownFamily(fam.to_owned()));
                }
            }
        }
    }
    let doc: InstanceDocument =
        serde_json::from_value(value).map_err(|e| Error::Malformed(e.to_string()))?;
    doc.build()
}

impl InstanceDocument {
    pub fn build(&self) -> Result<Instance> {
        let agents: Vec<Agent> = self
            .agents
            .iter()
            .map(|a| Agent {
                name: a.id.clone(),
                side: a.side,
            })
            .collect();
        let agent_id = |name: &str| {
            agents
                .iter()
                .position(|a| a.name == name)
                .map(AgentId)
                .ok_or_else(|| Error::UnknownAgent(name.to_owned()))
        };
        let contracts = self
            .contracts
            .iter()
            .enumerate()
            .map(|(i, c)| {
                Ok(Contract {
                    id: ContractId(i),
                    name: c.id.clone(),
                    firm: agent_id(&c.firm)?,
                    worker: agent_id(&c.worker)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for name in self.choices.keys() {
            agent_id(name)?;
        }
        let contract_id = |name: &String| {
            self.contracts
                .iter()
                .position(|c| &c.id == name)
                .map(ContractId)
                .ok_or_else(|| Error::UnknownContract(name.clone()))
        };
        let set_of =
            |names: &[String]| -> Result<ContractSet> { names.iter().map(contract_id).collect() };

        let mut choices = Vec::with_capacity(agents.len());
        for (v, agent) in agents.iter().enumerate() {
            let adjacent: ContractSet = contracts
                .iter()
                .filter(|c| c.firm.0 == v || c.worker.0 == v)
                .map(|c| c.id)
                .collect();
            let choice = match self.choices.get(&agent.name) {
                None if adjacent.is_empty() => ChoiceFunction::trivial(),
                None => return Err(Error::MissingChoice(agent.name.clone())),
                Some(ChoiceEntry::Linear(order)) => {
                    ChoiceFunction::linear(order.iter().map(contract_id).collect::<Result<_>>()?)?
                }
                Some(ChoiceEntry::Quota { q, priority }) => ChoiceFunction::quota(
                    *q,
                    priority.iter().map(contract_id).collect::<Result<_>>()?,
                )?,
                Some(ChoiceEntry::Table(rows)) => {
                    let rows = rows
                        .iter()
                        .map(|r| Ok((set_of(&r.menu)?, set_of(&r.choice)?)))
                        .collect::<Result<Vec<_>>>()?;
                    // Plott axioms are checked by `Instance::new`, which names the agent.
                    ChoiceFunction::table_from_entries_unchecked(adjacent, rows)?
                }
            };
            choices.push(choice);
        }
        Instance::new(agents, contracts, choices)
    }

    pub fn from_instance(inst: &Instance) -> Self {
        let name = |id: ContractId| inst.contracts()[id.0].name.clone();
        let names = |s: ContractSet| s.iter().map(name).collect::<Vec<_>>();
        let mut choices = BTreeMap::new();
        for (v, agent) in inst.agents().iter().enumerate() {
            let c = inst.choice(AgentId(v)).expect("agent index in range");
            let entry = match c.family() {
                Family::LinearOrder(order) => {
                    ChoiceEntry::Linear(order.iter().copied().map(name).collect())
                }
                Family::Quota { quota, priority } => ChoiceEntry::Quota {
                    q: *quota,
                    priority: priority.iter().copied().map(name).collect(),
                },
                Family::Table(_) | Family::Aggregate(_) => ChoiceEntry::Table(
                    c.ground()
                        .canonical_subsets()
                        .into_iter()
                        .map(|menu| TableRow {
                            menu: names(menu),
                            choice: names(c.choose(menu)),
                        })
                        .collect(),
                ),
            };
            choices.insert(agent.name.clone(), entry);
        }
        InstanceDocument {
            agents: inst
                .agents()
                .iter()
                .map(|a| AgentEntry {
                    id: a.name.clone(),
                    side: a.side,
                })
                .collect(),
            contracts: inst
                .contracts()
                .iter()
                .map(|c| ContractEntry {
                    id: c.name.clone(),
                    firm: inst.agents()[c.firm.0].name.clone(),
                    worker: inst.agents()[c.worker.0].name.clone(),
                })
                .collect(),
            choices,
        }
    }
}

/// Pretty-printed JSON for `inst`.
pub fn to_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceDocument::from_instance(inst))
        .expect("instance documents always serialize")
}
