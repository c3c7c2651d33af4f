//! Bipartite contract markets and their reduction to a single Firm and a
//! single Worker.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::choice::{validate_plott, ChoiceFunction, Family};
use crate::error::{Error, Result};
use crate::set::{ContractId, ContractSet, MAX_CONTRACTS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Firm,
    Worker,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Firm => "firm",
            Side::Worker => "worker",
        })
    }
}

/// Position of an agent in [`Instance::agents`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agent {
    pub name: String,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contract {
    pub id: ContractId,
    pub name: String,
    pub firm: AgentId,
    pub worker: AgentId,
}

/// A validated market. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    agents: Vec<Agent>,
    contracts: Vec<Contract>,
    choices: Vec<ChoiceFunction>,
    adjacency: Vec<ContractSet>,
}

impl Instance {
    /// Validates and assembles an instance. `choices[v]` belongs to
    /// `agents[v]` and must be declared over exactly that agent's contracts.
    pub fn new(
        agents: Vec<Agent>,
        contracts: Vec<Contract>,
        choices: Vec<ChoiceFunction>,
    ) -> Result<Self> {
        let mut names = HashSet::new();
        for a in &agents {
            if !names.insert(a.name.as_str()) {
                return Err(Error::DuplicateId(a.name.clone()));
            }
        }
        if contracts.len() > MAX_CONTRACTS {
            return Err(Error::InvalidPayload(format!(
                "{} contracts exceed the supported maximum of {MAX_CONTRACTS}",
                contracts.len()
            )));
        }
        let mut adjacency = vec![ContractSet::EMPTY; agents.len()];
        let mut cnames = HashSet::new();
        for (i, c) in contracts.iter().enumerate() {
            if !cnames.insert(c.name.as_str()) {
                return Err(Error::DuplicateId(c.name.clone()));
            }
            if c.id != ContractId(i) {
                return Err(Error::InvalidPayload(format!(
                    "contract `{}` has id {} at position {i}; ids must be dense",
                    c.name, c.id.0
                )));
            }
            for (agent, side) in [(c.firm, Side::Firm), (c.worker, Side::Worker)] {
                let a = agents
                    .get(agent.0)
                    .ok_or_else(|| Error::UnknownAgent(format!("#{}", agent.0)))?;
                if a.side != side {
                    return Err(Error::SideMismatch {
                        contract: c.name.clone(),
                        agent: a.name.clone(),
                        expected: if side == Side::Firm { "firm" } else { "worker" },
                    });
                }
                adjacency[agent.0] = adjacency[agent.0].with(c.id);
            }
        }
        if choices.len() != agents.len() {
            return Err(Error::InvalidPayload(format!(
                "{} choice functions for {} agents",
                choices.len(),
                agents.len()
            )));
        }
        for ((a, c), adj) in agents.iter().zip(&choices).zip(&adjacency) {
            if c.ground() != *adj {
                return Err(Error::InvalidPayload(format!(
                    "choice function of `{}` is declared over {:?}, but the agent's contracts are {:?}",
                    a.name,
                    c.ground(),
                    adj
                )));
            }
            require_plott(c, &a.name)?;
        }
        Ok(Instance {
            agents,
            contracts,
            choices,
            adjacency,
        })
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn contracts(&self) -> &[Contract] {
        &self.contracts
    }

    pub fn num_contracts(&self) -> usize {
        self.contracts.len()
    }

    /// `E`, the full ground set.
    pub fn ground(&self) -> ContractSet {
        ContractSet::full(self.contracts.len())
    }

    pub fn agent(&self, id: AgentId) -> Result<&Agent> {
        self.agents
            .get(id.0)
            .ok_or_else(|| Error::UnknownAgent(format!("#{}", id.0)))
    }

    pub fn choice(&self, id: AgentId) -> Result<&ChoiceFunction> {
        self.choices
            .get(id.0)
            .ok_or_else(|| Error::UnknownAgent(format!("#{}", id.0)))
    }

    pub fn agent_by_name(&self, name: &str) -> Result<AgentId> {
        self.agents
            .iter()
            .position(|a| a.name == name)
            .map(AgentId)
            .ok_or_else(|| Error::UnknownAgent(name.to_owned()))
    }

    pub fn contract_by_name(&self, name: &str) -> Result<ContractId> {
        self.contracts
            .iter()
            .position(|c| c.name == name)
            .map(ContractId)
            .ok_or_else(|| Error::UnknownContract(name.to_owned()))
    }

    pub fn side_ids(&self, side: Side) -> impl Iterator<Item = AgentId> + '_ {
        self.agents
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.side == side)
            .map(|(i, _)| AgentId(i))
    }

    /// `E(v)`.
    pub fn contracts_of(&self, agent: AgentId) -> Result<ContractSet> {
        self.adjacency
            .get(agent.0)
            .copied()
            .ok_or_else(|| Error::UnknownAgent(format!("#{}", agent.0)))
    }

    /// `S(v) = S ∩ E(v)`.
    pub fn restrict(&self, s: ContractSet, agent: AgentId) -> Result<ContractSet> {
        if !s.is_subset(self.ground()) {
            return Err(Error::NotSubset {
                menu: s,
                ground: self.ground(),
            });
        }
        Ok(s & self.contracts_of(agent)?)
    }

    /// The two-agent form: the Firm chooses `⋃_f C_f(A ∩ E(f))` and the
    /// Worker likewise over workers.
    pub fn reduce_to_two_agents(&self) -> TwoAgentProblem {
        let side = |side: Side| {
            let parts = self
                .side_ids(side)
                .map(|v| self.choices[v.0].clone())
                .collect();
            ChoiceFunction::aggregate(parts).expect("agent grounds on one side are disjoint")
        };
        let firm = side(Side::Firm);
        let worker = side(Side::Worker);
        // Isolated sides still cover E: every contract has a firm and a worker.
        debug_assert_eq!(firm.ground(), self.ground());
        TwoAgentProblem {
            ground: self.ground(),
            firm,
            worker,
        }
    }

    /// Renders a set with contract names, sorted by id: `{e11,e22}`.
    pub fn show(&self, s: ContractSet) -> String {
        let names: Vec<&str> = s
            .iter()
            .map(|id| self.contracts.get(id.0).map_or("?", |c| c.name.as_str()))
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// Parses `{e1,e2}` or `e1,e2` (braces optional, whitespace ignored).
    pub fn parse_set(&self, text: &str) -> Result<ContractSet> {
        let t = text.trim();
        let t = t.strip_prefix('{').unwrap_or(t);
        let t = t.strip_suffix('}').unwrap_or(t);
        t.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| self.contract_by_name(name))
            .collect()
    }
}

/// Plott check that stays within the exhaustive cap: ordered families are
/// Plott by construction, tables are checked exhaustively, aggregates part
/// by part.
fn require_plott(c: &ChoiceFunction, agent: &str) -> Result<()> {
    match c.family() {
        Family::LinearOrder(_) | Family::Quota { .. } => Ok(()),
        Family::Table(_) => {
            let report = validate_plott(c)?;
            if report.passed() {
                Ok(())
            } else {
                Err(Error::NotPlott {
                    agent: Some(agent.to_owned()),
                    report: Box::new(report),
                })
            }
        }
        Family::Aggregate(parts) => parts.iter().try_for_each(|p| require_plott(p, agent)),
    }
}

/// Two agents, Firm and Worker, with choice functions on the same ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoAgentProblem {
    ground: ContractSet,
    firm: ChoiceFunction,
    worker: ChoiceFunction,
}

impl TwoAgentProblem {
    pub fn new(firm: ChoiceFunction, worker: ChoiceFunction) -> Result<Self> {
        if firm.ground() != worker.ground() {
            return Err(Error::InvalidPayload(format!(
                "firm ground {:?} differs from worker ground {:?}",
                firm.ground(),
                worker.ground()
            )));
        }
        require_plott(&firm, "Firm")?;
        require_plott(&worker, "Worker")?;
        Ok(TwoAgentProblem {
            ground: firm.ground(),
            firm,
            worker,
        })
    }

    /// `E`.
    pub fn ground(&self) -> ContractSet {
        self.ground
    }

    /// `F`.
    pub fn firm(&self) -> &ChoiceFunction {
        &self.firm
    }

    /// `W`.
    pub fn worker(&self) -> &ChoiceFunction {
        &self.worker
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{i1, i3};

    fn s(v: &[usize]) -> ContractSet {
        ContractSet::from_ids(v.iter().copied())
    }

    #[test]
    fn adjacency_of_i3() {
        let inst = i3();
        let f1 = inst.agent_by_name("f1").unwrap();
        let w1 = inst.agent_by_name("w1").unwrap();
        assert_eq!(inst.show(inst.contracts_of(f1).unwrap()), "{e11,e12}");
        assert_eq!(inst.show(inst.contracts_of(w1).unwrap()), "{e11,e21}");
        assert!(matches!(
            inst.contracts_of(AgentId(99)),
            Err(Error::UnknownAgent(_))
        ));
    }

    #[test]
    fn isolated_agent_has_no_contracts() {
        let agents = vec![
            Agent {
                name: "f".into(),
                side: Side::Firm,
            },
            Agent {
                name: "w".into(),
                side: Side::Worker,
            },
            Agent {
                name: "a".into(),
                side: Side::Worker,
            },
        ];
        let contracts = vec![Contract {
            id: ContractId(0),
            name: "e".into(),
            firm: AgentId(0),
            worker: AgentId(1),
        }];
        let lin = ChoiceFunction::linear(vec![ContractId(0)]).unwrap();
        let inst = Instance::new(
            agents,
            contracts,
            vec![lin.clone(), lin, ChoiceFunction::trivial()],
        )
        .unwrap();
        assert!(inst.contracts_of(AgentId(2)).unwrap().is_empty());
    }

    #[test]
    fn restrict_examples() {
        let inst = i3();
        let f1 = inst.agent_by_name("f1").unwrap();
        let w2 = inst.agent_by_name("w2").unwrap();
        let e11_e22 = inst.parse_set("{e11,e22}").unwrap();
        assert_eq!(inst.show(inst.restrict(e11_e22, f1).unwrap()), "{e11}");
        assert!(inst.restrict(ContractSet::EMPTY, f1).unwrap().is_empty());
        assert_eq!(
            inst.show(inst.restrict(inst.ground(), w2).unwrap()),
            "{e12,e22}"
        );
        assert!(inst.restrict(s(&[7]), f1).is_err());
    }

    #[test]
    fn reduced_firm_choice_unions_slices() {
        let inst = i3();
        let p = inst.reduce_to_two_agents();
        let menu = inst.parse_set("e11,e12,e21").unwrap();
        assert_eq!(inst.show(p.firm().choose(menu)), "{e11,e21}");
        assert!(p.firm().choose(ContractSet::EMPTY).is_empty());
        assert!(p.worker().choose(ContractSet::EMPTY).is_empty());
    }

    #[test]
    fn single_pair_reduction_matches_agents() {
        let inst = i1();
        let p = inst.reduce_to_two_agents();
        let f = inst.choice(inst.agent_by_name("f").unwrap()).unwrap();
        let w = inst.choice(inst.agent_by_name("w").unwrap()).unwrap();
        for a in inst.ground().subsets() {
            assert_eq!(p.firm().choose(a), f.choose(a));
            assert_eq!(p.worker().choose(a), w.choose(a));
        }
    }

    #[test]
    fn validation_errors() {
        let firm = Agent {
            name: "f".into(),
            side: Side::Firm,
        };
        let worker = Agent {
            name: "w".into(),
            side: Side::Worker,
        };
        let c = |f, w| Contract {
            id: ContractId(0),
            name: "e".into(),
            firm: AgentId(f),
            worker: AgentId(w),
        };
        let lin = ChoiceFunction::linear(vec![ContractId(0)]).unwrap();

        let err = Instance::new(
            vec![firm.clone(), worker.clone()],
            vec![c(1, 0)],
            vec![lin.clone(), lin.clone()],
        )
        .unwrap_err();
        assert!(matches!(err, Error::SideMismatch { .. }));

        let err = Instance::new(
            vec![firm.clone(), worker.clone()],
            vec![c(0, 5)],
            vec![lin.clone(), lin.clone()],
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnknownAgent(_)));

        let err = Instance::new(
            vec![firm.clone(), worker.clone()],
            vec![c(0, 1)],
            vec![lin.clone(), ChoiceFunction::trivial()],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidPayload(_)));

        let err = Instance::new(vec![firm.clone(), firm], vec![], vec![]).unwrap_err();
        assert!(matches!(err, Error::DuplicateId(_)));
    }

    #[test]
    fn two_agent_grounds_must_agree() {
        let a = ChoiceFunction::linear(vec![ContractId(0)]).unwrap();
        let b = ChoiceFunction::linear(vec![ContractId(0), ContractId(1)]).unwrap();
        assert!(TwoAgentProblem::new(a, b).is_err());
    }
}
