//! Marriage markets: every agent ranks its contracts by a strict order and
//! holds at most one.

use crate::error::{Error, Result};
use crate::instance::{AgentId, Instance, Side};
use crate::set::{ContractId, ContractSet};
use crate::stability::{blocking_contracts_multi, is_acceptable_multi, is_stable_multi};

/// A set of contracts with at most one per agent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Matching(ContractSet);

impl Matching {
    pub fn new(inst: &Instance, s: ContractSet) -> Result<Self> {
        if !s.is_subset(inst.ground()) {
            return Err(Error::NotSubset {
                menu: s,
                ground: inst.ground(),
            });
        }
        for (v, agent) in inst.agents().iter().enumerate() {
            if (s & inst.contracts_of(AgentId(v))?).len() > 1 {
                return Err(Error::InvalidPayload(format!(
                    "{} holds more than one contract in {}",
                    agent.name,
                    inst.show(s)
                )));
            }
        }
        Ok(Matching(s))
    }

    pub fn contracts(self) -> ContractSet {
        self.0
    }
}

/// Per-contract ranks on both sides, extracted once.
struct Marriage<'a> {
    inst: &'a Instance,
    orders: Vec<&'a [ContractId]>,
    firm_rank: Vec<usize>,
}

impl<'a> Marriage<'a> {
    fn new(inst: &'a Instance) -> Result<Self> {
        let mut orders = Vec::with_capacity(inst.agents().len());
        for (v, agent) in inst.agents().iter().enumerate() {
            let order = inst.choice(AgentId(v))?.classical_order().ok_or_else(|| {
                Error::Precondition(format!(
                    "agent `{}` does not have a single linear order",
                    agent.name
                ))
            })?;
            orders.push(order);
        }
        let mut firm_rank = vec![usize::MAX; inst.num_contracts()];
        for f in inst.side_ids(Side::Firm) {
            for (r, e) in orders[f.0].iter().enumerate() {
                firm_rank[e.0] = r;
            }
        }
        Ok(Marriage {
            inst,
            orders,
            firm_rank,
        })
    }

    fn firm(&self, e: ContractId) -> AgentId {
        self.inst.contracts()[e.0].firm
    }

    fn worker(&self, e: ContractId) -> AgentId {
        self.inst.contracts()[e.0].worker
    }

    /// Whether the firm of `e` would take it over what it holds.
    fn firm_wants(&self, held: &[Option<ContractId>], e: ContractId) -> bool {
        held[self.firm(e).0].is_none_or(|h| self.firm_rank[e.0] < self.firm_rank[h.0])
    }

    fn finish(&self, held: &[Option<ContractId>]) -> Result<Matching> {
        let s: ContractSet = held.iter().flatten().copied().collect();
        let m = Matching::new(self.inst, s)?;
        if !is_stable_multi(self.inst, s) {
            return Err(Error::Inconsistency(format!(
                "produced unstable matching {}",
                self.inst.show(s)
            )));
        }
        Ok(m)
    }
}

/// Worker-proposing deferred acceptance.
pub fn gale_shapley(inst: &Instance) -> Result<Matching> {
    gale_shapley_by(inst, |_| {})
}

/// [`gale_shapley`] with a hook that may reorder each round's proposals
/// before firms process them. The outcome does not depend on the order.
pub fn gale_shapley_by(
    inst: &Instance,
    mut reorder: impl FnMut(&mut Vec<ContractId>),
) -> Result<Matching> {
    let m = Marriage::new(inst)?;
    let n_agents = inst.agents().len();
    let mut next = vec![0usize; n_agents];
    let mut engaged = vec![false; n_agents];
    let mut held: Vec<Option<ContractId>> = vec![None; n_agents];
    let workers: Vec<AgentId> = inst.side_ids(Side::Worker).collect();
    let mut proposals = Vec::new();
    loop {
        proposals.clear();
        for &w in &workers {
            if !engaged[w.0] {
                if let Some(&e) = m.orders[w.0].get(next[w.0]) {
                    next[w.0] += 1;
                    proposals.push(e);
                }
            }
        }
        if proposals.is_empty() {
            break;
        }
        reorder(&mut proposals);
        for &e in &proposals {
            if m.firm_wants(&held, e) {
                let f = m.firm(e);
                if let Some(old) = held[f.0].replace(e) {
                    engaged[m.worker(old).0] = false;
                }
                engaged[m.worker(e).0] = true;
            }
        }
    }
    m.finish(&held)
}

/// Builds a stable matching by adding workers one at a time in `order`.
///
/// The returning worker takes his best contract among those its firm would
/// accept. A firm that was already matched dismisses its worker, who is
/// then re-inserted the same way, until someone lands at a free firm or
/// finds no firm willing.
pub fn sotomayor_insert_solve(inst: &Instance, order: &[AgentId]) -> Result<Matching> {
    let m = Marriage::new(inst)?;
    let mut workers: Vec<AgentId> = inst.side_ids(Side::Worker).collect();
    let mut given = order.to_vec();
    workers.sort_unstable();
    given.sort_unstable();
    if workers != given {
        return Err(Error::InvalidPayload(
            "insertion order must list every worker exactly once".into(),
        ));
    }

    let mut held: Vec<Option<ContractId>> = vec![None; inst.agents().len()];
    let bound = inst.num_contracts();
    for &w in order {
        let mut current = w;
        let mut chain = 0usize;
        while let Some(&e) = m.orders[current.0]
            .iter()
            .find(|&&e| m.firm_wants(&held, e))
        {
            let Some(old) = held[m.firm(e).0].replace(e) else {
                break;
            };
            current = m.worker(old);
            chain += 1;
            if chain > bound {
                return Err(Error::Inconsistency(format!(
                    "repair chain exceeded {bound} steps"
                )));
            }
        }
    }
    m.finish(&held)
}

/// Acceptable, and every blocking contract involves an unemployed worker.
pub fn is_quasi_stable(inst: &Instance, m: &Matching) -> bool {
    let s = m.contracts();
    is_acceptable_multi(inst, s)
        && blocking_contracts_multi(inst, s).iter().all(|e| {
            let w = inst.contracts()[e.0].worker;
            (s & inst.contracts_of(w).expect("worker exists")).is_empty()
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{i1, i3};

    #[test]
    fn gale_shapley_fixtures() {
        let inst = i3();
        assert_eq!(
            inst.show(gale_shapley(&inst).unwrap().contracts()),
            "{e12,e21}"
        );
        let inst = i1();
        assert_eq!(inst.show(gale_shapley(&inst).unwrap().contracts()), "{e2}");
        let empty = crate::format::parse_str(r#"{"agents": [], "contracts": []}"#).unwrap();
        assert!(gale_shapley(&empty).unwrap().contracts().is_empty());
    }

    #[test]
    fn sotomayor_fixtures() {
        let inst = i3();
        let order = [
            inst.agent_by_name("w1").unwrap(),
            inst.agent_by_name("w2").unwrap(),
        ];
        assert_eq!(
            inst.show(sotomayor_insert_solve(&inst, &order).unwrap().contracts()),
            "{e12,e21}"
        );
        let inst = i1();
        let w = inst.agent_by_name("w").unwrap();
        assert_eq!(
            inst.show(sotomayor_insert_solve(&inst, &[w]).unwrap().contracts()),
            "{e2}"
        );
        assert!(sotomayor_insert_solve(&inst, &[]).is_err());
        assert!(sotomayor_insert_solve(&inst, &[w, w]).is_err());
        let f = inst.agent_by_name("f").unwrap();
        assert!(sotomayor_insert_solve(&inst, &[f]).is_err());
    }

    #[test]
    fn quasi_stability() {
        let inst = i3();
        let m = |t: &str| Matching::new(&inst, inst.parse_set(t).unwrap()).unwrap();
        assert!(is_quasi_stable(&inst, &m("")));
        assert!(is_quasi_stable(&inst, &m("e21,e12")));
        assert!(!is_quasi_stable(&inst, &m("e11")));
        // Quasi-stable but blocked: the empty matching.
        assert!(!is_stable_multi(&inst, ContractSet::EMPTY));
    }

    #[test]
    fn matching_rejects_double_assignment() {
        let inst = i3();
        assert!(Matching::new(&inst, inst.parse_set("e11,e12").unwrap()).is_err());
    }

    #[test]
    fn non_classical_rejected() {
        let inst = crate::fixtures::table_corpus().remove(0);
        assert!(matches!(gale_shapley(&inst), Err(Error::Precondition(_))));
    }
}
