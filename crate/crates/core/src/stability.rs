//! Stability of contract systems.
//!
//! For a two-agent problem the three characterizations are:
//! - the definition: `F(S) = S`, `W(S) = S`, and no contract outside `S` is
//!   chosen by both sides from `S ∪ e`;
//! - `S = D_F(S) ∩ D_W(S)`;
//! - `S = W(D_F(S))`.
//!
//! All predicates return `false` for sets that are not subsets of `E`.

use crate::desirability::desirable;
use crate::instance::{Instance, Side, TwoAgentProblem};
use crate::set::ContractSet;

/// `F(S) = S` and `W(S) = S`.
pub fn is_acceptable(p: &TwoAgentProblem, s: ContractSet) -> bool {
    p.firm().choose(s) == s && p.worker().choose(s) == s
}

/// Contracts `e ∉ S` with `e ∈ F(S ∪ e)` and `e ∈ W(S ∪ e)`.
pub fn blocking_contracts(p: &TwoAgentProblem, s: ContractSet) -> ContractSet {
    (p.ground() - s)
        .iter()
        .filter(|&e| {
            let menu = s.with(e);
            p.firm().choose(menu).contains(e) && p.worker().choose(menu).contains(e)
        })
        .collect()
}

/// `S = D_F(S) ∩ D_W(S)`.
pub fn is_stable(p: &TwoAgentProblem, s: ContractSet) -> bool {
    s == desirable(p.firm(), s) & desirable(p.worker(), s)
}

/// `S = W(D_F(S))`.
pub fn is_stable_prop1(p: &TwoAgentProblem, s: ContractSet) -> bool {
    s.is_subset(p.ground()) && s == p.worker().choose(desirable(p.firm(), s))
}

/// The definition checked literally: acceptable and unblocked.
pub fn is_stable_by_definition(p: &TwoAgentProblem, s: ContractSet) -> bool {
    is_acceptable(p, s) && blocking_contracts(p, s).is_empty()
}

/// Contracts outside `S` that both endpoints would add: `e ∈ C_f(S(f) ∪ e)`
/// and `e ∈ C_w(S(w) ∪ e)`.
pub fn blocking_contracts_multi(inst: &Instance, s: ContractSet) -> ContractSet {
    (inst.ground() - s)
        .iter()
        .filter(|&e| {
            let c = &inst.contracts()[e.0];
            [c.firm, c.worker].iter().all(|&v| {
                let slice = s & inst.contracts_of(v).expect("contract endpoints exist");
                inst.choice(v)
                    .expect("contract endpoints exist")
                    .choose(slice.with(e))
                    .contains(e)
            })
        })
        .collect()
}

/// Every agent accepts its slice as is: `C_v(S(v)) = S(v)`.
pub fn is_acceptable_multi(inst: &Instance, s: ContractSet) -> bool {
    s.is_subset(inst.ground())
        && (0..inst.agents().len()).all(|v| {
            let v = crate::instance::AgentId(v);
            let slice = s & inst.contracts_of(v).expect("agent index in range");
            inst.choice(v).expect("agent index in range").choose(slice) == slice
        })
}

/// Stability in the many-agent market.
pub fn is_stable_multi(inst: &Instance, s: ContractSet) -> bool {
    is_acceptable_multi(inst, s) && blocking_contracts_multi(inst, s).is_empty()
}

/// Largest number of contracts any one agent of `side` holds in `s`.
pub fn max_load(inst: &Instance, s: ContractSet, side: Side) -> usize {
    inst.side_ids(side)
        .map(|v| (s & inst.contracts_of(v).expect("agent index in range")).len())
        .max()
        .unwrap_or(0)
}
