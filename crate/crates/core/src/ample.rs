//! Ample systems `B` with `D_F(W(B)) ⊆ B`, and the descending process
//! `B ↦ (B ∖ W(B)) ∪ F(W(B))`.
//!
//! Starting from `B = E` the process is deferred acceptance with workers
//! proposing: `B` is what workers may still offer, `W(B)` their offers and
//! `F(W(B))` what firms hold.

use crate::desirability::desirable;
use crate::error::{Error, Result};
use crate::instance::TwoAgentProblem;
use crate::oracle::{check_enumeration_cap, scan_subsets};
use crate::set::ContractSet;
use crate::stability::is_stable;
use crate::Solution;

pub fn is_ample(p: &TwoAgentProblem, b: ContractSet) -> bool {
    desirable(p.firm(), p.worker().choose(b)).is_subset(b)
}

pub fn ag_step(p: &TwoAgentProblem, b: ContractSet) -> ContractSet {
    let offered = p.worker().choose(b);
    (b - offered) | p.firm().choose(offered)
}

/// Iterates [`ag_step`] from `start` (default `E`) to its fixpoint and
/// returns `W(B)` there. The trace lists every iterate, start included.
pub fn ag_solve(p: &TwoAgentProblem, start: Option<ContractSet>) -> Result<Solution> {
    let mut b = start.unwrap_or(p.ground());
    if !b.is_subset(p.ground()) {
        return Err(Error::NotSubset {
            menu: b,
            ground: p.ground(),
        });
    }
    if !is_ample(p, b) {
        return Err(Error::Precondition(format!("start set {b:?} is not ample")));
    }
    let mut trace = vec![b];
    loop {
        let next = ag_step(p, b);
        if next == b {
            break;
        }
        if !next.is_subset(b) || trace.len() > p.ground().len() {
            return Err(Error::Inconsistency(format!(
                "descent from {:?} failed to shrink at {b:?}",
                trace[0]
            )));
        }
        trace.push(next);
        b = next;
    }
    let stable = p.worker().choose(b);
    if !is_stable(p, stable) {
        return Err(Error::Inconsistency(format!(
            "fixpoint {b:?} yields unstable system {stable:?}"
        )));
    }
    Ok(Solution { stable, trace })
}

/// `{ W(B) : B ample, W(B) = F(W(B)) }` over every `B ⊆ E`, canonically
/// sorted.
pub fn enumerate_stable_via_ample(p: &TwoAgentProblem) -> Result<Vec<ContractSet>> {
    check_enumeration_cap(p.ground())?;
    let mut found: Vec<ContractSet> = scan_subsets(p.ground(), |b| {
        let w = p.worker().choose(b);
        (is_ample(p, b) && p.firm().choose(w) == w).then_some(w)
    });
    found.sort_unstable();
    found.dedup();
    Ok(found)
}

/// `B = D_F(S)` for a stable `S`; `B` is ample and `W(B) = S`.
pub fn ample_from_stable(p: &TwoAgentProblem, s: ContractSet) -> Result<ContractSet> {
    if !is_stable(p, s) {
        return Err(Error::Precondition(format!("{s:?} is not stable")));
    }
    let b = desirable(p.firm(), s);
    if !is_ample(p, b) || p.worker().choose(b) != s {
        return Err(Error::Inconsistency(format!(
            "D_F({s:?}) = {b:?} does not recover the stable system"
        )));
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{i1, i3};

    #[test]
    fn ampleness_on_i1() {
        let inst = i1();
        let p = inst.reduce_to_two_agents();
        let set = |t: &str| inst.parse_set(t).unwrap();
        assert!(is_ample(&p, p.ground()));
        assert!(!is_ample(&p, set("e2")));
        assert!(is_ample(&p, set("e1")));
    }

    #[test]
    fn steps() {
        let inst = i3();
        let p = inst.reduce_to_two_agents();
        assert_eq!(ag_step(&p, p.ground()), p.ground());
        assert_eq!(ag_step(&p, ContractSet::EMPTY), ContractSet::EMPTY);
        let p1 = i1().reduce_to_two_agents();
        assert_eq!(ag_step(&p1, p1.ground()), p1.ground());
    }

    #[test]
    fn solve_i3_and_i1() {
        let inst = i3();
        let p = inst.reduce_to_two_agents();
        let sol = ag_solve(&p, None).unwrap();
        assert_eq!(inst.show(sol.stable), "{e12,e21}");
        assert_eq!(sol.trace.len(), 1);
        assert_eq!(sol.steps(), 0);

        let inst = i1();
        let p = inst.reduce_to_two_agents();
        assert_eq!(inst.show(ag_solve(&p, None).unwrap().stable), "{e2}");
        let from_e1 = ag_solve(&p, Some(inst.parse_set("e1").unwrap())).unwrap();
        assert_eq!(inst.show(from_e1.stable), "{e1}");
        assert!(matches!(
            ag_solve(&p, Some(inst.parse_set("e2").unwrap())),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn enumeration_examples() {
        let inst = i1();
        let got: Vec<_> = enumerate_stable_via_ample(&inst.reduce_to_two_agents())
            .unwrap()
            .into_iter()
            .map(|s| inst.show(s))
            .collect();
        assert_eq!(got, ["{e1}", "{e2}"]);

        let inst = i3();
        let got: Vec<_> = enumerate_stable_via_ample(&inst.reduce_to_two_agents())
            .unwrap()
            .into_iter()
            .map(|s| inst.show(s))
            .collect();
        assert_eq!(got, ["{e11,e22}", "{e12,e21}"]);

        let empty = crate::format::parse_str(r#"{"agents": [], "contracts": []}"#).unwrap();
        assert_eq!(
            enumerate_stable_via_ample(&empty.reduce_to_two_agents()).unwrap(),
            vec![ContractSet::EMPTY]
        );
    }

    #[test]
    fn ample_from_stable_examples() {
        let inst = i1();
        let p = inst.reduce_to_two_agents();
        let set = |t: &str| inst.parse_set(t).unwrap();
        assert_eq!(ample_from_stable(&p, set("e2")).unwrap(), set("e1,e2"));
        assert_eq!(ample_from_stable(&p, set("e1")).unwrap(), set("e1"));
        assert!(matches!(
            ample_from_stable(&p, ContractSet::EMPTY),
            Err(Error::Precondition(_))
        ));

        let inst = i3();
        let p = inst.reduce_to_two_agents();
        let s = inst.parse_set("e11,e22").unwrap();
        let b = ample_from_stable(&p, s).unwrap();
        assert_eq!(p.worker().choose(b), s);
    }
}
