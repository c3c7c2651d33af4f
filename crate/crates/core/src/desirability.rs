//! Desirability: `D_C(A) = { x : x ∈ C(A ∪ x) }`, its antimonotonicity and
//! Löb identity, and the choice function `A ∩ D(A)` it induces.

use std::fmt;

use crate::choice::{canonical_indices, check_cap, ChoiceFunction};
use crate::error::{Error, Result};
use crate::set::ContractSet;

/// The elements of the ground set the agent would accept on top of `menu`.
/// Elements of `menu` outside the ground set are ignored.
pub fn desirable(c: &ChoiceFunction, menu: ContractSet) -> ContractSet {
    let menu = menu & c.ground();
    c.ground()
        .iter()
        .filter(|&x| c.choose(menu.with(x)).contains(x))
        .collect()
}

/// Checked form of [`desirable`].
pub fn desirable_set(c: &ChoiceFunction, menu: ContractSet) -> Result<ContractSet> {
    if !menu.is_subset(c.ground()) {
        return Err(Error::NotSubset {
            menu,
            ground: c.ground(),
        });
    }
    Ok(desirable(c, menu))
}

/// A total map from subsets of a ground set to subsets of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesirabilityOperator {
    ground: ContractSet,
    map: Vec<ContractSet>,
}

impl DesirabilityOperator {
    /// Tabulates `f` over every subset of `ground`. Values are clipped to
    /// the ground set.
    pub fn from_fn(
        ground: ContractSet,
        mut f: impl FnMut(ContractSet) -> ContractSet,
    ) -> Result<Self> {
        check_cap(ground)?;
        let map = (0..1usize << ground.len())
            .map(|i| f(ContractSet::expand(i, ground)) & ground)
            .collect();
        Ok(DesirabilityOperator { ground, map })
    }

    /// The operator `A ↦ D_C(A)`.
    pub fn of_choice(c: &ChoiceFunction) -> Result<Self> {
        Self::from_fn(c.ground(), |a| desirable(c, a))
    }

    pub fn ground(&self) -> ContractSet {
        self.ground
    }

    pub fn apply(&self, a: ContractSet) -> ContractSet {
        self.map[a.compress(self.ground)]
    }

    /// The induced choice function `A ↦ A ∩ D(A)`, as a table. Fails unless
    /// the operator is antimonotone and satisfies the Löb identity.
    pub fn to_choice(&self) -> Result<ChoiceFunction> {
        self.require_valid()?;
        ChoiceFunction::table_from_fn(self.ground, |a| a & self.apply(a))
    }

    fn require_valid(&self) -> Result<()> {
        let report = validate_desirability_operator(self)?;
        if report.passed() {
            Ok(())
        } else {
            Err(Error::InvalidDesirability(Box::new(report)))
        }
    }
}

/// `A ∩ D(A)` after checking that `D` is a valid desirability operator.
pub fn choice_from_desirability(d: &DesirabilityOperator, a: ContractSet) -> Result<ContractSet> {
    if !a.is_subset(d.ground) {
        return Err(Error::NotSubset {
            menu: a,
            ground: d.ground,
        });
    }
    d.require_valid()?;
    Ok(a & d.apply(a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AntimonotoneWitness {
    pub a: ContractSet,
    pub b: ContractSet,
    pub map_a: ContractSet,
    pub map_b: ContractSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LobWitness {
    pub a: ContractSet,
    pub map_a: ContractSet,
    pub map_reduced: ContractSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesirabilityReport {
    pub antimonotone: Option<AntimonotoneWitness>,
    pub lob: Option<LobWitness>,
}

impl DesirabilityReport {
    pub fn passed(&self) -> bool {
        self.antimonotone.is_none() && self.lob.is_none()
    }
}

impl fmt::Display for DesirabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.antimonotone {
            None => write!(f, "antimonotonicity: pass")?,
            Some(w) => write!(
                f,
                "antimonotonicity: FAIL at A={:?} ⊆ B={:?}: D(B)={:?} ⊄ D(A)={:?}",
                w.a, w.b, w.map_b, w.map_a
            )?,
        }
        match &self.lob {
            None => write!(f, "; Löb identity: pass"),
            Some(w) => write!(
                f,
                "; Löb identity: FAIL at A={:?}: D(A)={:?} ≠ D(A∩D(A))={:?}",
                w.a, w.map_a, w.map_reduced
            ),
        }
    }
}

/// Exhaustive check of antimonotonicity (all pairs `A ⊆ B`) and the Löb
/// identity `D(A) = D(A ∩ D(A))` (all `A`), scanning in canonical order.
pub fn validate_desirability_operator(d: &DesirabilityOperator) -> Result<DesirabilityReport> {
    check_cap(d.ground)?;
    let order = canonical_indices(d.ground.len());
    let set = |i: usize| ContractSet::expand(i, d.ground);
    let map: Vec<usize> = d.map.iter().map(|m| m.compress(d.ground)).collect();

    let mut antimonotone = None;
    'outer: for &a in &order {
        for &b in &order {
            if a & !b == 0 && map[b] & !map[a] != 0 {
                antimonotone = Some(AntimonotoneWitness {
                    a: set(a),
                    b: set(b),
                    map_a: set(map[a]),
                    map_b: set(map[b]),
                });
                break 'outer;
            }
        }
    }

    let lob = order.iter().find_map(|&a| {
        let reduced = map[a & map[a]];
        (reduced != map[a]).then(|| LobWitness {
            a: set(a),
            map_a: set(map[a]),
            map_reduced: set(reduced),
        })
    });

    Ok(DesirabilityReport { antimonotone, lob })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::validate_plott;
    use crate::set::ContractId;

    fn s(v: &[usize]) -> ContractSet {
        ContractSet::from_ids(v.iter().copied())
    }

    fn linear(v: &[usize]) -> ChoiceFunction {
        ChoiceFunction::linear(v.iter().map(|&i| ContractId(i)).collect()).unwrap()
    }

    #[test]
    fn linear_desirability() {
        let c = linear(&[0, 1]);
        assert_eq!(desirable_set(&c, ContractSet::EMPTY).unwrap(), s(&[0, 1]));
        assert_eq!(desirable_set(&c, s(&[0])).unwrap(), s(&[0]));
        assert!(desirable_set(&c, s(&[5])).is_err());
    }

    #[test]
    fn round_trip_linear() {
        let c = linear(&[0, 1]);
        let d = DesirabilityOperator::of_choice(&c).unwrap();
        assert_eq!(choice_from_desirability(&d, s(&[0, 1])).unwrap(), s(&[0]));
    }

    #[test]
    fn constant_full_map_is_identity_choice() {
        let g = s(&[0, 1, 2]);
        let d = DesirabilityOperator::from_fn(g, |_| g).unwrap();
        for a in g.subsets() {
            assert_eq!(choice_from_desirability(&d, a).unwrap(), a);
        }
    }

    #[test]
    fn quota_one_reconstruction() {
        // priority e3 > e2 > e1 on ids 2 > 1 > 0
        let c =
            ChoiceFunction::quota(1, vec![ContractId(2), ContractId(1), ContractId(0)]).unwrap();
        let d = DesirabilityOperator::of_choice(&c).unwrap();
        assert_eq!(d.apply(s(&[0, 1])), s(&[1, 2]));
        assert_eq!(choice_from_desirability(&d, s(&[0, 1])).unwrap(), s(&[1]));
    }

    #[test]
    fn identity_map_fails_antimonotone() {
        let d = DesirabilityOperator::from_fn(s(&[0, 1]), |a| a).unwrap();
        let r = validate_desirability_operator(&d).unwrap();
        assert_eq!(
            r.antimonotone,
            Some(AntimonotoneWitness {
                a: s(&[]),
                b: s(&[0]),
                map_a: s(&[]),
                map_b: s(&[0]),
            })
        );
        assert!(matches!(
            choice_from_desirability(&d, s(&[0])),
            Err(Error::InvalidDesirability(_))
        ));
    }

    #[test]
    fn empty_map_passes() {
        let d = DesirabilityOperator::from_fn(s(&[0, 1, 2]), |_| ContractSet::EMPTY).unwrap();
        assert!(validate_desirability_operator(&d).unwrap().passed());
        let c = d.to_choice().unwrap();
        assert!(validate_plott(&c).unwrap().passed());
    }

    #[test]
    fn lob_failure_detected() {
        // Antimonotone but D({0}) = ∅ while D({0} ∩ ∅) = D(∅) = {0}.
        let d =
            DesirabilityOperator::from_fn(s(&[0]), |a| if a.is_empty() { s(&[0]) } else { s(&[]) })
                .unwrap();
        let r = validate_desirability_operator(&d).unwrap();
        assert!(r.antimonotone.is_none());
        assert_eq!(
            r.lob,
            Some(LobWitness {
                a: s(&[0]),
                map_a: s(&[]),
                map_reduced: s(&[0]),
            })
        );
    }
}
