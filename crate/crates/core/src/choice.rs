//! Choice functions over contract sets and exhaustive checks of the Plott
//! axioms (consistency, substitutability, path independence).

use std::fmt;

use crate::error::{Error, Result};
use crate::set::{ContractId, ContractSet};

/// Largest ground set on which axioms are checked by full enumeration.
pub const EXHAUSTIVE_CAP: usize = 12;

/// The payload of a [`ChoiceFunction`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Strict order, best first. Chooses the single best available element.
    LinearOrder(Vec<ContractId>),
    /// Responsive choice: the `quota` best available elements by `priority`.
    Quota {
        quota: usize,
        priority: Vec<ContractId>,
    },
    /// Explicit value for every menu, indexed by [`ContractSet::compress`]
    /// of the menu against the ground set.
    Table(Vec<ContractSet>),
    /// Disjoint union of choice functions on a partition of the ground set.
    Aggregate(Vec<ChoiceFunction>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceFunction {
    ground: ContractSet,
    family: Family,
}

fn order_ground(order: &[ContractId], what: &str) -> Result<ContractSet> {
    let mut ground = ContractSet::EMPTY;
    for &id in order {
        if id.0 >= crate::set::MAX_CONTRACTS {
            return Err(Error::InvalidPayload(format!(
                "{what} names out-of-range contract {id}"
            )));
        }
        if ground.contains(id) {
            return Err(Error::InvalidPayload(format!(
                "{what} lists contract {id} twice"
            )));
        }
        ground = ground.with(id);
    }
    Ok(ground)
}

impl ChoiceFunction {
    /// The choice function on an empty ground set.
    pub fn trivial() -> Self {
        ChoiceFunction {
            ground: ContractSet::EMPTY,
            family: Family::LinearOrder(Vec::new()),
        }
    }

    pub fn linear(order: Vec<ContractId>) -> Result<Self> {
        let ground = order_ground(&order, "linear order")?;
        Ok(ChoiceFunction {
            ground,
            family: Family::LinearOrder(order),
        })
    }

    pub fn quota(quota: usize, priority: Vec<ContractId>) -> Result<Self> {
        if quota == 0 {
            return Err(Error::InvalidPayload("quota must be at least 1".into()));
        }
        let ground = order_ground(&priority, "quota priority")?;
        Ok(ChoiceFunction {
            ground,
            family: Family::Quota { quota, priority },
        })
    }

    /// Builds a table from `f`, which is evaluated once per subset of
    /// `ground`, and checks the Plott axioms.
    pub fn table_from_fn(
        ground: ContractSet,
        f: impl FnMut(ContractSet) -> ContractSet,
    ) -> Result<Self> {
        let c = Self::table_from_fn_unchecked(ground, f)?;
        c.require_plott(None)?;
        Ok(c)
    }

    /// As [`ChoiceFunction::table_from_fn`] but only checks `C(A) ⊆ A`.
    pub fn table_from_fn_unchecked(
        ground: ContractSet,
        mut f: impl FnMut(ContractSet) -> ContractSet,
    ) -> Result<Self> {
        check_cap(ground)?;
        let entries = (0..1usize << ground.len())
            .map(|i| {
                let menu = ContractSet::expand(i, ground);
                let chosen = f(menu);
                if chosen.is_subset(menu) {
                    Ok(chosen)
                } else {
                    Err(Error::InvalidPayload(format!(
                        "table chooses {chosen:?} from menu {menu:?}, which is not a subset"
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChoiceFunction {
            ground,
            family: Family::Table(entries),
        })
    }

    /// Builds a table from explicit `(menu, choice)` rows, which must cover
    /// every subset of `ground` exactly once, and checks the Plott axioms.
    pub fn table_from_entries(
        ground: ContractSet,
        rows: impl IntoIterator<Item = (ContractSet, ContractSet)>,
    ) -> Result<Self> {
        let c = Self::table_from_entries_unchecked(ground, rows)?;
        c.require_plott(None)?;
        Ok(c)
    }

    pub fn table_from_entries_unchecked(
        ground: ContractSet,
        rows: impl IntoIterator<Item = (ContractSet, ContractSet)>,
    ) -> Result<Self> {
        check_cap(ground)?;
        let mut slots: Vec<Option<ContractSet>> = vec![None; 1 << ground.len()];
        for (menu, chosen) in rows {
            if !menu.is_subset(ground) {
                return Err(Error::NotSubset { menu, ground });
            }
            let slot = &mut slots[menu.compress(ground)];
            if slot.is_some() {
                return Err(Error::InvalidPayload(format!("menu {menu:?} listed twice")));
            }
            *slot = Some(chosen);
        }
        if let Some(i) = slots.iter().position(Option::is_none) {
            return Err(Error::InvalidPayload(format!(
                "table is not total: menu {:?} has no entry",
                ContractSet::expand(i, ground)
            )));
        }
        Self::table_from_fn_unchecked(ground, |menu| {
            slots[menu.compress(ground)].expect("checked total")
        })
    }

    /// Disjoint union of `parts`; their grounds must be pairwise disjoint.
    pub fn aggregate(parts: Vec<ChoiceFunction>) -> Result<Self> {
        let mut ground = ContractSet::EMPTY;
        for p in &parts {
            if !(ground & p.ground).is_empty() {
                return Err(Error::InvalidPayload(format!(
                    "aggregate parts overlap on {:?}",
                    ground & p.ground
                )));
            }
            ground = ground | p.ground;
        }
        Ok(ChoiceFunction {
            ground,
            family: Family::Aggregate(parts),
        })
    }

    pub fn ground(&self) -> ContractSet {
        self.ground
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// True for a single linear order, or a quota of one (the classical
    /// one-contract-per-agent preferences). Yields the order best first.
    pub fn classical_order(&self) -> Option<&[ContractId]> {
        match &self.family {
            Family::LinearOrder(order) => Some(order),
            Family::Quota { quota: 1, priority } => Some(priority),
            _ => None,
        }
    }

    /// `C(A)`, with elements of `menu` outside the ground set ignored.
    pub fn choose(&self, menu: ContractSet) -> ContractSet {
        let menu = menu & self.ground;
        match &self.family {
            Family::LinearOrder(order) => order
                .iter()
                .find(|&&id| menu.contains(id))
                .map_or(ContractSet::EMPTY, |&id| ContractSet::singleton(id)),
            Family::Quota { quota, priority } => priority
                .iter()
                .filter(|&&id| menu.contains(id))
                .take(*quota)
                .copied()
                .collect(),
            Family::Table(entries) => entries[menu.compress(self.ground)],
            Family::Aggregate(parts) => parts
                .iter()
                .fold(ContractSet::EMPTY, |acc, p| acc | p.choose(menu)),
        }
    }

    /// `C(A)`; fails if `menu` is not a subset of the ground set.
    pub fn evaluate(&self, menu: ContractSet) -> Result<ContractSet> {
        if !menu.is_subset(self.ground) {
            return Err(Error::NotSubset {
                menu,
                ground: self.ground,
            });
        }
        Ok(self.choose(menu))
    }

    pub(crate) fn require_plott(&self, agent: Option<&str>) -> Result<()> {
        let report = validate_plott(self)?;
        if report.passed() {
            Ok(())
        } else {
            Err(Error::NotPlott {
                agent: agent.map(str::to_owned),
                report: Box::new(report),
            })
        }
    }
}

pub(crate) fn check_cap(ground: ContractSet) -> Result<()> {
    if ground.len() > EXHAUSTIVE_CAP {
        Err(Error::CapExceeded {
            size: ground.len(),
            cap: EXHAUSTIVE_CAP,
        })
    } else {
        Ok(())
    }
}

/// A failing pair for one axiom, with the two sides that should agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomWitness {
    pub a: ContractSet,
    pub b: ContractSet,
    pub lhs: ContractSet,
    pub rhs: ContractSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// `C(A) ⊆ B ⊆ A ⇒ C(B) = C(A)`
    Consistency,
    /// `A ⊆ B ⇒ C(B) ∩ A ⊆ C(A)`
    Substitutability,
    /// `C(A ∪ B) = C(C(A) ∪ B)`
    PathIndependence,
}

impl Axiom {
    pub const ALL: [Axiom; 3] = [
        Axiom::Consistency,
        Axiom::Substitutability,
        Axiom::PathIndependence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Consistency => "consistency",
            Axiom::Substitutability => "substitutability",
            Axiom::PathIndependence => "path independence",
        }
    }

    /// How the witness fields read for this axiom.
    pub fn describe(self, w: &AxiomWitness, show: impl Fn(ContractSet) -> String) -> String {
        let (a, b, l, r) = (show(w.a), show(w.b), show(w.lhs), show(w.rhs));
        match self {
            Axiom::Consistency => {
                format!("A={a}, B={b}: C(A)={l} ⊆ B ⊆ A but C(B)={r}")
            }
            Axiom::Substitutability => {
                format!("A={a} ⊆ B={b}: C(B)∩A={l} ⊄ C(A)={r}")
            }
            Axiom::PathIndependence => {
                format!("A={a}, B={b}: C(A∪B)={l} ≠ C(C(A)∪B)={r}")
            }
        }
    }
}

/// Outcome of [`validate_plott`]. Each axiom carries its first failing pair
/// under the canonical scan, or `None` when it holds everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlottReport {
    pub ground: ContractSet,
    pub consistency: Option<AxiomWitness>,
    pub substitutability: Option<AxiomWitness>,
    pub path_independence: Option<AxiomWitness>,
}

impl PlottReport {
    pub fn passed(&self) -> bool {
        self.consistency.is_none()
            && self.substitutability.is_none()
            && self.path_independence.is_none()
    }

    pub fn witness(&self, axiom: Axiom) -> Option<&AxiomWitness> {
        match axiom {
            Axiom::Consistency => self.consistency.as_ref(),
            Axiom::Substitutability => self.substitutability.as_ref(),
            Axiom::PathIndependence => self.path_independence.as_ref(),
        }
    }

    /// One line per axiom, rendering sets with `show`.
    pub fn lines(&self, show: impl Fn(ContractSet) -> String) -> Vec<String> {
        Axiom::ALL
            .iter()
            .map(|&ax| match self.witness(ax) {
                None => format!("{}: pass", ax.name()),
                Some(w) => format!("{}: FAIL at {}", ax.name(), ax.describe(w, &show)),
            })
            .collect()
    }
}

impl fmt::Display for PlottReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines = self.lines(|s| format!("{s:?}"));
        write!(f, "{}", lines.join("; "))
    }
}

/// Subset indices `0..2^n` in canonical order (cardinality, then
/// lexicographic on members).
pub(crate) fn canonical_indices(n: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..1usize << n).collect();
    idx.sort_unstable_by_key(|&i| ContractSet::from_bits(i as u128));
    idx
}

/// Checks consistency, substitutability and path independence over every
/// pair of subsets of the ground set.
///
/// Pairs `(A, B)` are scanned with `A` in canonical order and, for each `A`,
/// `B` in canonical order; the first failure per axiom is reported.
pub fn validate_plott(c: &ChoiceFunction) -> Result<PlottReport> {
    let ground = c.ground;
    check_cap(ground)?;
    let n = ground.len();
    // Work on compressed indices: bit k stands for the k-th ground element.
    let values: Vec<usize> = (0..1usize << n)
        .map(|i| c.choose(ContractSet::expand(i, ground)).compress(ground))
        .collect();
    let order = canonical_indices(n);
    let set = |i: usize| ContractSet::expand(i, ground);
    let sub = |x: usize, y: usize| x & !y == 0;

    let mut consistency = None;
    let mut substitutability = None;
    let mut path_independence = None;

    'outer: for &a in &order {
        let ca = values[a];
        for &b in &order {
            if sub(b, a) && sub(ca, b) && values[b] != ca {
                consistency = Some(AxiomWitness {
                    a: set(a),
                    b: set(b),
                    lhs: set(ca),
                    rhs: set(values[b]),
                });
                break 'outer;
            }
        }
    }

    'outer: for &a in &order {
        for &b in &order {
            if sub(a, b) && !sub(values[b] & a, values[a]) {
                substitutability = Some(AxiomWitness {
                    a: set(a),
                    b: set(b),
                    lhs: set(values[b] & a),
                    rhs: set(values[a]),
                });
                break 'outer;
            }
        }
    }

    'outer: for &a in &order {
        for &b in &order {
            let lhs = values[a | b];
            let rhs = values[values[a] | b];
            if lhs != rhs {
                path_independence = Some(AxiomWitness {
                    a: set(a),
                    b: set(b),
                    lhs: set(lhs),
                    rhs: set(rhs),
                });
                break 'outer;
            }
        }
    }

    Ok(PlottReport {
        ground,
        consistency,
        substitutability,
        path_independence,
    })
}
