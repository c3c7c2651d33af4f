//! Fixed-width contract identifiers and subsets of the ground set.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

/// Largest ground set a [`ContractSet`] can address.
pub const MAX_CONTRACTS: usize = 128;

/// Dense index of a contract, `0..|E|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContractId(pub usize);

impl fmt::Display for ContractId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A subset of the contract ground set, stored as a 128-bit vector.
///
/// Ordering is canonical: by cardinality first, then lexicographically on
/// the ascending list of member ids. `BTreeSet<ContractSet>` therefore
/// iterates in the order reports are printed.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ContractSet(u128);

impl ContractSet {
    pub const EMPTY: ContractSet = ContractSet(0);

    pub const fn from_bits(bits: u128) -> Self {
        ContractSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(
            n <= MAX_CONTRACTS,
            "ground set of {n} contracts exceeds {MAX_CONTRACTS}"
        );
        if n == MAX_CONTRACTS {
            ContractSet(u128::MAX)
        } else {
            ContractSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(id: ContractId) -> Self {
        assert!(id.0 < MAX_CONTRACTS, "contract id {} out of range", id.0);
        ContractSet(1u128 << id.0)
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(ids: I) -> Self {
        ids.into_iter()
            .fold(Self::EMPTY, |s, i| s.with(ContractId(i)))
    }

    pub fn with(self, id: ContractId) -> Self {
        self | Self::singleton(id)
    }

    pub fn without(self, id: ContractId) -> Self {
        self - Self::singleton(id)
    }

    pub fn contains(self, id: ContractId) -> bool {
        id.0 < MAX_CONTRACTS && self.0 >> id.0 & 1 == 1
    }

    pub fn is_subset(self, other: ContractSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_superset(self, other: ContractSet) -> bool {
        other.is_subset(self)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<ContractId> {
        (self.0 != 0).then(|| ContractId(self.0.trailing_zeros() as usize))
    }

    /// Members in ascending id order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Every subset of `self`, in ascending integer order of the bit vector.
    pub fn subsets(self) -> Subsets {
        Subsets {
            set: self.0,
            next: Some(0),
        }
    }

    /// Every subset of `self`, sorted canonically.
    pub fn canonical_subsets(self) -> Vec<ContractSet> {
        let mut all: Vec<_> = self.subsets().collect();
        all.sort_unstable();
        all
    }

    /// Rank of `self ∩ ground` among the subsets of `ground` when members of
    /// `ground` are renumbered densely `0..|ground|`.
    pub fn compress(self, ground: ContractSet) -> usize {
        let mut out = 0usize;
        for (k, id) in ground.iter().enumerate() {
            if self.contains(id) {
                out |= 1 << k;
            }
        }
        out
    }

    /// Inverse of [`ContractSet::compress`].
    pub fn expand(index: usize, ground: ContractSet) -> ContractSet {
        ground
            .iter()
            .enumerate()
            .filter(|(k, _)| index >> k & 1 == 1)
            .fold(Self::EMPTY, |s, (_, id)| s.with(id))
    }
}

impl Ord for ContractSet {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // The lowest differing id decides: whoever owns it sorts first.
        if self.0 & diff & diff.wrapping_neg() != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for ContractSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for ContractSet {
    type Output = ContractSet;
    fn bitor(self, rhs: Self) -> Self {
        ContractSet(self.0 | rhs.0)
    }
}

impl BitAnd for ContractSet {
    type Output = ContractSet;
    fn bitand(self, rhs: Self) -> Self {
        ContractSet(self.0 & rhs.0)
    }
}

impl Sub for ContractSet {
    type Output = ContractSet;
    fn sub(self, rhs: Self) -> Self {
        ContractSet(self.0 & !rhs.0)
    }
}

impl Not for ContractSet {
    type Output = ContractSet;
    fn not(self) -> Self {
        ContractSet(!self.0)
    }
}

impl FromIterator<ContractId> for ContractSet {
    fn from_iter<T: IntoIterator<Item = ContractId>>(iter: T) -> Self {
        iter.into_iter().fold(Self::EMPTY, |s, id| s.with(id))
    }
}

impl IntoIterator for ContractSet {
    type Item = ContractId;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl fmt::Debug for ContractSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|c| c.0)).finish()
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = ContractId;

    fn next(&mut self) -> Option<ContractId> {
        if self.0 == 0 {
            return None;
        }
        let id = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(ContractId(id))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Carry-rippler enumeration of the subsets of a bit vector.
pub struct Subsets {
    set: u128,
    next: Option<u128>,
}

impl Iterator for Subsets {
    type Item = ContractSet;

    fn next(&mut self) -> Option<ContractSet> {
        let cur = self.next?;
        let succ = cur.wrapping_sub(self.set) & self.set;
        self.next = (succ != 0).then_some(succ);
        Some(ContractSet(cur))
    }
}
