//! Ground truth by exhaustive search, and seeded random markets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::choice::ChoiceFunction;
use crate::error::{Error, Result};
use crate::instance::{Agent, AgentId, Contract, Instance, Side, TwoAgentProblem};
use crate::set::{ContractId, ContractSet, MAX_CONTRACTS};
use crate::stability::is_stable_by_definition;

/// Largest ground set whose power set is scanned.
pub const ENUMERATION_CAP: usize = 20;

pub(crate) fn check_enumeration_cap(ground: ContractSet) -> Result<()> {
    if ground.len() > ENUMERATION_CAP {
        Err(Error::CapExceeded {
            size: ground.len(),
            cap: ENUMERATION_CAP,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn scan_subsets<T>(
    ground: ContractSet,
    mut f: impl FnMut(ContractSet) -> Option<T>,
) -> Vec<T> {
    ground.subsets().filter_map(&mut f).collect()
}

/// Every stable system, found by checking acceptability and blocking
/// contracts on each subset of `E`. Canonically sorted.
pub fn brute_force_stable(p: &TwoAgentProblem) -> Result<Vec<ContractSet>> {
    check_enumeration_cap(p.ground())?;
    let mut out = scan_subsets(p.ground(), |s| is_stable_by_definition(p, s).then_some(s));
    out.sort_unstable();
    Ok(out)
}

/// Relative weights of the ordered families in generated markets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyMix {
    pub linear: f64,
    pub quota: f64,
}

impl FamilyMix {
    pub const LINEAR_ONLY: FamilyMix = FamilyMix {
        linear: 1.0,
        quota: 0.0,
    };
    pub const MIXED: FamilyMix = FamilyMix {
        linear: 1.0,
        quota: 1.0,
    };
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorParams {
    pub firms: usize,
    pub workers: usize,
    /// Probability that a firm–worker pair has a contract. Clamped to `[0, 1]`.
    pub density: f64,
    pub mix: FamilyMix,
    /// Probability of one extra parallel contract on a linked pair.
    pub parallel: f64,
    /// Stop adding contracts once this many exist.
    pub max_contracts: Option<usize>,
}

impl GeneratorParams {
    pub fn new(firms: usize, workers: usize, density: f64) -> Self {
        GeneratorParams {
            firms,
            workers,
            density,
            mix: FamilyMix::LINEAR_ONLY,
            parallel: 0.0,
            max_contracts: None,
        }
    }
}

fn clamp_prob(p: f64) -> f64 {
    if p.is_nan() {
        0.0
    } else {
        p.clamp(0.0, 1.0)
    }
}

/// A random market, identical for identical `seed` and `params`. Agents are
/// named `f1..`, `w1..`; contracts `e<f>_<w>` with a `b` suffix on a
/// parallel copy.
pub fn random_instance(seed: u64, params: &GeneratorParams) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = clamp_prob(params.density);
    let parallel = clamp_prob(params.parallel);
    let cap = params
        .max_contracts
        .unwrap_or(MAX_CONTRACTS)
        .min(MAX_CONTRACTS);

    let mut agents = Vec::with_capacity(params.firms + params.workers);
    agents.extend((1..=params.firms).map(|i| Agent {
        name: format!("f{i}"),
        side: Side::Firm,
    }));
    agents.extend((1..=params.workers).map(|j| Agent {
        name: format!("w{j}"),
        side: Side::Worker,
    }));

    let mut contracts: Vec<Contract> = Vec::new();
    'pairs: for f in 0..params.firms {
        for w in 0..params.workers {
            if !rng.gen_bool(density) {
                continue;
            }
            let copies = if rng.gen_bool(parallel) { 2 } else { 1 };
            for k in 0..copies {
                if contracts.len() >= cap {
                    break 'pairs;
                }
                contracts.push(Contract {
                    id: ContractId(contracts.len()),
                    name: format!("e{}_{}{}", f + 1, w + 1, if k == 0 { "" } else { "b" }),
                    firm: AgentId(f),
                    worker: AgentId(params.firms + w),
                });
            }
        }
    }

    let total = params.mix.linear.max(0.0) + params.mix.quota.max(0.0);
    let choices = (0..agents.len())
        .map(|v| {
            let mut own: Vec<ContractId> = contracts
                .iter()
                .filter(|c| c.firm.0 == v || c.worker.0 == v)
                .map(|c| c.id)
                .collect();
            if own.is_empty() {
                return ChoiceFunction::trivial();
            }
            own.shuffle(&mut rng);
            let quota = total > 0.0 && rng.gen::<f64>() * total >= params.mix.linear.max(0.0);
            if quota {
                let q = rng.gen_range(1..=own.len());
                ChoiceFunction::quota(q, own)
            } else {
                ChoiceFunction::linear(own)
            }
            .expect("shuffled adjacency is a valid order")
        })
        .collect();

    Instance::new(agents, contracts, choices).expect("generated instances are valid")
}

/// Mixed linear/quota markets with at most 8 contracts, one per seed in
/// `base_seed..base_seed + count`.
pub fn small_corpus(base_seed: u64, count: usize) -> impl Iterator<Item = Instance> {
    (base_seed..base_seed + count as u64).map(|seed| {
        let mut shape = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let params = GeneratorParams {
            firms: shape.gen_range(1..=4),
            workers: shape.gen_range(1..=4),
            density: shape.gen_range(0.3..=1.0),
            mix: FamilyMix::MIXED,
            parallel: 0.2,
            max_contracts: Some(8),
        };
        random_instance(seed, &params)
    })
}

/// Marriage markets (strict orders, one contract per agent) up to 6×6.
pub fn classical_corpus(base_seed: u64, count: usize) -> impl Iterator<Item = Instance> {
    (base_seed..base_seed + count as u64).map(|seed| {
        let mut shape = ChaCha8Rng::seed_from_u64(seed ^ 0x51af_d7ed_558c_cd4b);
        let params = GeneratorParams {
            firms: shape.gen_range(1..=6),
            workers: shape.gen_range(1..=6),
            density: shape.gen_range(0.3..=1.0),
            mix: FamilyMix::LINEAR_ONLY,
            parallel: 0.1,
            max_contracts: None,
        };
        random_instance(seed, &params)
    })
}
