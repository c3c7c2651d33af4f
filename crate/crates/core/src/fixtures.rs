//! Small hand-built markets shared by tests, the lemma suite and the CLI.

use std::collections::BTreeMap;

use crate::format::{
    parse_str, AgentEntry, ChoiceEntry, ContractEntry, InstanceDocument, TableRow,
};
use crate::instance::{Instance, Side};

/// One firm, one worker, two parallel contracts; the firm prefers `e1`, the
/// worker prefers `e2`.
pub const I1_JSON: &str = r#"{
  "agents": [
    {"id": "f", "side": "firm"},
    {"id": "w", "side": "worker"}
  ],
  "contracts": [
    {"id": "e1", "firm": "f", "worker": "w"},
    {"id": "e2", "firm": "f", "worker": "w"}
  ],
  "choices": {
    "f": {"family": "linear", "payload": ["e1", "e2"]},
    "w": {"family": "linear", "payload": ["e2", "e1"]}
  }
}
"#;

/// The 2×2 marriage market with opposed preferences. `eij` joins firm `fi`
/// and worker `wj`.
pub const I3_JSON: &str = r#"{
  "agents": [
    {"id": "f1", "side": "firm"},
    {"id": "f2", "side": "firm"},
    {"id": "w1", "side": "worker"},
    {"id": "w2", "side": "worker"}
  ],
  "contracts": [
    {"id": "e11", "firm": "f1", "worker": "w1"},
    {"id": "e12", "firm": "f1", "worker": "w2"},
    {"id": "e21", "firm": "f2", "worker": "w1"},
    {"id": "e22", "firm": "f2", "worker": "w2"}
  ],
  "choices": {
    "f1": {"family": "linear", "payload": ["e11", "e12"]},
    "f2": {"family": "linear", "payload": ["e22", "e21"]},
    "w1": {"family": "linear", "payload": ["e21", "e11"]},
    "w2": {"family": "linear", "payload": ["e12", "e22"]}
  }
}
"#;

/// Firm `f` takes both contracts or neither (complements).
pub const COMPLEMENTS_JSON: &str = r#"{
  "agents": [
    {"id": "f", "side": "firm"},
    {"id": "w1", "side": "worker"},
    {"id": "w2", "side": "worker"}
  ],
  "contracts": [
    {"id": "e1", "firm": "f", "worker": "w1"},
    {"id": "e2", "firm": "f", "worker": "w2"}
  ],
  "choices": {
    "f": {"family": "table", "payload": [
      {"menu": [], "choice": []},
      {"menu": ["e1"], "choice": []},
      {"menu": ["e2"], "choice": []},
      {"menu": ["e1", "e2"], "choice": ["e1", "e2"]}
    ]},
    "w1": {"family": "linear", "payload": ["e1"]},
    "w2": {"family": "linear", "payload": ["e2"]}
  }
}
"#;

/// Firm `f` accepts either contract alone but rejects both together.
pub const CROWDING_JSON: &str = r#"{
  "agents": [
    {"id": "f", "side": "firm"},
    {"id": "w1", "side": "worker"},
    {"id": "w2", "side": "worker"}
  ],
  "contracts": [
    {"id": "e1", "firm": "f", "worker": "w1"},
    {"id": "e2", "firm": "f", "worker": "w2"}
  ],
  "choices": {
    "f": {"family": "table", "payload": [
      {"menu": [], "choice": []},
      {"menu": ["e1"], "choice": ["e1"]},
      {"menu": ["e2"], "choice": ["e2"]},
      {"menu": ["e1", "e2"], "choice": []}
    ]},
    "w1": {"family": "linear", "payload": ["e1"]},
    "w2": {"family": "linear", "payload": ["e2"]}
  }
}
"#;

/// Firm `f` picks from pairs cyclically: e1 over e2, e2 over e3, e3 over e1.
pub const CYCLIC_JSON: &str = r#"{
  "agents": [
    {"id": "f", "side": "firm"},
    {"id": "w1", "side": "worker"},
    {"id": "w2", "side": "worker"},
    {"id": "w3", "side": "worker"}
  ],
  "contracts": [
    {"id": "e1", "firm": "f", "worker": "w1"},
    {"id": "e2", "firm": "f", "worker": "w2"},
    {"id": "e3", "firm": "f", "worker": "w3"}
  ],
  "choices": {
    "f": {"family": "table", "payload": [
      {"menu": [], "choice": []},
      {"menu": ["e1"], "choice": ["e1"]},
      {"menu": ["e2"], "choice": ["e2"]},
      {"menu": ["e3"], "choice": ["e3"]},
      {"menu": ["e1", "e2"], "choice": ["e1"]},
      {"menu": ["e1", "e3"], "choice": ["e3"]},
      {"menu": ["e2", "e3"], "choice": ["e2"]},
      {"menu": ["e1", "e2", "e3"], "choice": ["e1"]}
    ]},
    "w1": {"family": "linear", "payload": ["e1"]},
    "w2": {"family": "linear", "payload": ["e2"]},
    "w3": {"family": "linear", "payload": ["e3"]}
  }
}
"#;

/// Documents whose firm table violates the Plott axioms.
pub const NEGATIVE_TABLES_JSON: [&str; 3] = [COMPLEMENTS_JSON, CROWDING_JSON, CYCLIC_JSON];

/// Firm `f` never takes `e2`; otherwise an ordinary Plott table.
pub const UNACCEPTABLE_TABLE_JSON: &str = r#"{
  "agents": [
    {"id": "f", "side": "firm"},
    {"id": "w", "side": "worker"}
  ],
  "contracts": [
    {"id": "e1", "firm": "f", "worker": "w"},
    {"id": "e2", "firm": "f", "worker": "w"}
  ],
  "choices": {
    "f": {"family": "table", "payload": [
      {"menu": [], "choice": []},
      {"menu": ["e1"], "choice": ["e1"]},
      {"menu": ["e2"], "choice": []},
      {"menu": ["e1", "e2"], "choice": ["e1"]}
    ]},
    "w": {"family": "linear", "payload": ["e2", "e1"]}
  }
}
"#;

pub fn i1() -> Instance {
    parse_str(I1_JSON).expect("I1 fixture is valid")
}

pub fn i3() -> Instance {
    parse_str(I3_JSON).expect("I3 fixture is valid")
}

/// Choice of maximal elements under a partial order given as
/// `(better, worse)` pairs, tabulated over `ground`.
fn maximal_table(ground: &[&str], dominates: &[(&str, &str)]) -> ChoiceEntry {
    let n = ground.len();
    let rows = (0..1usize << n)
        .map(|mask| {
            let menu: Vec<&str> = (0..n)
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| ground[k])
                .collect();
            let choice = menu
                .iter()
                .filter(|x| {
                    !dominates
                        .iter()
                        .any(|(hi, lo)| lo == *x && menu.contains(hi))
                })
                .map(|x| x.to_string())
                .collect();
            TableRow {
                menu: menu.iter().map(|x| x.to_string()).collect(),
                choice,
            }
        })
        .collect();
    ChoiceEntry::Table(rows)
}

fn doc(
    agents: &[(&str, Side)],
    contracts: &[(&str, &str, &str)],
    choices: Vec<(&str, ChoiceEntry)>,
) -> InstanceDocument {
    InstanceDocument {
        agents: agents
            .iter()
            .map(|(id, side)| AgentEntry {
                id: id.to_string(),
                side: *side,
            })
            .collect(),
        contracts: contracts
            .iter()
            .map(|(id, f, w)| ContractEntry {
                id: id.to_string(),
                firm: f.to_string(),
                worker: w.to_string(),
            })
            .collect(),
        choices: choices
            .into_iter()
            .map(|(a, c)| (a.to_string(), c))
            .collect::<BTreeMap<_, _>>(),
    }
}

fn linear(order: &[&str]) -> ChoiceEntry {
    ChoiceEntry::Linear(order.iter().map(|s| s.to_string()).collect())
}

/// Markets whose agents use Plott tables that no linear order or quota
/// reproduces.
pub fn table_corpus() -> Vec<Instance> {
    use Side::{Firm, Worker};
    let docs = vec![
        // Firm f ranks e1 above e3; e2 is incomparable to both.
        doc(
            &[
                ("f", Firm),
                ("g", Firm),
                ("w1", Worker),
                ("w2", Worker),
                ("w3", Worker),
            ],
            &[
                ("e1", "f", "w1"),
                ("e2", "f", "w2"),
                ("e3", "f", "w3"),
                ("e4", "g", "w1"),
                ("e5", "g", "w3"),
            ],
            vec![
                ("f", maximal_table(&["e1", "e2", "e3"], &[("e1", "e3")])),
                ("g", linear(&["e5", "e4"])),
                ("w1", linear(&["e4", "e1"])),
                ("w2", linear(&["e2"])),
                ("w3", linear(&["e3", "e5"])),
            ],
        ),
        // One firm with two incomparable chains over two workers.
        doc(
            &[("f", Firm), ("w1", Worker), ("w2", Worker)],
            &[
                ("e1", "f", "w1"),
                ("e2", "f", "w1"),
                ("e3", "f", "w2"),
                ("e4", "f", "w2"),
            ],
            vec![
                (
                    "f",
                    maximal_table(&["e1", "e2", "e3", "e4"], &[("e1", "e3"), ("e2", "e4")]),
                ),
                ("w1", linear(&["e2", "e1"])),
                (
                    "w2",
                    ChoiceEntry::Quota {
                        q: 2,
                        priority: vec!["e3".into(), "e4".into()],
                    },
                ),
            ],
        ),
        // Tables on both sides over a 2×2 market with a parallel contract.
        doc(
            &[("f1", Firm), ("f2", Firm), ("w1", Worker), ("w2", Worker)],
            &[
                ("a", "f1", "w1"),
                ("b", "f1", "w2"),
                ("c", "f2", "w1"),
                ("d", "f2", "w2"),
                ("d2", "f2", "w2"),
            ],
            vec![
                ("f1", maximal_table(&["a", "b"], &[])),
                (
                    "f2",
                    maximal_table(&["c", "d", "d2"], &[("d", "c"), ("d2", "c")]),
                ),
                ("w1", linear(&["c", "a"])),
                ("w2", maximal_table(&["b", "d", "d2"], &[("b", "d2")])),
            ],
        ),
    ];
    docs.into_iter()
        .map(|d| d.build().expect("table corpus is Plott-valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        assert_eq!(i1().num_contracts(), 2);
        assert_eq!(i3().num_contracts(), 4);
        assert_eq!(table_corpus().len(), 3);
        assert!(parse_str(UNACCEPTABLE_TABLE_JSON).is_ok());
    }
}
