//! Exhaustive checks of every structural property the solvers rely on,
//! run over a corpus of two-agent problems.

use std::fmt;

use crate::ample::{ag_solve, ag_step, ample_from_stable, enumerate_stable_via_ample, is_ample};
use crate::choice::{check_cap, validate_plott, ChoiceFunction};
use crate::desirability::desirable;
use crate::error::Result;
use crate::instance::TwoAgentProblem;
use crate::modest::{
    ample_to_modest, is_modest, modest_from_stable, modest_to_ample, yang_solve, yang_step,
};
use crate::oracle::brute_force_stable;
use crate::set::ContractSet;
use crate::stability::{is_stable, is_stable_by_definition, is_stable_prop1};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma {
    PathIndependence,
    Lemma1,
    Lemma1Consequence,
    Lemma2Antimonotone,
    Lemma2Choice,
    Lob,
    Proposition1,
    Lemma3,
    Lemma4,
    Lemma5,
    Lemma6,
    Lemma6Descent,
    AmpleToModest,
    ModestToAmple,
    AnyStable,
    Existence,
    Enumeration,
    Termination,
}

impl Lemma {
    pub const ALL: [Lemma; 18] = [
        Lemma::PathIndependence,
        Lemma::Lemma1,
        Lemma::Lemma1Consequence,
        Lemma::Lemma2Antimonotone,
        Lemma::Lemma2Choice,
        Lemma::Lob,
        Lemma::Proposition1,
        Lemma::Lemma3,
        Lemma::Lemma4,
        Lemma::Lemma5,
        Lemma::Lemma6,
        Lemma::Lemma6Descent,
        Lemma::AmpleToModest,
        Lemma::ModestToAmple,
        Lemma::AnyStable,
        Lemma::Existence,
        Lemma::Enumeration,
        Lemma::Termination,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Lemma::PathIndependence => "Plott",
            Lemma::Lemma1 => "Lemma 1",
            Lemma::Lemma1Consequence => "Lemma 1 (consequence)",
            Lemma::Lemma2Antimonotone => "Lemma 2(1)",
            Lemma::Lemma2Choice => "Lemma 2(2)",
            Lemma::Lob => "Löb identity",
            Lemma::Proposition1 => "Proposition 1",
            Lemma::Lemma3 => "Lemma 3",
            Lemma::Lemma4 => "Lemma 4",
            Lemma::Lemma5 => "Lemma 5",
            Lemma::Lemma6 => "Lemma 6",
            Lemma::Lemma6Descent => "Lemma 6 (descent)",
            Lemma::AmpleToModest => "Conclusion (ample→modest)",
            Lemma::ModestToAmple => "Conclusion (modest→ample)",
            Lemma::AnyStable => "Any stable system",
            Lemma::Existence => "Existence",
            Lemma::Enumeration => "Enumeration",
            Lemma::Termination => "Termination",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Lemma::PathIndependence => "F and W are consistent, substitutable, path independent",
            Lemma::Lemma1 => "D(A) ∩ A = C(A)",
            Lemma::Lemma1Consequence => "A = C(A) ⇔ A ⊆ D(A)",
            Lemma::Lemma2Antimonotone => "A ⊆ B ⇒ D(B) ⊆ D(A)",
            Lemma::Lemma2Choice => "D(A) = D(C(A))",
            Lemma::Lob => "D(A) = D(A ∩ D(A))",
            Lemma::Proposition1 => "S acceptable and unblocked ⇔ S = D_F(S)∩D_W(S) ⇔ S = W(D_F(S))",
            Lemma::Lemma3 => "B ample, W(B) = F(W(B)) ⇒ W(B) stable",
            Lemma::Lemma4 => "B ample ⇒ (B∖W(B)) ∪ F(W(B)) ample and ⊆ B",
            Lemma::Lemma5 => "Q modest ⇒ F(Q) = Q = W(Q)",
            Lemma::Lemma6 => "Q modest ⇒ F(W(D_F(Q))) modest",
            Lemma::Lemma6Descent => "Q modest ⇒ D_F(F(W(D_F(Q)))) ⊆ D_F(Q)",
            Lemma::AmpleToModest => "B ample ⇒ F(W(B)) modest",
            Lemma::ModestToAmple => "Q modest ⇒ D_F(Q) ample",
            Lemma::AnyStable => "every stable S is reached from D_F(S) and from S",
            Lemma::Existence => "a stable system exists; both solvers return one",
            Lemma::Enumeration => "ample-based enumeration = brute force",
            Lemma::Termination => "descent ≤ |E| steps, ascent ≤ |E|+1 steps",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaOutcome {
    pub lemma: Lemma,
    pub checks: u64,
    pub failure: Option<String>,
}

impl LemmaOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

struct Tally {
    outcomes: Vec<LemmaOutcome>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            outcomes: Lemma::ALL
                .iter()
                .map(|&lemma| LemmaOutcome {
                    lemma,
                    checks: 0,
                    failure: None,
                })
                .collect(),
        }
    }

    fn check(&mut self, lemma: Lemma, ok: bool, detail: impl FnOnce() -> String) {
        let o = &mut self.outcomes[lemma as usize];
        o.checks += 1;
        if !ok && o.failure.is_none() {
            o.failure = Some(detail());
        }
    }
}

fn desirability_laws(t: &mut Tally, label: &str, c: &ChoiceFunction) {
    let ground = c.ground();
    let n = ground.len();
    let sets: Vec<ContractSet> = (0..1usize << n)
        .map(|i| ContractSet::expand(i, ground))
        .collect();
    let d: Vec<ContractSet> = sets.iter().map(|&a| desirable(c, a)).collect();
    let at = |s: ContractSet| d[s.compress(ground)];
    for (i, &a) in sets.iter().enumerate() {
        let chosen = c.choose(a);
        t.check(Lemma::Lemma1, d[i] & a == chosen, || {
            format!(
                "{label}: D({a:?}) ∩ A = {:?} but C(A) = {chosen:?}",
                d[i] & a
            )
        });
        t.check(
            Lemma::Lemma1Consequence,
            (a == chosen) == a.is_subset(d[i]),
            || format!("{label}: A = {a:?}, C(A) = {chosen:?}, D(A) = {:?}", d[i]),
        );
        t.check(Lemma::Lemma2Choice, d[i] == at(chosen), || {
            format!(
                "{label}: D({a:?}) = {:?} ≠ D(C(A)) = {:?}",
                d[i],
                at(chosen)
            )
        });
        t.check(Lemma::Lob, d[i] == at(a & d[i]), || {
            format!(
                "{label}: D({a:?}) = {:?} ≠ D(A∩D(A)) = {:?}",
                d[i],
                at(a & d[i])
            )
        });
        for sub in a.subsets() {
            let ds = at(sub);
            t.check(Lemma::Lemma2Antimonotone, d[i].is_subset(ds), || {
                format!(
                    "{label}: {sub:?} ⊆ {a:?} but D(B) = {:?} ⊄ D(A) = {ds:?}",
                    d[i]
                )
            });
        }
    }
}

/// Runs every property on one problem. Needs `|E|` within the exhaustive
/// cap.
pub fn check_problem(p: &TwoAgentProblem) -> Result<Vec<LemmaOutcome>> {
    let mut t = Tally::new();
    check_into(&mut t, p)?;
    Ok(t.outcomes)
}

fn check_into(t: &mut Tally, p: &TwoAgentProblem) -> Result<()> {
    let ground = p.ground();
    check_cap(ground)?;
    let n = ground.len();

    for (label, c) in [("F", p.firm()), ("W", p.worker())] {
        let report = validate_plott(c)?;
        t.check(Lemma::PathIndependence, report.passed(), || {
            format!("{label}: {report}")
        });
        desirability_laws(t, label, c);
    }

    let stable = brute_force_stable(p)?;
    for s in ground.subsets() {
        let (def, eq, prop) = (
            is_stable_by_definition(p, s),
            is_stable(p, s),
            is_stable_prop1(p, s),
        );
        t.check(Lemma::Proposition1, def == eq && eq == prop, || {
            format!("S = {s:?}: definition {def}, D_F∩D_W {eq}, W(D_F) {prop}")
        });

        let b = s;
        if is_ample(p, b) {
            let wb = p.worker().choose(b);
            if p.firm().choose(wb) == wb {
                t.check(Lemma::Lemma3, is_stable(p, wb), || {
                    format!("B = {b:?} ample with W(B) = F(W(B)) = {wb:?}, which is unstable")
                });
            }
            let next = ag_step(p, b);
            t.check(
                Lemma::Lemma4,
                next.is_subset(b) && is_ample(p, next),
                || format!("B = {b:?} ample, B' = {next:?}"),
            );
            let q = ample_to_modest(p, b)?;
            t.check(Lemma::AmpleToModest, is_modest(p, q), || {
                format!("B = {b:?} ample, F(W(B)) = {q:?} not modest")
            });
        }

        let q = s;
        if is_modest(p, q) {
            t.check(
                Lemma::Lemma5,
                p.firm().choose(q) == q && p.worker().choose(q) == q,
                || format!("Q = {q:?} modest but not acceptable"),
            );
            let next = yang_step(p, q)?;
            t.check(Lemma::Lemma6, is_modest(p, next), || {
                format!("Q = {q:?} modest, Q' = {next:?} not modest")
            });
            let (dq, dn) = (desirable(p.firm(), q), desirable(p.firm(), next));
            t.check(Lemma::Lemma6Descent, dn.is_subset(dq), || {
                format!("Q = {q:?}: D_F(Q') = {dn:?} ⊄ D_F(Q) = {dq:?}")
            });
            let b = modest_to_ample(p, q)?;
            t.check(Lemma::ModestToAmple, is_ample(p, b), || {
                format!("Q = {q:?} modest, D_F(Q) = {b:?} not ample")
            });
        }
    }

    for &s in &stable {
        let via_ample = ag_solve(p, Some(ample_from_stable(p, s)?))?.stable;
        let via_modest = yang_solve(p, Some(modest_from_stable(p, s)?))?.stable;
        t.check(Lemma::AnyStable, via_ample == s && via_modest == s, || {
            format!("S = {s:?}: descent gives {via_ample:?}, ascent gives {via_modest:?}")
        });
    }

    let ag = ag_solve(p, None)?;
    let yang = yang_solve(p, None)?;
    t.check(
        Lemma::Existence,
        !stable.is_empty() && stable.contains(&ag.stable) && stable.contains(&yang.stable),
        || {
            format!(
                "stable = {stable:?}, descent {:?}, ascent {:?}",
                ag.stable, yang.stable
            )
        },
    );
    let enumerated = enumerate_stable_via_ample(p)?;
    t.check(Lemma::Enumeration, enumerated == stable, || {
        format!("ample enumeration {enumerated:?} vs brute force {stable:?}")
    });
    t.check(
        Lemma::Termination,
        ag.steps() <= n && yang.steps() <= n + 1,
        || {
            format!(
                "|E| = {n}: descent {} steps, ascent {} steps",
                ag.steps(),
                yang.steps()
            )
        },
    );
    Ok(())
}

/// Runs the suite over every problem, keeping the first failure per lemma
/// (prefixed with the problem's position).
pub fn run_suite<'a>(
    problems: impl IntoIterator<Item = &'a TwoAgentProblem>,
) -> Result<Vec<LemmaOutcome>> {
    let mut total = Tally::new();
    for (i, p) in problems.into_iter().enumerate() {
        let mut t = Tally::new();
        check_into(&mut t, p)?;
        for (acc, o) in total.outcomes.iter_mut().zip(t.outcomes) {
            acc.checks += o.checks;
            if acc.failure.is_none() {
                acc.failure = o.failure.map(|f| format!("problem {i}: {f}"));
            }
        }
    }
    Ok(total.outcomes)
}
