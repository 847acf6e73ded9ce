//! Actual precedence, consistency of contingency coordinates, and pruning.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::GameError;
use crate::game::SpacetimeGame;
use crate::histories::{is_complete, is_history};
use crate::model::DecisionPointId;
use crate::precedence::PrecedenceRelation;

/// `p` actually precedes `q`: `p ≺ q` and `γ_p` is a restriction of `γ_q`.
pub fn actually_precedes(
    g: &SpacetimeGame,
    p: &DecisionPointId,
    q: &DecisionPointId,
) -> Result<bool, GameError> {
    g.require(p)?;
    g.require(q)?;
    Ok(actually_precedes_known(g, p, q))
}

fn actually_precedes_known(g: &SpacetimeGame, p: &DecisionPointId, q: &DecisionPointId) -> bool {
    g.precedes(p, q)
        && match (g.contingency(p), g.contingency(q)) {
            (Some(gp), Some(gq)) => gp.is_restriction_of(gq),
            _ => false,
        }
}

/// The whole actual-precedence relation.
pub fn actual_precedence(g: &SpacetimeGame) -> PrecedenceRelation {
    g.precedence()
        .pairs()
        .filter(|(p, q)| actually_precedes_known(g, p, q))
        .cloned()
        .collect()
}

/// A violation of "`γ_q` binds `p` iff `p` actually precedes `q`".
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    /// The point whose contingency coordinates are wrong.
    pub point: DecisionPointId,
    /// The point that is wrongly bound or wrongly left unbound.
    pub other: DecisionPointId,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConsistencyReport {
    /// `γ_point` binds `other` although `other` does not actually precede it.
    pub over_binding: Vec<Violation>,
    /// `other` actually precedes `point` but `γ_point` leaves it unbound.
    pub under_binding: Vec<Violation>,
}

impl ConsistencyReport {
    pub fn is_empty(&self) -> bool {
        self.over_binding.is_empty() && self.under_binding.is_empty()
    }

    /// Points with at least one violation, sorted.
    pub fn offending_points(&self) -> BTreeSet<DecisionPointId> {
        self.over_binding
            .iter()
            .chain(&self.under_binding)
            .map(|v| v.point.clone())
            .collect()
    }
}

impl fmt::Display for ConsistencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "consistent");
        }
        let mut first = true;
        for (kind, list) in [("over-binding", &self.over_binding), ("under-binding", &self.under_binding)] {
            for v in list {
                if !first {
                    writeln!(f)?;
                }
                first = false;
                write!(f, "{kind} at ({}, {})", v.point, v.other)?;
            }
        }
        Ok(())
    }
}

/// Lists every pair violating consistency.
pub fn check_consistency(g: &SpacetimeGame) -> ConsistencyReport {
    let mut report = ConsistencyReport::default();
    for q in g.points() {
        let gamma = g.contingency(&q.id).expect("point of the game");
        for p in g.points() {
            if p.id == q.id {
                continue;
            }
            let bound = gamma.binds(&p.id);
            let actual = actually_precedes_known(g, &p.id, &q.id);
            let v = || Violation {
                point: q.id.clone(),
                other: p.id.clone(),
            };
            if bound && !actual {
                report.over_binding.push(v());
            } else if actual && !bound {
                report.under_binding.push(v());
            }
        }
    }
    report
}

/// Removes decision points with inconsistent contingency coordinates, and
/// then points whose contingency binds a removed point, until the game is
/// consistent. Payoff entries are restricted to the surviving points and
/// kept only when they key a complete history of the pruned game.
pub fn prune_unreachable(g: &SpacetimeGame) -> SpacetimeGame {
    let mut current = g.clone();
    let mut removed: BTreeSet<DecisionPointId> = BTreeSet::new();
    loop {
        let mut doomed = check_consistency(&current).offending_points();
        if doomed.is_empty() {
            break;
        }
        // cascade: contingency mentioning a doomed point
        loop {
            let more: Vec<DecisionPointId> = current
                .points()
                .iter()
                .filter(|p| !doomed.contains(&p.id))
                .filter(|p| {
                    current
                        .contingency(&p.id)
                        .is_some_and(|gm| gm.points().any(|b| doomed.contains(b)))
                })
                .map(|p| p.id.clone())
                .collect();
            if more.is_empty() {
                break;
            }
            doomed.extend(more);
        }
        let mut b = current.to_builder().clear_payoffs();
        for id in &doomed {
            b = b.remove_point(id);
        }
        removed.extend(doomed);
        current = b
            .build_raw()
            .expect("removing points keeps a structurally valid game");
    }
    if removed.is_empty() {
        return current;
    }

    let mut b = current.to_builder().clear_payoffs();
    let mut kept = BTreeSet::new();
    for (h, v) in g.payoffs() {
        let h2 = h.restrict(|p| !removed.contains(p));
        if kept.contains(&h2) || !is_history(&current, &h2) || !is_complete(&current, &h2) {
            continue;
        }
        kept.insert(h2.clone());
        b = b.payoff(h2, v.clone());
    }
    b.build_raw().expect("restricted payoffs are well-formed")
}
