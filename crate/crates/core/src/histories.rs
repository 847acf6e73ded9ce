//! Histories: raw assignments that extend the contingency coordinates of
//! every point they bind.

use crate::assignment::RawAssignment;
use crate::game::SpacetimeGame;
use crate::model::DecisionPointId;

/// A history together with its completeness flag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct History {
    pub assignment: RawAssignment,
    pub complete: bool,
}

impl History {
    /// Checks `assignment` against `g`; `None` if it is not a history.
    pub fn new(g: &SpacetimeGame, assignment: RawAssignment) -> Option<Self> {
        if !is_history(g, &assignment) {
            return None;
        }
        let complete = is_complete(g, &assignment);
        Some(History { assignment, complete })
    }
}

/// For every bound point `p`, the assignment agrees with `γ_p`.
pub fn is_history(g: &SpacetimeGame, a: &RawAssignment) -> bool {
    a.iter().all(|(p, action)| match g.point(p) {
        Some(point) => point.offers(action) && g.is_reachable_under(p, a),
        None => false,
    })
}

/// No unbound point has its contingency coordinates satisfied.
///
/// Satisfaction is monotone in the assignment, so a history is complete iff
/// no single extra binding yields a history. `h` must be a history.
pub fn is_complete(g: &SpacetimeGame, h: &RawAssignment) -> bool {
    g.points()
        .iter()
        .all(|p| h.binds(&p.id) || !g.is_reachable_under(&p.id, h))
}

/// All complete histories, in lexicographic order along the canonical point
/// order with actions in declaration order.
pub fn enumerate_complete_histories(g: &SpacetimeGame) -> Vec<RawAssignment> {
    enumerate_along(g, &g.canonical_order())
}

/// All complete histories by forward traversal of `order`, which must be a
/// linearization of `g`.
pub fn enumerate_along(g: &SpacetimeGame, order: &[DecisionPointId]) -> Vec<RawAssignment> {
    let mut out = Vec::new();
    // (next position in `order`, assignment so far)
    let mut stack: Vec<(usize, RawAssignment)> = vec![(0, RawAssignment::new())];
    while let Some((mut pos, mut h)) = stack.pop() {
        // skip points whose contingency fails; they stay unbound
        while pos < order.len() && !g.is_reachable_under(&order[pos], &h) {
            pos += 1;
        }
        if pos == order.len() {
            out.push(h);
            continue;
        }
        let p = &order[pos];
        let actions = &g.point(p).expect("order lists points of the game").actions;
        for a in actions.iter().skip(1).rev() {
            stack.push((pos + 1, h.clone().with(p.clone(), a.clone())));
        }
        h.bind(p.clone(), actions[0].clone());
        stack.push((pos + 1, h));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::assign;
    use crate::fixtures;
    use crate::model::{act, pid};

    #[test]
    fn is_history_examples() {
        let g = fixtures::running();
        assert!(is_history(&g, &RawAssignment::new()));
        assert!(is_history(&g, &assign(&[("A.1", "a"), ("B.1", "c"), ("J.1", "g"), ("H.1", "i")])));
        assert!(!is_history(&g, &assign(&[("B.1", "c")])));
        // action not offered at the point
        assert!(!is_history(&g, &assign(&[("A.1", "c")])));
    }

    #[test]
    fn is_complete_examples() {
        let g = fixtures::running();
        assert!(is_complete(&g, &assign(&[("A.1", "a"), ("B.1", "c"), ("J.1", "g"), ("H.1", "i")])));
        assert!(!is_complete(&g, &assign(&[("A.1", "a"), ("B.1", "c")])));
        let epr = fixtures::epr();
        let h = assign(&[("A.1", "c"), ("U.1", "g"), ("B.1", "c"), ("V.1", "g")]);
        assert!(is_history(&epr, &h) && is_complete(&epr, &h));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_complete_histories(&fixtures::running()).len(), 14);
        let epr = fixtures::epr();
        let all = enumerate_complete_histories(&epr);
        assert_eq!(all.len(), 16);
        assert_eq!(epr.render(&all[0]), "c,g,-,c,g,-");
        assert!(all.contains(&assign(&[("A.1", "f"), ("U.2", "s"), ("B.1", "f"), ("V.2", "s")])));

        let single = SpacetimeGame::builder()
            .point(pid("A.1"), vec![act("x"), act("y")], None)
            .build()
            .unwrap_err();
        // the payoff table is empty, so full validation fails on totality
        assert!(matches!(single, crate::error::GameError::MissingPayoff(_)));
        let single = SpacetimeGame::builder()
            .point(pid("A.1"), vec![act("x"), act("y")], None)
            .build_raw()
            .unwrap();
        assert_eq!(enumerate_complete_histories(&single).len(), 2);
    }

    #[test]
    fn enumeration_is_sorted_and_duplicate_free() {
        let g = fixtures::running();
        let order = g.canonical_order();
        let all = enumerate_complete_histories(&g);
        let keys: Vec<String> = all.iter().map(|h| h.render(&order)).collect();
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
        assert_eq!(keys[0], "a,c,-,g,i,-");
    }
}
