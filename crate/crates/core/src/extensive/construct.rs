//! From a spacetime game to the equivalent extensive-form game.

use std::collections::BTreeMap;

use crate::assignment::RawAssignment;
use crate::error::GameError;
use crate::extensive::efg::{ChoiceNode, ExtensiveFormGame, InfoSet, NodeRef, Outcome};
use crate::game::SpacetimeGame;
use crate::model::DecisionPointId;
use crate::precedence::{is_linear_extension, linear_extensions, topological_order};

/// A total order of all decision points extending `≺`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Linearization(Vec<DecisionPointId>);

impl Linearization {
    /// Checks that `order` lists every point of `g` once and extends `≺`.
    pub fn new(g: &SpacetimeGame, order: Vec<DecisionPointId>) -> Result<Self, GameError> {
        if !is_linear_extension(&order, &g.point_ids(), g.precedence()) {
            let shown: Vec<String> = order.iter().map(|p| p.to_string()).collect();
            return Err(GameError::InvalidLinearization(shown.join(", ")));
        }
        Ok(Linearization(order))
    }

    pub fn order(&self) -> &[DecisionPointId] {
        &self.0
    }

    pub fn into_order(self) -> Vec<DecisionPointId> {
        self.0
    }
}

/// The topological order that breaks ties by `(agent, index)`.
pub fn linearize(g: &SpacetimeGame) -> Linearization {
    Linearization(topological_order(&g.point_ids(), g.precedence()).expect("precedence is acyclic"))
}

/// Every linearization, lexicographically by `(agent, index)`, up to `cap`.
/// The flag is set when more exist.
pub fn enumerate_linearizations(g: &SpacetimeGame, cap: usize) -> (Vec<Linearization>, bool) {
    let (orders, truncated) = linear_extensions(&g.point_ids(), g.precedence(), cap);
    (orders.into_iter().map(Linearization).collect(), truncated)
}

/// The first point of `order` that `h` leaves unbound but makes reachable.
fn next_point<'a>(g: &SpacetimeGame, order: &'a [DecisionPointId], h: &RawAssignment) -> Option<&'a DecisionPointId> {
    order.iter().find(|p| !h.binds(p) && g.is_reachable_under(p, h))
}

/// The extensive form together with the histories behind its nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Constructed {
    pub game: ExtensiveFormGame,
    /// Prefix history of each choice node.
    pub node_histories: Vec<RawAssignment>,
    /// Decision point deciding at each choice node.
    pub node_points: Vec<DecisionPointId>,
    /// Complete history of each outcome.
    pub outcome_histories: Vec<RawAssignment>,
}

/// Builds the game tree by forward traversal along `lin`. Choice nodes are
/// the incomplete prefix histories in depth-first order; each decision
/// point becomes one information set.
pub fn construct_extensive(g: &SpacetimeGame, lin: &Linearization) -> Constructed {
    let order = lin.order();
    let canonical = g.canonical_order();
    let mut nodes: Vec<ChoiceNode> = Vec::new();
    let mut node_histories = Vec::new();
    let mut node_points = Vec::new();
    let mut outcomes: Vec<Outcome> = Vec::new();
    let mut outcome_histories = Vec::new();

    // (history, parent slot to patch)
    let mut stack: Vec<(RawAssignment, Option<(usize, usize)>)> = vec![(RawAssignment::new(), None)];
    while let Some((h, parent)) = stack.pop() {
        let target = match next_point(g, order, &h) {
            None => {
                let payoffs = g
                    .payoff(&h)
                    .map(<[f64]>::to_vec)
                    .unwrap_or_else(|| vec![f64::NAN; g.agents().len()]);
                outcomes.push(Outcome {
                    label: h.render(&canonical),
                    payoffs,
                });
                outcome_histories.push(h);
                NodeRef::Outcome(outcomes.len() - 1)
            }
            Some(p) => {
                let point = g.point(p).expect("order lists points of the game");
                let idx = nodes.len();
                nodes.push(ChoiceNode {
                    label: h.render(&canonical),
                    player: point.agent().clone(),
                    actions: point.actions.clone(),
                    successors: Vec::with_capacity(point.actions.len()),
                });
                for (k, a) in point.actions.iter().enumerate().rev() {
                    stack.push((h.clone().with(p.clone(), a.clone()), Some((idx, k))));
                }
                node_histories.push(h);
                node_points.push(p.clone());
                NodeRef::Choice(idx)
            }
        };
        if let Some((n, k)) = parent {
            let action = nodes[n].actions[k].clone();
            nodes[n].successors.push((action, target));
        }
    }

    let mut by_point: BTreeMap<&DecisionPointId, Vec<usize>> = BTreeMap::new();
    for (i, p) in node_points.iter().enumerate() {
        by_point.entry(p).or_default().push(i);
    }
    let info_sets = by_point
        .into_iter()
        .map(|(p, nodes)| InfoSet {
            label: p.to_string(),
            player: p.agent.clone(),
            nodes,
        })
        .collect();
    Constructed {
        game: ExtensiveFormGame {
            agents: g.agents().to_vec(),
            actions: g.actions().to_vec(),
            nodes,
            outcomes,
            info_sets,
        },
        node_histories,
        node_points,
        outcome_histories,
    }
}

/// The extensive-form game with imperfect information equivalent to `g`.
pub fn to_extensive(g: &SpacetimeGame, lin: &Linearization) -> ExtensiveFormGame {
    construct_extensive(g, lin).game
}

/// Incomplete histories that are prefixes of complete histories along
/// `lin`, in depth-first order starting with the empty history.
pub fn prefix_histories(g: &SpacetimeGame, lin: &Linearization) -> Vec<RawAssignment> {
    construct_extensive(g, lin).node_histories
}
