//! The spacetime game aggregate and its builder.

use std::collections::{BTreeMap, BTreeSet};

use crate::assignment::RawAssignment;
use crate::consistency::check_consistency;
use crate::error::GameError;
use crate::geometry::{Event, Metric};
use crate::histories::{enumerate_complete_histories, is_complete, is_history};
use crate::model::{ActionId, AgentId, DecisionPoint, DecisionPointId};
use crate::precedence::{build_precedence, is_linear_extension, topological_order, PrecedenceRelation};

/// A spacetime game with perfect information.
///
/// Agents are kept sorted by symbol and decision points by `(agent, index)`.
/// Payoff vectors are indexed like [`SpacetimeGame::agents`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpacetimeGame {
    agents: Vec<AgentId>,
    actions: Vec<ActionId>,
    points: Vec<DecisionPoint>,
    index: BTreeMap<DecisionPointId, usize>,
    declared_order: Vec<DecisionPointId>,
    metric: Option<Metric>,
    /// Transitively closed.
    precedence: PrecedenceRelation,
    /// Pairs as declared, in DAG mode.
    declared_precedence: Option<PrecedenceRelation>,
    contingency: Vec<RawAssignment>,
    payoffs: BTreeMap<RawAssignment, Vec<f64>>,
    allow_spacelike_same_agent: bool,
}

impl SpacetimeGame {
    pub fn builder() -> GameBuilder {
        GameBuilder::default()
    }

    pub fn agents(&self) -> &[AgentId] {
        &self.agents
    }

    pub fn agent_index(&self, agent: &AgentId) -> Option<usize> {
        self.agents.binary_search(agent).ok()
    }

    pub fn actions(&self) -> &[ActionId] {
        &self.actions
    }

    /// Decision points sorted by `(agent, index)`.
    pub fn points(&self) -> &[DecisionPoint] {
        &self.points
    }

    pub fn point_ids(&self) -> Vec<DecisionPointId> {
        self.points.iter().map(|p| p.id.clone()).collect()
    }

    pub fn point(&self, id: &DecisionPointId) -> Option<&DecisionPoint> {
        self.index.get(id).map(|&i| &self.points[i])
    }

    pub(crate) fn require(&self, id: &DecisionPointId) -> Result<&DecisionPoint, GameError> {
        self.point(id).ok_or_else(|| GameError::UnknownPoint(id.clone()))
    }

    pub fn points_of<'a>(&'a self, agent: &'a AgentId) -> impl Iterator<Item = &'a DecisionPoint> + 'a {
        self.points.iter().filter(move |p| p.agent() == agent)
    }

    pub fn metric(&self) -> Option<&Metric> {
        self.metric.as_ref()
    }

    /// Whether precedence was derived from spacetime locations.
    pub fn has_locations(&self) -> bool {
        self.metric.is_some()
    }

    /// The full (transitively closed) timelike precedence `≺`.
    pub fn precedence(&self) -> &PrecedenceRelation {
        &self.precedence
    }

    pub fn declared_precedence(&self) -> Option<&PrecedenceRelation> {
        self.declared_precedence.as_ref()
    }

    pub fn precedes(&self, before: &DecisionPointId, after: &DecisionPointId) -> bool {
        self.precedence.contains(before, after)
    }

    /// Contingency coordinates `γ` of a point.
    pub fn contingency(&self, id: &DecisionPointId) -> Option<&RawAssignment> {
        self.index.get(id).map(|&i| &self.contingency[i])
    }

    /// `γ` of `id` is satisfied by `assignment`.
    pub fn is_reachable_under(&self, id: &DecisionPointId, assignment: &RawAssignment) -> bool {
        self.contingency(id)
            .is_some_and(|g| g.is_restriction_of(assignment))
    }

    pub fn payoffs(&self) -> &BTreeMap<RawAssignment, Vec<f64>> {
        &self.payoffs
    }

    pub fn payoff(&self, history: &RawAssignment) -> Option<&[f64]> {
        self.payoffs.get(history).map(Vec::as_slice)
    }

    pub fn allows_spacelike_same_agent(&self) -> bool {
        self.allow_spacelike_same_agent
    }

    /// Point order as declared when the game was built.
    pub fn declared_order(&self) -> &[DecisionPointId] {
        &self.declared_order
    }

    /// The order used to enumerate and render histories: the declared order
    /// when it extends `≺`, otherwise the `(agent, index)` topological order.
    pub fn canonical_order(&self) -> Vec<DecisionPointId> {
        let ids = self.point_ids();
        if is_linear_extension(&self.declared_order, &ids, &self.precedence) {
            return self.declared_order.clone();
        }
        topological_order(&ids, &self.precedence).expect("precedence is acyclic after validation")
    }

    /// Renders an assignment in the canonical order.
    pub fn render(&self, assignment: &RawAssignment) -> String {
        assignment.render(&self.canonical_order())
    }

    /// Runs the checks that `build` runs on top of `build_raw`.
    pub fn validate(&self) -> Result<(), GameError> {
        let report = check_consistency(self);
        if !report.is_empty() {
            return Err(GameError::Inconsistent(report));
        }
        if !self.allow_spacelike_same_agent {
            self.check_same_agent_separation()?;
        }
        self.check_payoff_table()
    }

    fn check_same_agent_separation(&self) -> Result<(), GameError> {
        for (i, p) in self.points.iter().enumerate() {
            for (j, q) in self.points.iter().enumerate().skip(i + 1) {
                if p.agent() != q.agent() {
                    continue;
                }
                let related = self.precedes(&p.id, &q.id) || self.precedes(&q.id, &p.id);
                if !related && self.contingency[i].compatible_with(&self.contingency[j]) {
                    return Err(GameError::SpacelikeSameAgent {
                        agent: p.agent().clone(),
                        first: p.id.clone(),
                        second: q.id.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_payoff_table(&self) -> Result<(), GameError> {
        for h in self.payoffs.keys() {
            if !is_history(self, h) || !is_complete(self, h) {
                return Err(GameError::PayoffNotCompleteHistory(self.render(h)));
            }
        }
        for h in enumerate_complete_histories(self) {
            if !self.payoffs.contains_key(&h) {
                return Err(GameError::MissingPayoff(self.render(&h)));
            }
        }
        Ok(())
    }

    /// A builder holding this game's data, for derived or mutated games.
    pub fn to_builder(&self) -> GameBuilder {
        let mut b = GameBuilder {
            agents: self.agents.clone(),
            actions: self.actions.clone(),
            points: Vec::new(),
            precedence: Vec::new(),
            contingency: Vec::new(),
            payoffs: self.payoffs.iter().map(|(h, v)| (h.clone(), v.clone())).collect(),
            light_speed: self.metric.map(|m| m.c()),
            allow_spacelike_same_agent: self.allow_spacelike_same_agent,
        };
        for id in &self.declared_order {
            let p = &self.points[self.index[id]];
            b.points.push(p.clone());
            for (bound, action) in self.contingency[self.index[id]].iter() {
                b.contingency.push((id.clone(), bound.clone(), action.clone()));
            }
        }
        if let Some(decl) = &self.declared_precedence {
            b.precedence = decl.pairs().cloned().collect();
        }
        b
    }
}

/// Collects game data and validates it.
///
/// [`GameBuilder::build_raw`] checks structure only (ids, actions, geometry,
/// acyclicity, contingency pointing into the past, payoff arity).
/// [`GameBuilder::build`] additionally requires consistent contingency
/// coordinates, the same-agent separation guard and a total payoff table.
#[derive(Debug, Clone, Default)]
pub struct GameBuilder {
    agents: Vec<AgentId>,
    actions: Vec<ActionId>,
    points: Vec<DecisionPoint>,
    precedence: Vec<(DecisionPointId, DecisionPointId)>,
    contingency: Vec<(DecisionPointId, DecisionPointId, ActionId)>,
    payoffs: Vec<(RawAssignment, Vec<f64>)>,
    light_speed: Option<f64>,
    allow_spacelike_same_agent: bool,
}

impl GameBuilder {
    pub fn agent(mut self, agent: AgentId) -> Self {
        self.agents.push(agent);
        self
    }

    pub fn agents(mut self, agents: impl IntoIterator<Item = AgentId>) -> Self {
        self.agents.extend(agents);
        self
    }

    pub fn action(mut self, action: ActionId) -> Self {
        self.actions.push(action);
        self
    }

    pub fn point(mut self, id: DecisionPointId, actions: Vec<ActionId>, location: Option<Event>) -> Self {
        self.points.push(DecisionPoint { id, actions, location });
        self
    }

    pub fn precedes(mut self, before: DecisionPointId, after: DecisionPointId) -> Self {
        self.precedence.push((before, after));
        self
    }

    /// Sets `γ_point(bound) = action`.
    pub fn contingency(mut self, point: DecisionPointId, bound: DecisionPointId, action: ActionId) -> Self {
        self.contingency.retain(|(p, b, _)| !(p == &point && b == &bound));
        self.contingency.push((point, bound, action));
        self
    }

    /// Payoff vector for a complete history, ordered like the sorted agents.
    pub fn payoff(mut self, history: RawAssignment, values: Vec<f64>) -> Self {
        self.payoffs.push((history, values));
        self
    }

    pub fn clear_payoffs(mut self) -> Self {
        self.payoffs.clear();
        self
    }

    /// Drops a point together with every contingency entry mentioning it.
    /// Payoffs are left as they are.
    pub fn remove_point(mut self, id: &DecisionPointId) -> Self {
        self.points.retain(|p| &p.id != id);
        self.contingency.retain(|(p, b, _)| p != id && b != id);
        // keep declared precedence transitive through the removed point
        let before: Vec<DecisionPointId> =
            self.precedence.iter().filter(|(_, b)| b == id).map(|(a, _)| a.clone()).collect();
        let after: Vec<DecisionPointId> =
            self.precedence.iter().filter(|(a, _)| a == id).map(|(_, b)| b.clone()).collect();
        self.precedence.retain(|(a, b)| a != id && b != id);
        for a in &before {
            for b in &after {
                if !self.precedence.contains(&(a.clone(), b.clone())) {
                    self.precedence.push((a.clone(), b.clone()));
                }
            }
        }
        self
    }

    pub fn light_speed(mut self, c: f64) -> Self {
        self.light_speed = Some(c);
        self
    }

    /// Accept the same agent deciding at spacelike-separated points that can
    /// occur in one history.
    pub fn allow_spacelike_same_agent(mut self, allow: bool) -> Self {
        self.allow_spacelike_same_agent = allow;
        self
    }

    pub fn build(self) -> Result<SpacetimeGame, GameError> {
        let game = self.build_raw()?;
        game.validate()?;
        Ok(game)
    }

    pub fn build_raw(self) -> Result<SpacetimeGame, GameError> {
        let GameBuilder {
            agents,
            actions,
            points,
            precedence,
            contingency,
            payoffs,
            light_speed,
            allow_spacelike_same_agent,
        } = self;

        // agents
        let mut agent_set = BTreeSet::new();
        for a in &agents {
            if !agent_set.insert(a.clone()) {
                return Err(GameError::DuplicateAgent(a.clone()));
            }
        }
        if agents.is_empty() {
            agent_set.extend(points.iter().map(|p| p.agent().clone()));
        }
        for p in &points {
            if !agent_set.contains(p.agent()) {
                return Err(GameError::UnknownAgent(p.agent().clone()));
            }
        }
        let agents: Vec<AgentId> = agent_set.into_iter().collect();

        // actions
        let mut action_list: Vec<ActionId> = Vec::new();
        for a in &actions {
            if action_list.contains(a) {
                return Err(GameError::DuplicateAction(a.clone()));
            }
            action_list.push(a.clone());
        }
        let declared_actions = !actions.is_empty();
        for p in &points {
            if p.actions.is_empty() {
                return Err(GameError::EmptyActionSet(p.id.clone()));
            }
            for (k, a) in p.actions.iter().enumerate() {
                if p.actions[..k].contains(a) {
                    return Err(GameError::DuplicateAction(a.clone()));
                }
                if !action_list.contains(a) {
                    if declared_actions {
                        return Err(GameError::UnknownAction(a.clone()));
                    }
                    action_list.push(a.clone());
                }
            }
        }

        // points
        let declared_order: Vec<DecisionPointId> = points.iter().map(|p| p.id.clone()).collect();
        let mut sorted = points;
        sorted.sort_by(|a, b| a.id.cmp(&b.id));
        for w in sorted.windows(2) {
            if w[0].id == w[1].id {
                return Err(GameError::DuplicatePoint(w[0].id.clone()));
            }
        }
        let index: BTreeMap<DecisionPointId, usize> =
            sorted.iter().enumerate().map(|(i, p)| (p.id.clone(), i)).collect();

        // precedence
        let with_location = sorted.iter().filter(|p| p.location.is_some()).count();
        let (metric, closed, declared_precedence) = if with_location > 0 {
            if let Some(p) = sorted.iter().find(|p| p.location.is_none()) {
                return Err(GameError::MixedLocations(p.id.clone()));
            }
            if !precedence.is_empty() {
                return Err(GameError::PrecedenceWithLocations);
            }
            let dim = sorted[0].location.as_ref().map_or(0, Event::dim);
            let metric = Metric::new(dim.saturating_sub(1), light_speed.unwrap_or(1.0)).map_err(|source| {
                GameError::Geometry {
                    point: sorted[0].id.clone(),
                    source,
                }
            })?;
            let rel = build_precedence(&sorted, &metric)?;
            (Some(metric), rel, None)
        } else {
            for (a, b) in &precedence {
                for id in [a, b] {
                    if !index.contains_key(id) {
                        return Err(GameError::UnknownPoint(id.clone()));
                    }
                }
                if a == b {
                    return Err(GameError::ReflexivePrecedence { point: a.clone() });
                }
            }
            let declared: PrecedenceRelation = precedence.into_iter().collect();
            let closed = declared.transitive_closure()?;
            (None, closed, Some(declared))
        };

        // contingency coordinates
        let mut gamma = vec![RawAssignment::new(); sorted.len()];
        for (point, bound, action) in contingency {
            let &i = index.get(&point).ok_or_else(|| GameError::UnknownPoint(point.clone()))?;
            let &j = index.get(&bound).ok_or_else(|| GameError::UnknownPoint(bound.clone()))?;
            if !sorted[j].offers(&action) {
                return Err(GameError::ActionNotAvailable { point: bound, action });
            }
            if !closed.contains(&bound, &point) {
                return Err(GameError::ContingencyNotInPast { point, bound });
            }
            gamma[i].bind(bound, action);
        }

        // payoffs
        let mut payoff_map = BTreeMap::new();
        for (history, values) in payoffs {
            for (p, a) in history.iter() {
                let &j = index.get(p).ok_or_else(|| GameError::UnknownPoint(p.clone()))?;
                if !sorted[j].offers(a) {
                    return Err(GameError::ActionNotAvailable {
                        point: p.clone(),
                        action: a.clone(),
                    });
                }
            }
            if values.len() != agents.len() {
                return Err(GameError::PayoffArity {
                    expected: agents.len(),
                    found: values.len(),
                });
            }
            if payoff_map.contains_key(&history) {
                return Err(GameError::DuplicatePayoff(history.render(&declared_order)));
            }
            payoff_map.insert(history, values);
        }

        Ok(SpacetimeGame {
            agents,
            actions: action_list,
            points: sorted,
            index,
            declared_order,
            metric,
            precedence: closed,
            declared_precedence,
            contingency: gamma,
            payoffs: payoff_map,
            allow_spacelike_same_agent,
        })
    }
}
