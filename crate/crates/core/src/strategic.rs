//! Strategies, resolution of profiles to complete histories, and the
//! (reduced) strategic form.

use std::collections::BTreeSet;

use crate::assignment::RawAssignment;
use crate::error::GameError;
use crate::game::SpacetimeGame;
use crate::model::{AgentId, DecisionPointId};

/// Tensors above this many cells are refused.
pub const MAX_CELLS: u128 = 10_000_000;

/// A full plan for one agent: an action at each of its decision points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Strategy {
    pub agent: AgentId,
    pub assignment: RawAssignment,
}

/// A strategy with its non-actual points unbound.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedStrategy {
    pub agent: AgentId,
    pub assignment: RawAssignment,
}

/// An action at every decision point of the game.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrategyProfile {
    pub assignment: RawAssignment,
}

impl StrategyProfile {
    /// Union of one strategy per agent.
    pub fn from_strategies<'a>(parts: impl IntoIterator<Item = &'a RawAssignment>) -> Self {
        let mut assignment = RawAssignment::new();
        for s in parts {
            for (p, a) in s.iter() {
                let prev = assignment.bind(p.clone(), a.clone());
                debug_assert!(prev.is_none(), "strategies of distinct agents are disjoint");
            }
        }
        StrategyProfile { assignment }
    }
}

/// Label of an agent's (possibly reduced) strategy: its actions at the
/// agent's points in index order, `-` where unbound, joined by `/`.
pub fn strategy_label(g: &SpacetimeGame, agent: &AgentId, assignment: &RawAssignment) -> String {
    let parts: Vec<&str> = g
        .points_of(agent)
        .map(|p| assignment.get(&p.id).map_or("-", |a| a.as_str()))
        .collect();
    parts.join("/")
}

fn require_agent(g: &SpacetimeGame, agent: &AgentId) -> Result<(), GameError> {
    match g.agent_index(agent) {
        Some(_) => Ok(()),
        None => Err(GameError::UnknownAgent(agent.clone())),
    }
}

/// All strategies of `agent`: the product of its action sets, first point
/// varying slowest and actions in declaration order.
pub fn strategy_space(g: &SpacetimeGame, agent: &AgentId) -> Result<Vec<Strategy>, GameError> {
    require_agent(g, agent)?;
    let mut out = vec![RawAssignment::new()];
    for p in g.points_of(agent) {
        out = out
            .into_iter()
            .flat_map(|s| p.actions.iter().map(move |a| s.clone().with(p.id.clone(), a.clone())))
            .collect();
    }
    Ok(out
        .into_iter()
        .map(|assignment| Strategy {
            agent: agent.clone(),
            assignment,
        })
        .collect())
}

/// The unique complete history that is a restriction of `profile`.
///
/// `profile` may be partial (a reduced profile) as long as it binds every
/// point that becomes reachable.
pub fn resolve(g: &SpacetimeGame, profile: &RawAssignment) -> Result<RawAssignment, GameError> {
    resolve_along(g, &g.canonical_order(), profile)
}

pub(crate) fn resolve_along(
    g: &SpacetimeGame,
    order: &[DecisionPointId],
    profile: &RawAssignment,
) -> Result<RawAssignment, GameError> {
    let mut h = RawAssignment::new();
    for p in order {
        if g.is_reachable_under(p, &h) {
            match profile.get(p) {
                Some(a) => {
                    h.bind(p.clone(), a.clone());
                }
                None => return Err(GameError::UnplannedPoint(p.clone())),
            }
        }
    }
    debug_assert!(h.is_restriction_of(profile));
    Ok(h)
}

/// Resolution of a combined reduced profile.
pub fn resolve_reduced(g: &SpacetimeGame, reduced: &[ReducedStrategy]) -> Result<RawAssignment, GameError> {
    let profile = StrategyProfile::from_strategies(reduced.iter().map(|r| &r.assignment));
    resolve(g, &profile.assignment)
}

/// Unbinds the agent's points whose contingency conflicts with the strategy
/// at another of the agent's own points.
pub fn reduce_strategy(g: &SpacetimeGame, s: &Strategy) -> ReducedStrategy {
    let own: BTreeSet<&DecisionPointId> = s.assignment.points().collect();
    let assignment = s.assignment.restrict(|p| {
        let gamma = g.contingency(p).expect("strategy binds points of the game");
        !gamma
            .iter()
            .any(|(q, a)| q != p && own.contains(q) && s.assignment.get(q) != Some(a))
    });
    ReducedStrategy {
        agent: s.agent.clone(),
        assignment,
    }
}

/// Distinct reduced strategies of `agent`, in order of first occurrence.
pub fn reduced_strategy_space(g: &SpacetimeGame, agent: &AgentId) -> Result<Vec<ReducedStrategy>, GameError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in strategy_space(g, agent)? {
        let r = reduce_strategy(g, &s);
        if seen.insert(r.assignment.clone()) {
            out.push(r);
        }
    }
    Ok(out)
}

/// A finite game in normal form with a dense payoff tensor.
///
/// Cells are stored row-major: the last agent's strategy varies fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormGame {
    pub agents: Vec<AgentId>,
    pub labels: Vec<Vec<String>>,
    /// Per cell, one payoff per agent.
    pub payoffs: Vec<Vec<f64>>,
    /// Per cell, the resolved history or outcome.
    pub annotations: Vec<String>,
}

impl NormalFormGame {
    pub fn shape(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn cell_count(&self) -> usize {
        self.payoffs.len()
    }

    pub fn agent_index(&self, agent: &AgentId) -> Option<usize> {
        self.agents.iter().position(|a| a == agent)
    }

    /// Flat index of a strategy-index tuple.
    pub fn index(&self, profile: &[usize]) -> usize {
        debug_assert_eq!(profile.len(), self.labels.len());
        profile
            .iter()
            .zip(&self.labels)
            .fold(0, |acc, (&s, l)| acc * l.len() + s)
    }

    /// Strategy-index tuple of a flat index.
    pub fn profile(&self, mut cell: usize) -> Vec<usize> {
        let mut out = vec![0; self.labels.len()];
        for (i, l) in self.labels.iter().enumerate().rev() {
            out[i] = cell % l.len();
            cell /= l.len();
        }
        out
    }

    pub fn payoff(&self, profile: &[usize]) -> &[f64] {
        &self.payoffs[self.index(profile)]
    }

    /// All strategy-index tuples in storage order.
    pub fn profiles(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.cell_count()).map(|c| self.profile(c))
    }

    /// `(l1,l2,...)`.
    pub fn profile_label(&self, profile: &[usize]) -> String {
        let parts: Vec<&str> = profile
            .iter()
            .zip(&self.labels)
            .map(|(&s, l)| l[s].as_str())
            .collect();
        format!("({})", parts.join(","))
    }

    /// Same agents, labels and payoffs; annotations are ignored.
    pub fn same_tensor(&self, other: &NormalFormGame) -> bool {
        self.agents == other.agents && self.labels == other.labels && self.payoffs == other.payoffs
    }

    /// The same game with agents reordered: agent `i` of the result is agent
    /// `perm[i]` of `self`.
    pub fn permute_agents(&self, perm: &[usize]) -> NormalFormGame {
        let agents: Vec<AgentId> = perm.iter().map(|&i| self.agents[i].clone()).collect();
        let labels: Vec<Vec<String>> = perm.iter().map(|&i| self.labels[i].clone()).collect();
        let mut out = NormalFormGame {
            agents,
            labels,
            payoffs: vec![Vec::new(); self.cell_count()],
            annotations: vec![String::new(); self.cell_count()],
        };
        for cell in 0..self.cell_count() {
            let old = self.profile(cell);
            let new: Vec<usize> = perm.iter().map(|&i| old[i]).collect();
            let idx = out.index(&new);
            out.payoffs[idx] = perm.iter().map(|&i| self.payoffs[cell][i]).collect();
            out.annotations[idx] = self.annotations[cell].clone();
        }
        out
    }
}

pub(crate) fn check_cells(sizes: impl IntoIterator<Item = usize>) -> Result<usize, GameError> {
    let mut cells: u128 = 1;
    for s in sizes {
        cells = cells.saturating_mul(s as u128);
    }
    if cells > MAX_CELLS {
        return Err(GameError::TensorTooLarge {
            cells,
            limit: MAX_CELLS,
        });
    }
    Ok(cells as usize)
}

fn tensor(g: &SpacetimeGame, spaces: Vec<Vec<RawAssignment>>) -> Result<NormalFormGame, GameError> {
    let cells = check_cells(spaces.iter().map(Vec::len))?;
    let labels: Vec<Vec<String>> = g
        .agents()
        .iter()
        .zip(&spaces)
        .map(|(a, space)| space.iter().map(|s| strategy_label(g, a, s)).collect())
        .collect();
    let mut nf = NormalFormGame {
        agents: g.agents().to_vec(),
        labels,
        payoffs: Vec::with_capacity(cells),
        annotations: Vec::with_capacity(cells),
    };
    let order = g.canonical_order();
    for cell in 0..cells {
        let coords = nf.profile(cell);
        let profile = StrategyProfile::from_strategies(coords.iter().zip(&spaces).map(|(&i, s)| &s[i]));
        let h = resolve_along(g, &order, &profile.assignment)?;
        let values = g
            .payoff(&h)
            .ok_or_else(|| GameError::MissingPayoff(h.render(&order)))?;
        nf.payoffs.push(values.to_vec());
        nf.annotations.push(h.render(&order));
    }
    Ok(nf)
}

/// The strategic form: every profile resolved to its complete history.
pub fn strategic_form(g: &SpacetimeGame) -> Result<NormalFormGame, GameError> {
    let mut spaces = Vec::new();
    for a in g.agents() {
        spaces.push(strategy_space(g, a)?.into_iter().map(|s| s.assignment).collect());
    }
    tensor(g, spaces)
}

/// The reduced strategic form, over reduced strategies only.
pub fn reduced_strategic_form(g: &SpacetimeGame) -> Result<NormalFormGame, GameError> {
    let mut spaces = Vec::new();
    for a in g.agents() {
        spaces.push(reduced_strategy_space(g, a)?.into_iter().map(|s| s.assignment).collect());
    }
    tensor(g, spaces)
}
