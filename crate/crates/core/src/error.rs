use thiserror::Error;

use crate::consistency::ConsistencyReport;
use crate::model::{ActionId, AgentId, DecisionPointId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: metric expects {expected} coordinates, event has {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("an event needs at least one space and one time coordinate, got {0} coordinate(s)")]
    TooFewCoordinates(usize),
    #[error("coordinate {index} is not finite")]
    NonFinite { index: usize },
    #[error("light speed must be positive and finite, got {0}")]
    InvalidLightSpeed(f64),
}

/// Two raw assignments bind the same decision point to different actions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("conflict at {point}: {left} vs {right}")]
pub struct UnionConflict {
    pub point: DecisionPointId,
    pub left: ActionId,
    pub right: ActionId,
}

/// A precedence relation contains a cycle (a closed timelike curve).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("precedence relation has a cycle: {}", display_cycle(.cycle))]
pub struct CycleError {
    pub cycle: Vec<DecisionPointId>,
}

fn display_cycle(cycle: &[DecisionPointId]) -> String {
    let mut parts: Vec<String> = cycle.iter().map(|p| p.to_string()).collect();
    if let Some(first) = cycle.first() {
        parts.push(first.to_string());
    }
    parts.join(" -> ")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("invalid symbol {0:?}")]
    InvalidSymbol(String),
    #[error("invalid decision point id {0:?}, expected \"Agent.index\"")]
    InvalidPointId(String),
    #[error("duplicate agent {0}")]
    DuplicateAgent(AgentId),
    #[error("duplicate action {0}")]
    DuplicateAction(ActionId),
    #[error("duplicate decision point {0}")]
    DuplicatePoint(DecisionPointId),
    #[error("unknown agent {0}")]
    UnknownAgent(AgentId),
    #[error("unknown action {0}")]
    UnknownAction(ActionId),
    #[error("unknown decision point {0}")]
    UnknownPoint(DecisionPointId),
    #[error("decision point {0} has no actions")]
    EmptyActionSet(DecisionPointId),
    #[error("action {action} is not available at {point}")]
    ActionNotAvailable { point: DecisionPointId, action: ActionId },
    #[error("either every decision point has a location or none has; {0} differs")]
    MixedLocations(DecisionPointId),
    #[error("precedence must not be declared when locations are given")]
    PrecedenceWithLocations,
    #[error("decision point {point} is not preceded by itself")]
    ReflexivePrecedence { point: DecisionPointId },
    #[error("location of {point}: {source}")]
    Geometry {
        point: DecisionPointId,
        #[source]
        source: GeometryError,
    },
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("contingency of {point} binds {bound}, which does not timelike-precede it")]
    ContingencyNotInPast {
        point: DecisionPointId,
        bound: DecisionPointId,
    },
    #[error("inconsistent contingency coordinates:\n{0}")]
    Inconsistent(ConsistencyReport),
    #[error(
        "agent {agent} decides at spacelike-separated points {first} and {second} \
         that can occur in one history"
    )]
    SpacelikeSameAgent {
        agent: AgentId,
        first: DecisionPointId,
        second: DecisionPointId,
    },
    #[error("payoff vector has {found} entries, expected {expected}")]
    PayoffArity { expected: usize, found: usize },
    #[error("payoff key {0} is not a complete history")]
    PayoffNotCompleteHistory(String),
    #[error("duplicate payoff entry for history {0}")]
    DuplicatePayoff(String),
    #[error("no payoff for complete history {0}")]
    MissingPayoff(String),
    #[error("profile does not plan an action at reachable point {0}")]
    UnplannedPoint(DecisionPointId),
    #[error("invalid linearization: {0}")]
    InvalidLinearization(String),
    #[error("backward induction needs perfect information; information set {0} has several nodes")]
    ImperfectInformation(String),
    #[error("strategic form would have {cells} cells, above the limit of {limit}")]
    TensorTooLarge { cells: u128, limit: u128 },
}
