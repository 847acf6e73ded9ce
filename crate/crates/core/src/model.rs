//! Identifiers and decision points.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::GameError;
use crate::geometry::Event;

/// Characters reserved by the text renderings of histories and profiles.
const RESERVED: &[char] = &[',', '/', '(', ')', '"', ';', '=', '|'];

fn check_symbol(s: &str) -> Result<(), GameError> {
    if s.is_empty() || s == "-" || s.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
        return Err(GameError::InvalidSymbol(s.to_string()));
    }
    Ok(())
}

macro_rules! symbol {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({:?})", stringify!($name), &*self.0)
            }
        }

        impl AsRef<str> for $name {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }
    };
}

symbol!(
    /// An agent (player). Must not contain `.`, which separates the agent
    /// from the index in decision point ids.
    AgentId
);
symbol!(
    /// An action symbol.
    ActionId
);

impl AgentId {
    pub fn new(s: &str) -> Result<Self, GameError> {
        check_symbol(s)?;
        if s.contains('.') {
            return Err(GameError::InvalidSymbol(s.to_string()));
        }
        Ok(AgentId(Arc::from(s)))
    }
}

impl ActionId {
    pub fn new(s: &str) -> Result<Self, GameError> {
        check_symbol(s)?;
        Ok(ActionId(Arc::from(s)))
    }
}

impl FromStr for AgentId {
    type Err = GameError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AgentId::new(s)
    }
}

impl FromStr for ActionId {
    type Err = GameError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ActionId::new(s)
    }
}

/// Agent `agent`'s decision number `index`, written `Agent.index`.
///
/// Indices are arbitrary positive integers and need not be contiguous.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecisionPointId {
    pub agent: AgentId,
    pub index: u32,
}

impl DecisionPointId {
    pub fn new(agent: AgentId, index: u32) -> Result<Self, GameError> {
        if index == 0 {
            return Err(GameError::InvalidPointId(format!("{agent}.0")));
        }
        Ok(DecisionPointId { agent, index })
    }
}

impl FromStr for DecisionPointId {
    type Err = GameError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GameError::InvalidPointId(s.to_string());
        let (agent, index) = s.rsplit_once('.').ok_or_else(bad)?;
        let index: u32 = index.parse().map_err(|_| bad())?;
        let agent = AgentId::new(agent).map_err(|_| bad())?;
        DecisionPointId::new(agent, index).map_err(|_| bad())
    }
}

impl fmt::Display for DecisionPointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.agent, self.index)
    }
}

impl fmt::Debug for DecisionPointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A decision point: who decides, among which actions, and where.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionPoint {
    pub id: DecisionPointId,
    /// Choosable actions in declaration order.
    pub actions: Vec<ActionId>,
    pub location: Option<Event>,
}

impl DecisionPoint {
    pub fn agent(&self) -> &AgentId {
        &self.id.agent
    }

    pub fn offers(&self, action: &ActionId) -> bool {
        self.actions.contains(action)
    }
}

/// Shorthand used throughout tests and fixtures. Panics on malformed ids.
pub fn pid(s: &str) -> DecisionPointId {
    s.parse().unwrap_or_else(|e| panic!("{e}"))
}

/// Shorthand for an action id. Panics on malformed symbols.
pub fn act(s: &str) -> ActionId {
    ActionId::new(s).unwrap_or_else(|e| panic!("{e}"))
}

/// Shorthand for an agent id. Panics on malformed symbols.
pub fn agent(s: &str) -> AgentId {
    AgentId::new(s).unwrap_or_else(|e| panic!("{e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_ids_parse_and_print() {
        let p: DecisionPointId = "Alice.12".parse().unwrap();
        assert_eq!(p.agent.as_str(), "Alice");
        assert_eq!(p.index, 12);
        assert_eq!(p.to_string(), "Alice.12");
        assert!("Alice".parse::<DecisionPointId>().is_err());
        assert!("Alice.0".parse::<DecisionPointId>().is_err());
        assert!(".3".parse::<DecisionPointId>().is_err());
        assert!("A.x".parse::<DecisionPointId>().is_err());
    }

    #[test]
    fn symbols_reject_reserved_text() {
        assert!(ActionId::new("").is_err());
        assert!(ActionId::new("-").is_err());
        assert!(ActionId::new("a,b").is_err());
        assert!(ActionId::new("a b").is_err());
        assert!(ActionId::new("a-b").is_ok());
        assert!(AgentId::new("A.B").is_err());
    }

    #[test]
    fn ids_order_by_agent_then_index() {
        let mut v = vec![pid("B.1"), pid("A.2"), pid("A.10"), pid("A.1")];
        v.sort();
        assert_eq!(v, vec![pid("A.1"), pid("A.2"), pid("A.10"), pid("B.1")]);
    }
}
