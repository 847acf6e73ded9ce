//! Raw assignments: partial maps from decision points to actions.
//!
//! Contingency coordinates, histories, strategies and profiles are all raw
//! assignments with extra constraints.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::UnionConflict;
use crate::model::{ActionId, DecisionPointId};

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RawAssignment {
    bindings: BTreeMap<DecisionPointId, ActionId>,
}

impl RawAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, point: &DecisionPointId) -> Option<&ActionId> {
        self.bindings.get(point)
    }

    pub fn binds(&self, point: &DecisionPointId) -> bool {
        self.bindings.contains_key(point)
    }

    /// Binds `point`, returning the previous action if any.
    pub fn bind(&mut self, point: DecisionPointId, action: ActionId) -> Option<ActionId> {
        self.bindings.insert(point, action)
    }

    pub fn unbind(&mut self, point: &DecisionPointId) -> Option<ActionId> {
        self.bindings.remove(point)
    }

    pub fn with(mut self, point: DecisionPointId, action: ActionId) -> Self {
        self.bind(point, action);
        self
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DecisionPointId, &ActionId)> {
        self.bindings.iter()
    }

    pub fn points(&self) -> impl Iterator<Item = &DecisionPointId> {
        self.bindings.keys()
    }

    /// Every binding of `self` exists identically in `other`.
    pub fn is_restriction_of(&self, other: &RawAssignment) -> bool {
        self.bindings.len() <= other.bindings.len()
            && self.bindings.iter().all(|(p, a)| other.bindings.get(p) == Some(a))
    }

    /// The first point bound by both with different actions.
    pub fn conflict_with(&self, other: &RawAssignment) -> Option<UnionConflict> {
        self.bindings.iter().find_map(|(p, a)| match other.bindings.get(p) {
            Some(b) if b != a => Some(UnionConflict {
                point: p.clone(),
                left: a.clone(),
                right: b.clone(),
            }),
            _ => None,
        })
    }

    pub fn compatible_with(&self, other: &RawAssignment) -> bool {
        self.conflict_with(other).is_none()
    }

    /// Union of two assignments agreeing on their common domain.
    pub fn union(&self, other: &RawAssignment) -> Result<RawAssignment, UnionConflict> {
        if let Some(c) = self.conflict_with(other) {
            return Err(c);
        }
        let mut out = self.clone();
        out.bindings
            .extend(other.bindings.iter().map(|(p, a)| (p.clone(), a.clone())));
        Ok(out)
    }

    /// Keeps only the bindings whose point satisfies `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&DecisionPointId) -> bool) -> RawAssignment {
        RawAssignment {
            bindings: self
                .bindings
                .iter()
                .filter(|(p, _)| keep(p))
                .map(|(p, a)| (p.clone(), a.clone()))
                .collect(),
        }
    }

    /// Renders the assignment along `order`, `-` standing for unbound points.
    pub fn render(&self, order: &[DecisionPointId]) -> String {
        let mut out = String::new();
        for (i, p) in order.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            match self.bindings.get(p) {
                Some(a) => out.push_str(a.as_str()),
                None => out.push('-'),
            }
        }
        out
    }
}

/// Free-function form of [`RawAssignment::is_restriction_of`].
pub fn is_restriction(a: &RawAssignment, b: &RawAssignment) -> bool {
    a.is_restriction_of(b)
}

/// Free-function form of [`RawAssignment::union`].
pub fn union(a: &RawAssignment, b: &RawAssignment) -> Result<RawAssignment, UnionConflict> {
    a.union(b)
}

impl FromIterator<(DecisionPointId, ActionId)> for RawAssignment {
    fn from_iter<T: IntoIterator<Item = (DecisionPointId, ActionId)>>(iter: T) -> Self {
        RawAssignment {
            bindings: iter.into_iter().collect(),
        }
    }
}

impl fmt::Debug for RawAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (p, a)) in self.bindings.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}→{a}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for RawAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Builds an assignment from `("A.1", "a")` pairs. Panics on malformed ids.
pub fn assign(pairs: &[(&str, &str)]) -> RawAssignment {
    pairs
        .iter()
        .map(|(p, a)| (crate::model::pid(p), crate::model::act(a)))
        .collect()
}
