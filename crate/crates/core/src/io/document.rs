//! The JSON game-definition format.
//!
//! ```json
//! {
//!   "format_version": "1",
//!   "agents": ["A", "B"],
//!   "actions": ["c", "d"],
//!   "metric": {"c": 1.0},
//!   "points": [{"id": "A.1", "actions": ["c", "d"], "location": [0.0, 0.0]}, ...],
//!   "precedence": [["A.1", "B.1"]],
//!   "contingency": {"B.1": {"A.1": "c"}},
//!   "payoffs": [{"history": {"A.1": "c", "B.1": "d"}, "values": {"A": 0.0, "B": 3.0}}]
//! }
//! ```
//!
//! Either every point has a `location` (precedence is then derived from
//! spacetime) or none has and `precedence` lists the pairs. Unbound points
//! are omitted from payoff histories.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::assignment::RawAssignment;
use crate::error::GameError;
use crate::game::SpacetimeGame;
use crate::geometry::Event;
use crate::histories::enumerate_complete_histories;
use crate::io::DocumentError;
use crate::model::{ActionId, AgentId, DecisionPointId};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub format_version: String,
    pub agents: Vec<String>,
    pub actions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricDoc>,
    pub points: Vec<PointDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precedence: Option<Vec<[String; 2]>>,
    #[serde(default)]
    pub contingency: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub payoffs: Vec<PayoffDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricDoc {
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub id: String,
    pub actions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub location: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PayoffDoc {
    pub history: BTreeMap<String, String>,
    pub values: BTreeMap<String, f64>,
}

fn field<T>(path: impl Into<String>, r: Result<T, GameError>) -> Result<T, DocumentError> {
    r.map_err(|e| DocumentError::Field {
        path: path.into(),
        message: e.to_string(),
    })
}

impl GameDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical text: pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    /// Validates the document and builds the game, running every check of
    /// [`crate::GameBuilder::build`].
    pub fn to_game(&self) -> Result<SpacetimeGame, DocumentError> {
        let b = self.to_builder()?;
        b.build().map_err(DocumentError::Game)
    }

    /// Structural conversion only; see [`crate::GameBuilder::build_raw`].
    pub fn to_builder(&self) -> Result<crate::game::GameBuilder, DocumentError> {
        if self.format_version != FORMAT_VERSION {
            return Err(DocumentError::Field {
                path: "format_version".into(),
                message: format!("unsupported version {:?}, expected {FORMAT_VERSION:?}", self.format_version),
            });
        }
        let mut b = SpacetimeGame::builder();
        let mut agents = Vec::new();
        for (i, a) in self.agents.iter().enumerate() {
            let id = field(format!("agents[{i}]"), AgentId::new(a))?;
            agents.push(id.clone());
            b = b.agent(id);
        }
        for (i, a) in self.actions.iter().enumerate() {
            b = b.action(field(format!("actions[{i}]"), ActionId::new(a))?);
        }
        if let Some(m) = &self.metric {
            b = b.light_speed(m.c);
        }
        for (i, p) in self.points.iter().enumerate() {
            let id = field(format!("points[{i}].id"), p.id.parse::<DecisionPointId>())?;
            let mut actions = Vec::new();
            for (k, a) in p.actions.iter().enumerate() {
                actions.push(field(format!("points[{i}].actions[{k}]"), ActionId::new(a))?);
            }
            let location = match &p.location {
                Some(coords) => Some(
                    Event::new(coords.clone()).map_err(|e| DocumentError::Field {
                        path: format!("points[{i}].location"),
                        message: e.to_string(),
                    })?,
                ),
                None => None,
            };
            b = b.point(id, actions, location);
        }
        if let Some(prec) = &self.precedence {
            for (i, [x, y]) in prec.iter().enumerate() {
                let x = field(format!("precedence[{i}][0]"), x.parse::<DecisionPointId>())?;
                let y = field(format!("precedence[{i}][1]"), y.parse::<DecisionPointId>())?;
                b = b.precedes(x, y);
            }
        }
        for (q, gamma) in &self.contingency {
            let qid = field(format!("contingency.{q}"), q.parse::<DecisionPointId>())?;
            for (p, a) in gamma {
                let path = format!("contingency.{q}.{p}");
                let pid = field(&path, p.parse::<DecisionPointId>())?;
                let aid = field(&path, ActionId::new(a))?;
                b = b.contingency(qid.clone(), pid, aid);
            }
        }
        let mut sorted_agents = agents.clone();
        sorted_agents.sort();
        for (i, entry) in self.payoffs.iter().enumerate() {
            let mut h = RawAssignment::new();
            for (p, a) in &entry.history {
                let path = format!("payoffs[{i}].history.{p}");
                h.bind(
                    field(&path, p.parse::<DecisionPointId>())?,
                    field(&path, ActionId::new(a))?,
                );
            }
            let mut values = Vec::with_capacity(sorted_agents.len());
            for a in &sorted_agents {
                let v = entry.values.get(a.as_str()).ok_or_else(|| DocumentError::Field {
                    path: format!("payoffs[{i}].values"),
                    message: format!("missing value for agent {a}"),
                })?;
                values.push(*v);
            }
            if let Some(extra) = entry.values.keys().find(|k| !sorted_agents.iter().any(|a| a.as_str() == *k)) {
                return Err(DocumentError::Field {
                    path: format!("payoffs[{i}].values.{extra}"),
                    message: format!("unknown agent {extra}"),
                });
            }
            b = b.payoff(h, values);
        }
        Ok(b)
    }

    /// The document describing `g`. Payoffs follow the enumeration order of
    /// complete histories.
    pub fn from_game(g: &SpacetimeGame) -> Self {
        let points = g
            .declared_order()
            .iter()
            .map(|id| {
                let p = g.point(id).expect("declared points exist");
                PointDoc {
                    id: id.to_string(),
                    actions: p.actions.iter().map(|a| a.to_string()).collect(),
                    location: p.location.as_ref().map(|e| e.coords().to_vec()),
                }
            })
            .collect();
        let precedence = g.declared_precedence().map(|rel| {
            let mut pairs: Vec<[String; 2]> = rel.pairs().map(|(a, b)| [a.to_string(), b.to_string()]).collect();
            pairs.sort();
            pairs
        });
        let mut contingency = BTreeMap::new();
        for p in g.points() {
            let gamma = g.contingency(&p.id).expect("point of the game");
            if !gamma.is_empty() {
                contingency.insert(
                    p.id.to_string(),
                    gamma.iter().map(|(k, a)| (k.to_string(), a.to_string())).collect(),
                );
            }
        }
        let mut order: Vec<RawAssignment> = enumerate_complete_histories(g)
            .into_iter()
            .filter(|h| g.payoff(h).is_some())
            .collect();
        for h in g.payoffs().keys() {
            if !order.contains(h) {
                order.push(h.clone());
            }
        }
        let payoffs = order
            .iter()
            .map(|h| {
                let values = g.payoff(h).expect("filtered above");
                PayoffDoc {
                    history: h.iter().map(|(p, a)| (p.to_string(), a.to_string())).collect(),
                    values: g
                        .agents()
                        .iter()
                        .zip(values)
                        .map(|(a, v)| (a.to_string(), *v))
                        .collect(),
                }
            })
            .collect();
        GameDocument {
            format_version: FORMAT_VERSION.to_string(),
            agents: g.agents().iter().map(|a| a.to_string()).collect(),
            actions: g.actions().iter().map(|a| a.to_string()).collect(),
            metric: g.metric().map(|m| MetricDoc { c: m.c() }),
            points,
            precedence,
            contingency,
            payoffs,
        }
    }
}

/// Parses and validates a game document.
pub fn parse_game(text: &str) -> Result<SpacetimeGame, DocumentError> {
    GameDocument::from_json(text)?.to_game()
}

/// Canonical document text for `g`.
pub fn serialize_game(g: &SpacetimeGame) -> String {
    GameDocument::from_game(g).to_json()
}

/// Parses a canonical history string (`a,-,e,...`) along `order`.
pub fn parse_history(text: &str, order: &[DecisionPointId]) -> Result<RawAssignment, GameError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != order.len() {
        return Err(GameError::InvalidSymbol(text.to_string()));
    }
    let mut h = RawAssignment::new();
    for (p, part) in order.iter().zip(parts) {
        if part != "-" {
            h.bind(p.clone(), ActionId::new(part)?);
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::pid;

    #[test]
    fn bundled_documents_parse() {
        let epr = parse_game(fixtures::EPR_GAME).unwrap();
        assert_eq!(epr.points().len(), 6);
        assert_eq!(epr.payoffs().len(), 16);
        let running = parse_game(fixtures::RUNNING_GAME).unwrap();
        assert_eq!(running.payoffs().len(), 14);
    }

    #[test]
    fn bundled_documents_are_canonical() {
        for (name, text) in fixtures::GAME_FILES {
            let doc = GameDocument::from_json(text).unwrap();
            assert_eq!(doc.to_json(), *text, "{name} is not in canonical form");
            let g = doc.to_game().unwrap();
            assert_eq!(serialize_game(&g), *text, "{name} does not round-trip through the game");
        }
    }

    #[test]
    fn missing_payoff_row_names_history() {
        let mut doc = GameDocument::from_json(fixtures::PD_GAME).unwrap();
        doc.payoffs.retain(|p| p.history.get("A.1").map(String::as_str) != Some("d") || p.history.get("B.1").map(String::as_str) != Some("c"));
        match doc.to_game() {
            Err(DocumentError::Game(GameError::MissingPayoff(h))) => assert_eq!(h, "d,c"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn field_errors_carry_paths() {
        let mut doc = GameDocument::from_json(fixtures::PD_GAME).unwrap();
        doc.points[1].actions[0] = "bad symbol".into();
        match doc.to_game() {
            Err(DocumentError::Field { path, .. }) => assert_eq!(path, "points[1].actions[0]"),
            other => panic!("unexpected {other:?}"),
        }
        let mut doc = GameDocument::from_json(fixtures::PROMISE_GAME).unwrap();
        doc.contingency.get_mut("B.1").unwrap().insert("A.x".into(), "c".into());
        match doc.to_game() {
            Err(DocumentError::Field { path, .. }) => assert_eq!(path, "contingency.B.1.A.x"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line() {
        let err = GameDocument::from_json("{\n  \"format_version\": \"1\",\n  oops\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = GameDocument::from_json("{\"format_version\": \"1\", \"agents\": [], \"actions\": [], \"points\": [], \"extra\": 1}")
            .unwrap_err();
        assert!(err.to_string().contains("extra"), "{err}");
    }

    #[test]
    fn inconsistent_document_embeds_report() {
        let mut doc = GameDocument::from_json(fixtures::RUNNING_GAME).unwrap();
        doc.contingency.get_mut("A.2").unwrap().insert("B.1".into(), "d".into());
        let err = doc.to_game().unwrap_err();
        assert!(err.to_string().contains("over-binding at (A.2, B.1)"), "{err}");
    }

    #[test]
    fn history_strings_round_trip() {
        let order = [pid("A.1"), pid("B.1"), pid("B.2")];
        let h = parse_history("b,-,e", &order).unwrap();
        assert_eq!(h.render(&order), "b,-,e");
        assert!(parse_history("b,-", &order).is_err());
    }
}
