//! The JSON extensive-form format.
//!
//! ```json
//! {
//!   "format_version": "1",
//!   "agents": ["A", "B"],
//!   "actions": ["l", "r"],
//!   "nodes": [{"id": "n1", "player": "A", "actions": ["l", "r"]}, ...],
//!   "outcomes": [{"id": "z1", "values": {"A": 1.0, "B": 0.0}}, ...],
//!   "successors": [{"node": "n1", "action": "l", "target": "z1"}, ...],
//!   "information_sets": [{"id": "A.1", "player": "A", "nodes": ["n1"]}, ...]
//! }
//! ```
//!
//! Node and outcome ids share one namespace.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::extensive::{validate_efg, ChoiceNode, ExtensiveFormGame, InfoSet, NodeRef, Outcome};
use crate::io::document::FORMAT_VERSION;
use crate::io::DocumentError;
use crate::model::{ActionId, AgentId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EfgDocument {
    pub format_version: String,
    pub agents: Vec<String>,
    pub actions: Vec<String>,
    pub nodes: Vec<NodeDoc>,
    pub outcomes: Vec<OutcomeDoc>,
    pub successors: Vec<SuccessorDoc>,
    pub information_sets: Vec<InfoSetDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: String,
    pub player: String,
    pub actions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeDoc {
    pub id: String,
    pub values: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuccessorDoc {
    pub node: String,
    pub action: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InfoSetDoc {
    pub id: String,
    pub player: String,
    pub nodes: Vec<String>,
}

fn symbol<T>(path: String, r: Result<T, crate::error::GameError>) -> Result<T, DocumentError> {
    r.map_err(|e| DocumentError::Field {
        path,
        message: e.to_string(),
    })
}

impl EfgDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    /// Resolves references without checking the tree structure.
    pub fn to_efg_unchecked(&self) -> Result<ExtensiveFormGame, DocumentError> {
        if self.format_version != FORMAT_VERSION {
            return Err(DocumentError::Field {
                path: "format_version".into(),
                message: format!("unsupported version {:?}, expected {FORMAT_VERSION:?}", self.format_version),
            });
        }
        let agents = self
            .agents
            .iter()
            .enumerate()
            .map(|(i, a)| symbol(format!("agents[{i}]"), AgentId::new(a)))
            .collect::<Result<Vec<_>, _>>()?;
        let actions = self
            .actions
            .iter()
            .enumerate()
            .map(|(i, a)| symbol(format!("actions[{i}]"), ActionId::new(a)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut ids: BTreeMap<&str, NodeRef> = BTreeMap::new();
        let mut nodes = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if ids.insert(&n.id, NodeRef::Choice(i)).is_some() {
                return Err(DocumentError::Field {
                    path: format!("nodes[{i}].id"),
                    message: format!("duplicate id {}", n.id),
                });
            }
            let node_actions = n
                .actions
                .iter()
                .enumerate()
                .map(|(k, a)| symbol(format!("nodes[{i}].actions[{k}]"), ActionId::new(a)))
                .collect::<Result<Vec<_>, _>>()?;
            nodes.push(ChoiceNode {
                label: n.id.clone(),
                player: symbol(format!("nodes[{i}].player"), AgentId::new(&n.player))?,
                actions: node_actions,
                successors: Vec::new(),
            });
        }
        let mut outcomes = Vec::new();
        for (i, o) in self.outcomes.iter().enumerate() {
            if ids.insert(&o.id, NodeRef::Outcome(i)).is_some() {
                return Err(DocumentError::Field {
                    path: format!("outcomes[{i}].id"),
                    message: format!("duplicate id {}", o.id),
                });
            }
            let mut payoffs = Vec::with_capacity(agents.len());
            for a in &agents {
                let v = o.values.get(a.as_str()).ok_or_else(|| DocumentError::Field {
                    path: format!("outcomes[{i}].values"),
                    message: format!("missing value for agent {a}"),
                })?;
                payoffs.push(*v);
            }
            if let Some(extra) = o.values.keys().find(|k| !agents.iter().any(|a| a.as_str() == *k)) {
                return Err(DocumentError::Field {
                    path: format!("outcomes[{i}].values.{extra}"),
                    message: format!("unknown agent {extra}"),
                });
            }
            outcomes.push(Outcome {
                label: o.id.clone(),
                payoffs,
            });
        }
        for (i, s) in self.successors.iter().enumerate() {
            let Some(NodeRef::Choice(n)) = ids.get(s.node.as_str()).copied() else {
                return Err(DocumentError::Field {
                    path: format!("successors[{i}].node"),
                    message: format!("unknown choice node {}", s.node),
                });
            };
            let target = ids.get(s.target.as_str()).copied().ok_or_else(|| DocumentError::Field {
                path: format!("successors[{i}].target"),
                message: format!("unknown node {}", s.target),
            })?;
            let action = symbol(format!("successors[{i}].action"), ActionId::new(&s.action))?;
            nodes[n].successors.push((action, target));
        }
        let mut info_sets = Vec::new();
        for (i, s) in self.information_sets.iter().enumerate() {
            let mut members = Vec::new();
            for (k, n) in s.nodes.iter().enumerate() {
                match ids.get(n.as_str()) {
                    Some(NodeRef::Choice(j)) => members.push(*j),
                    _ => {
                        return Err(DocumentError::Field {
                            path: format!("information_sets[{i}].nodes[{k}]"),
                            message: format!("unknown choice node {n}"),
                        })
                    }
                }
            }
            info_sets.push(InfoSet {
                label: s.id.clone(),
                player: symbol(format!("information_sets[{i}].player"), AgentId::new(&s.player))?,
                nodes: members,
            });
        }
        Ok(ExtensiveFormGame {
            agents,
            actions,
            nodes,
            outcomes,
            info_sets,
        })
    }

    /// Resolves references and validates the tree.
    pub fn to_efg(&self) -> Result<ExtensiveFormGame, DocumentError> {
        let e = self.to_efg_unchecked()?;
        let problems = validate_efg(&e);
        if problems.is_empty() {
            Ok(e)
        } else {
            Err(DocumentError::Efg(problems))
        }
    }

    pub fn from_efg(e: &ExtensiveFormGame) -> Self {
        let name = |r: NodeRef| match r {
            NodeRef::Choice(i) => e.nodes[i].label.clone(),
            NodeRef::Outcome(i) => e.outcomes[i].label.clone(),
        };
        EfgDocument {
            format_version: FORMAT_VERSION.to_string(),
            agents: e.agents.iter().map(|a| a.to_string()).collect(),
            actions: e.actions.iter().map(|a| a.to_string()).collect(),
            nodes: e
                .nodes
                .iter()
                .map(|n| NodeDoc {
                    id: n.label.clone(),
                    player: n.player.to_string(),
                    actions: n.actions.iter().map(|a| a.to_string()).collect(),
                })
                .collect(),
            outcomes: e
                .outcomes
                .iter()
                .map(|o| OutcomeDoc {
                    id: o.label.clone(),
                    values: e.agents.iter().zip(&o.payoffs).map(|(a, v)| (a.to_string(), *v)).collect(),
                })
                .collect(),
            successors: e
                .nodes
                .iter()
                .flat_map(|n| {
                    n.successors.iter().map(|(a, t)| SuccessorDoc {
                        node: n.label.clone(),
                        action: a.to_string(),
                        target: name(*t),
                    })
                })
                .collect(),
            information_sets: e
                .info_sets
                .iter()
                .map(|s| InfoSetDoc {
                    id: s.label.clone(),
                    player: s.player.to_string(),
                    nodes: s.nodes.iter().map(|&n| e.nodes[n].label.clone()).collect(),
                })
                .collect(),
        }
    }
}

/// Parses and validates an extensive-form document.
pub fn parse_efg(text: &str) -> Result<ExtensiveFormGame, DocumentError> {
    EfgDocument::from_json(text)?.to_efg()
}

/// Canonical document text for `e`.
pub fn serialize_efg(e: &ExtensiveFormGame) -> String {
    EfgDocument::from_efg(e).to_json()
}
