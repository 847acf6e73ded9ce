//! File formats and text renderings.

pub mod document;
pub mod dot;
pub mod efg_document;
pub mod table;

use thiserror::Error;

use crate::error::GameError;

pub use document::{parse_game, parse_history, serialize_game, GameDocument};
pub use efg_document::{parse_efg, serialize_efg, EfgDocument};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error(transparent)]
    Game(GameError),
    #[error("invalid extensive form: {}", .0.join("; "))]
    Efg(Vec<String>),
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        let full = e.to_string();
        // serde_json appends " at line L column C"; keep the message alone
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

/// Whether a JSON document describes an extensive-form game rather than a
/// spacetime game.
pub fn is_efg_text(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text)
        .ok()
        .and_then(|v| v.as_object().map(|o| o.contains_key("nodes")))
        .unwrap_or(false)
}
