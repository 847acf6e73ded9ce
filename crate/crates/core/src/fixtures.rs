//! The bundled example games.
//!
//! * `pd`: prisoner's dilemma, two spacelike-separated decisions.
//! * `promise`: Alice decides first; Bob decides only if she trusts him.
//! * `running`: four agents and six decision points.
//! * `epr`: the EPR experiment with two laboratories.
//! * `counter`: an extensive-form game that is not a spacetime game.
//! * `forgetful`: a one-player tree where the player forgets their first move.

use crate::extensive::ExtensiveFormGame;
use crate::game::SpacetimeGame;
use crate::io::{parse_efg, parse_game};

pub const PD_GAME: &str = include_str!("../fixtures/pd.game");
pub const PROMISE_GAME: &str = include_str!("../fixtures/promise.game");
pub const RUNNING_GAME: &str = include_str!("../fixtures/running.game");
pub const EPR_GAME: &str = include_str!("../fixtures/epr.game");
pub const COUNTER_EFG: &str = include_str!("../fixtures/counter.efg");
pub const FORGETFUL_EFG: &str = include_str!("../fixtures/forgetful.efg");

/// The spacetime-game documents, by file name.
pub const GAME_FILES: &[(&str, &str)] = &[
    ("pd.game", PD_GAME),
    ("promise.game", PROMISE_GAME),
    ("running.game", RUNNING_GAME),
    ("epr.game", EPR_GAME),
];

/// Every bundled document, by file name.
pub const ALL_FILES: &[(&str, &str)] = &[
    ("pd.game", PD_GAME),
    ("promise.game", PROMISE_GAME),
    ("running.game", RUNNING_GAME),
    ("epr.game", EPR_GAME),
    ("counter.efg", COUNTER_EFG),
    ("forgetful.efg", FORGETFUL_EFG),
];

fn load(name: &str, text: &str) -> SpacetimeGame {
    parse_game(text).unwrap_or_else(|e| panic!("bundled {name} is invalid: {e}"))
}

pub fn prisoners_dilemma() -> SpacetimeGame {
    load("pd.game", PD_GAME)
}

pub fn promise() -> SpacetimeGame {
    load("promise.game", PROMISE_GAME)
}

pub fn running() -> SpacetimeGame {
    load("running.game", RUNNING_GAME)
}

pub fn epr() -> SpacetimeGame {
    load("epr.game", EPR_GAME)
}

pub fn counter() -> ExtensiveFormGame {
    parse_efg(COUNTER_EFG).unwrap_or_else(|e| panic!("bundled counter.efg is invalid: {e}"))
}

pub fn forgetful() -> ExtensiveFormGame {
    parse_efg(FORGETFUL_EFG).unwrap_or_else(|e| panic!("bundled forgetful.efg is invalid: {e}"))
}

/// All bundled spacetime games with their names.
pub fn games() -> Vec<(&'static str, SpacetimeGame)> {
    vec![
        ("pd", prisoners_dilemma()),
        ("promise", promise()),
        ("running", running()),
        ("epr", epr()),
    ]
}

/// `g` with locations dropped and its timelike precedence declared as a DAG.
pub fn as_dag(g: &SpacetimeGame) -> SpacetimeGame {
    let mut b = SpacetimeGame::builder().agents(g.agents().iter().cloned());
    for a in g.actions() {
        b = b.action(a.clone());
    }
    for id in g.declared_order() {
        let p = g.point(id).expect("declared points exist");
        b = b.point(id.clone(), p.actions.clone(), None);
        for (bound, action) in g.contingency(id).expect("declared points exist").iter() {
            b = b.contingency(id.clone(), bound.clone(), action.clone());
        }
    }
    for (x, y) in g.precedence().pairs() {
        b = b.precedes(x.clone(), y.clone());
    }
    for (h, v) in g.payoffs() {
        b = b.payoff(h.clone(), v.clone());
    }
    b.allow_spacelike_same_agent(g.allows_spacelike_same_agent())
        .build()
        .expect("dropping locations keeps a valid game")
}
