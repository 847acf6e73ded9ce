//! Spacetime games with perfect information.
//!
//! Decisions are located in Minkowski spacetime (or placed in an explicit
//! precedence DAG). From that causal structure the crate derives histories,
//! strategic and reduced strategic forms, the equivalent extensive-form game
//! with imperfect information, and pure-strategy solutions. It can also test
//! whether an arbitrary extensive-form game arises from some spacetime game.
//!
//! ```
//! use spacetime_games::{fixtures, enumerate_complete_histories, strategic_form, pure_nash};
//!
//! let pd = fixtures::prisoners_dilemma();
//! assert_eq!(enumerate_complete_histories(&pd).len(), 4);
//! let nf = strategic_form(&pd).unwrap();
//! let eq = pure_nash(&nf);
//! assert_eq!(nf.profile_label(&eq[0]), "(d,d)");
//! ```

pub mod assignment;
pub mod consistency;
pub mod error;
pub mod extensive;
pub mod fixtures;
pub mod game;
pub mod geometry;
pub mod histories;
pub mod io;
pub mod model;
pub mod precedence;
pub mod solve;
pub mod strategic;

pub use assignment::{assign, RawAssignment};
pub use consistency::{actual_precedence, actually_precedes, check_consistency, prune_unreachable, ConsistencyReport, Violation};
pub use error::{CycleError, GameError, GeometryError, UnionConflict};
pub use extensive::{
    construct_extensive, enumerate_linearizations, has_perfect_recall, is_spacetime_interpretable, linearize,
    prefix_histories, strategic_form_efg, to_extensive, validate_efg, Certificate, ChoiceNode, Constructed,
    ExtensiveFormGame, InfoSet, InterpretVerdict, Isomorphism, Linearization, NodeRef, Outcome, Witness,
};
pub use game::{GameBuilder, SpacetimeGame};
pub use geometry::{classify, interval, light_cone_membership, CausalClass, Event, LightCone, Metric};
pub use histories::{enumerate_complete_histories, is_complete, is_history, History};
pub use io::DocumentError;
pub use model::{ActionId, AgentId, DecisionPoint, DecisionPointId};
pub use precedence::PrecedenceRelation;
pub use solve::{backward_induction, iterated_strict_dominance, maximin, pure_nash, Maximin, Plan};
pub use strategic::{
    reduce_strategy, reduced_strategic_form, reduced_strategy_space, resolve, resolve_reduced, strategic_form,
    strategy_space, NormalFormGame, ReducedStrategy, Strategy, StrategyProfile, MAX_CELLS,
};
