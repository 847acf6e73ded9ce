//! Linearizations, the constructed extensive form, and the converse
//! interpretability test.

pub mod construct;
pub mod efg;
pub mod interpret;

pub use construct::{
    construct_extensive, enumerate_linearizations, linearize, prefix_histories, to_extensive, Constructed,
    Linearization,
};
pub use efg::{
    has_perfect_recall, perfect_recall_violation, strategic_form_efg, validate_efg, ChoiceNode, ExtensiveFormGame,
    InfoSet, NodeRef, Outcome,
};
pub use interpret::{
    find_isomorphism, is_spacetime_interpretable, Certificate, InterpretVerdict, Isomorphism, Witness,
    DEFAULT_BUDGET,
};
