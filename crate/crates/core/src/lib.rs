//! Exact combinatorics of periodic angles for the family `z^d + c`.
//!
//! Angles are reduced rationals under `t -> d t`, words are itineraries,
//! and kneading sequences record the orbit of an angle relative to the
//! partition cut at its own preimages. On top of these sit the
//! primitive/satellite criterion for landing points of parameter rays and
//! a model of the monodromy of periodic points around parabolic
//! parameters.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod angle;
pub mod engine;
pub mod error;
pub mod kneading;
pub mod parabolic;
pub mod word;

pub use angle::Angle;
pub use engine::{
    connect, move_for_primitive, predicted_move, special_cycle_move, transitivity_certificate, transposition_at,
    ConnectionPlan, MonodromyMove, MoveKind, TransitivityReport,
};
pub use error::{Error, Result};
pub use kneading::{all_cyclic_expressions, arc_label, cyclic_expression, CyclicExpression, KneadingSequence};
pub use parabolic::{
    beta_family, classify_angle, itinerary_of_angle, satellite_conditions, special_data, special_word, BetaAngle,
    BetaFamily, ParabolicClass,
};
pub use word::{exact_period_words, Word};
