//! Certificates: two-squares recursions, witnesses of non-*-cleanness, and
//! lifting *-clean decompositions along `H -> H x C2`.

mod check;
mod generate;
mod lift;
mod squares;

pub use check::{check_witness, CheckMode, Condition2Route, WitnessCheck, DEFAULT_CONDITION2_BUDGET};
pub use generate::{generate_witness, NonCleanWitness, WitnessCase, WitnessOutcome};
pub use lift::{lift_c2, C2Extension, StarCleanDecomposition};
pub use squares::{annihilator_identity, annihilator_pair, two_squares, TwoSquaresCertificate};
