//! Analysis of stochastic choice data through the lens of self-punishment.
//!
//! A decision maker who denies herself pleasure does not maximize her true
//! preference but a *harmful distortion* of it: the top `i` alternatives are
//! shifted, in reverse order, to the bottom of the ranking. A dataset that can
//! be explained by a single preference together with a randomization over its
//! harmful distortions is a *harmful random utility model*.
//!
//! The crate decides whether a finite choice dataset is such a model, elicits
//! the underlying preference and the probability placed on each distortion,
//! classifies how uniquely they are identified, and computes the degree of
//! self-punishment. Everything runs on exact rational arithmetic and is
//! cross-checked against brute-force oracles in the test suites.
//!
//! Module map:
//! - [`orders`]: linear orders, harmful distortions, suffix reversals,
//!   single-peakedness;
//! - [`choice`]: exact-rational stochastic choice tables, validation, I/O;
//! - [`forward`]: choice probabilities from a justification (two independent
//!   routes) and full-table simulation;
//! - [`detect`]: the ordered-composition test and the backtracking revealed
//!   preference search;
//! - [`identify`]: weight recovery, enumeration of all justifications,
//!   uniqueness classification;
//! - [`degree`]: the degree of self-punishment;
//! - [`probes`]: exact RUM feasibility, correlation bounds, single-peaked
//!   support checks.

pub mod choice;
pub mod degree;
pub mod detect;
mod feasibility;
pub mod forward;
pub mod identify;
pub mod orders;
pub mod probes;

pub use choice::{
    is_regular, parse_rational, render_rational, support_set, ChoiceError, Menu, Rational,
    RawDataset, StochasticChoice, SupportSet, Tolerance,
};
pub use degree::{degree_of_self_punishment, has_jth_ordered_composition, DegreeError, DegreeReport};
pub use detect::{
    composes, composing_orders, composition_witness, first_composing_order, is_harmful,
    CompositionCheck, CompositionWitness,
};
pub use forward::{
    choice_prob_closed, choice_prob_direct, induced_lottery, simulate, simulate_rum, ForwardError,
    GeneralLottery, HarmfulWeights,
};
pub use identify::{
    all_justifications, classify, weights_from_data, IdentificationClass, IdentifyError,
    Justification,
};
pub use orders::{
    distortion_preimage, enumerate_orders, is_single_peaked, GroundSet, LinearOrder, OrderError,
};
pub use probes::{
    correlation_bound, is_rum, max_correlation_bound, single_peaked_support, ProbeError,
    RumFeasibility, DEFAULT_SIZE_GUARD,
};
