//! Simulation and analysis of two-party nonlocal boxes produced by
//! sequential qubit measurements under generalized probability rules.
//!
//! The pieces, bottom up:
//!
//! * [`state`], [`observable`], [`rule`]: pure two-qubit states, binary
//!   spin measurements and outcome-probability assignments `H(p)`.
//! * [`engine`]: Alice-first and Bob-first joint distributions and full
//!   [`NonlocalBox`]es.
//! * [`analysis`], [`zoo`]: no-signaling, local-measurement and
//!   no-causal-order checks, the CHSH value, and reference boxes.
//! * [`uniqueness`]: numerical evidence that only `H(p) = p` makes both
//!   measurement orders agree on every state.
//! * [`experiments`]: the CHSH-versus-exponent sweep and the search for
//!   order-independent observables.

pub mod analysis;
pub mod boxes;
pub mod boxfile;
pub mod cli;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod optimize;
pub mod observable;
pub mod rule;
pub mod sampling;
pub mod state;
pub mod uniqueness;
pub mod zoo;

pub use analysis::{causality_report, chsh_value, CausalityReport, ConditionCheck, DEFAULT_TOLERANCE};
pub use boxes::{Behavior, JointDistribution, NonlocalBox, Order, Party};
pub use engine::{assemble_box, first_step, joint_alice_first, joint_bob_first};
pub use error::{Error, Result};
pub use observable::{chsh_observables, ObservablePair, QubitObservable};
pub use rule::{eval_rule, ProbabilityRule};
pub use state::{bell_state, make_state, Amplitude, TwoQubitState};
