//! Numerical checks that order-independence forces the Born rule.
//!
//! Measuring `σ_z ⊗ σ_z` on a state with `α₃ = 0`, the two orders give
//!
//! ```text
//! Alice first: H(q₁ + q₂) · H(q₁ / (q₁ + q₂))
//! Bob first:   H(q₁)      · H(1)
//! ```
//!
//! with `q₁ = |α₁|²`, `q₂ = |α₂|²`. Agreement for every state is the
//! functional equation `H(q₁+q₂) H(q₁/(q₁+q₂)) = H(q₁)`; adding the same
//! equation with `q₁ ↔ q₂` and using `H(t) + H(1−t) = 1` leaves Cauchy's
//! equation `H(q₁+q₂) = H(q₁) + H(q₂)`, whose only monotone solution with
//! `H(1) = 1` is `H(p) = p`.

mod grid;
mod solve;
mod violation;

pub use grid::{additivity_check, nco_residual, pair_state, residual_grid, AdditivityReport, ResidualGrid, ResidualRecord};
pub use solve::{functional_residuals, solve_rule, solve_rule_from, RuleSolution, SOLVE_TOLERANCE};
pub use violation::{box_nco_residual, max_nco_violation, ViolationSearch};
pub(crate) use violation::restart_rng;
