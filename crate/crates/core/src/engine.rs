//! Order-sensitive two-step measurement.
//!
//! The first party measures; outcome `a` has weight `C_a`, the squared norm
//! of the state's component along the `a`-th eigenvector. The outcome is
//! assigned probability `H(C₀)` (or `1 − H(C₀)`) and the other party's qubit
//! is left in the normalized conditional state `|Y_a⟩`. The second party
//! then measures `|Y_a⟩` under the same rule. With `H(p) = p` this is
//! ordinary sequential projective measurement and both orders agree.

use num_complex::Complex64;

use crate::boxes::{Behavior, JointDistribution, NonlocalBox, Party};
use crate::observable::{inner, ObservablePair, QubitObservable};
use crate::rule::ProbabilityRule;
use crate::state::TwoQubitState;

/// Branch weights below this are treated as exactly zero. Eigenvector
/// rounding leaves weights around 1e-33 on branches that should be empty.
pub const EMPTY_BRANCH: f64 = 1e-24;

/// One outcome of the first measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Branch {
    pub probability: f64,
    /// Normalized state of the other party, `None` for an empty branch.
    pub conditional: Option<[Complex64; 2]>,
}

/// Probability of outcome 0 for a binary measurement whose outcomes carry
/// weights `w0`, `w1` (not necessarily normalized).
///
/// The rule is evaluated on the smaller weight and complemented when needed,
/// which keeps complement symmetry exact in floating point.
pub fn outcome_zero_probability(rule: ProbabilityRule, w0: f64, w1: f64) -> f64 {
    if w0 < EMPTY_BRANCH {
        return 0.0;
    }
    if w1 < EMPTY_BRANCH {
        return 1.0;
    }
    let total = w0 + w1;
    if w0 <= w1 {
        rule.eval_clamped((w0 / total).clamp(0.0, 1.0))
    } else {
        1.0 - rule.eval_clamped((w1 / total).clamp(0.0, 1.0))
    }
}

/// Unnormalized component of the other party's qubit when `party` obtains
/// the outcome with eigenvector `e`.
fn project(state: &TwoQubitState, party: Party, e: &[Complex64; 2]) -> [Complex64; 2] {
    let s = |a, b| state.amp(a, b);
    match party {
        Party::Alice => [
            e[0].conj() * s(0, 0) + e[1].conj() * s(1, 0),
            e[0].conj() * s(0, 1) + e[1].conj() * s(1, 1),
        ],
        Party::Bob => [
            e[0].conj() * s(0, 0) + e[1].conj() * s(0, 1),
            e[0].conj() * s(1, 0) + e[1].conj() * s(1, 1),
        ],
    }
}

fn norm_sqr(v: &[Complex64; 2]) -> f64 {
    v[0].norm_sqr() + v[1].norm_sqr()
}

/// The first measurement of a sequence: outcome probabilities and the
/// conditional states handed to the other party.
pub fn first_step(
    state: &TwoQubitState,
    obs: &QubitObservable,
    party: Party,
    rule: ProbabilityRule,
) -> [Branch; 2] {
    let blocks = obs.eigenbasis().map(|e| project(state, party, &e));
    let w = blocks.map(|v| norm_sqr(&v));
    let p0 = outcome_zero_probability(rule, w[0], w[1]);
    let probs = [p0, 1.0 - p0];
    std::array::from_fn(|a| {
        let conditional = (w[a] >= EMPTY_BRANCH).then(|| {
            let n = w[a].sqrt();
            [blocks[a][0] / n, blocks[a][1] / n]
        });
        Branch {
            probability: if conditional.is_some() { probs[a] } else { 0.0 },
            conditional,
        }
    })
}

/// Probability of outcome 0 when a single qubit in state `v` is measured.
pub fn single_qubit_zero_probability(v: &[Complex64; 2], obs: &QubitObservable, rule: ProbabilityRule) -> f64 {
    let [e0, e1] = obs.eigenbasis();
    outcome_zero_probability(rule, inner(&e0, v).norm_sqr(), inner(&e1, v).norm_sqr())
}

/// `[first][second]` table for the sequence first-party-then-other.
fn sequential(
    state: &TwoQubitState,
    first: &QubitObservable,
    second: &QubitObservable,
    party: Party,
    rule: ProbabilityRule,
) -> [[f64; 2]; 2] {
    let branches = first_step(state, first, party, rule);
    branches.map(|br| match br.conditional {
        Some(v) => {
            let p00 = br.probability * single_qubit_zero_probability(&v, second, rule);
            [p00, br.probability - p00]
        }
        None => [0.0, 0.0],
    })
}

/// `P_A(ab|xy)` for one input pair: Alice measures `x_obs`, then Bob
/// measures `y_obs` on his conditional state.
pub fn joint_alice_first(
    state: &TwoQubitState,
    x_obs: &QubitObservable,
    y_obs: &QubitObservable,
    rule: ProbabilityRule,
) -> JointDistribution {
    JointDistribution::from_raw(sequential(state, x_obs, y_obs, Party::Alice, rule))
}

/// `P_B(ab|xy)`: Bob measures `y_obs` first. Still indexed `[a][b]`.
pub fn joint_bob_first(
    state: &TwoQubitState,
    x_obs: &QubitObservable,
    y_obs: &QubitObservable,
    rule: ProbabilityRule,
) -> JointDistribution {
    let t = sequential(state, y_obs, x_obs, Party::Bob, rule);
    JointDistribution::from_raw([[t[0][0], t[1][0]], [t[0][1], t[1][1]]])
}

/// Both orders over all four input pairs.
pub fn assemble_box(
    state: &TwoQubitState,
    x_obs: &ObservablePair,
    y_obs: &ObservablePair,
    rule: ProbabilityRule,
) -> NonlocalBox {
    let order = |f: fn(&TwoQubitState, &QubitObservable, &QubitObservable, ProbabilityRule) -> JointDistribution| {
        Behavior::new(std::array::from_fn(|x| {
            std::array::from_fn(|y| f(state, &x_obs[x], &y_obs[y], rule))
        }))
    };
    NonlocalBox::new(
        order(joint_alice_first),
        order(joint_bob_first),
        format!(
            "state={state} rule={rule} x={},{} y={},{}",
            x_obs[0], x_obs[1], y_obs[0], y_obs[1]
        ),
    )
}
