//! Causality conditions and the CHSH functional.
//!
//! Three conditions are distinguished:
//!
//! * no-signaling, within one order: each party's marginal does not depend
//!   on the other party's input;
//! * local measurement: each party's input-averaged marginal is the same in
//!   both orders;
//! * no causal order: the full tables of both orders coincide.
//!
//! No causal order implies local measurement trivially. It is strictly
//! stronger than no-signaling: [`mixed_order_device`](crate::zoo::mixed_order_device)
//! satisfies the other two and breaks it.

use serde::{Deserialize, Serialize};

use crate::boxes::{Behavior, NonlocalBox, Order};

/// Default pass/fail tolerance for the checkers.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub pass: bool,
    pub max_residual: f64,
}

impl ConditionCheck {
    fn new(max_residual: f64, tol: f64) -> Self {
        Self {
            pass: max_residual <= tol,
            max_residual,
        }
    }
}

/// Largest change in one party's marginal when the other party's input is
/// toggled, within a single behavior.
pub fn signaling_residual(beh: &Behavior) -> f64 {
    let mut r: f64 = 0.0;
    for x in 0..2 {
        for a in 0..2 {
            r = r.max((beh.get(x, 0).alice_marginal(a) - beh.get(x, 1).alice_marginal(a)).abs());
        }
    }
    for y in 0..2 {
        for b in 0..2 {
            r = r.max((beh.get(0, y).bob_marginal(b) - beh.get(1, y).bob_marginal(b)).abs());
        }
    }
    r
}

pub fn check_no_signaling(bx: &NonlocalBox, order: Order, tol: f64) -> ConditionCheck {
    ConditionCheck::new(signaling_residual(bx.behavior(order)), tol)
}

/// `P(a|x) = Σ_{b,y} P(ab|xy) / 2`.
fn alice_local(beh: &Behavior, a: usize, x: usize) -> f64 {
    0.5 * (beh.get(x, 0).alice_marginal(a) + beh.get(x, 1).alice_marginal(a))
}

fn bob_local(beh: &Behavior, b: usize, y: usize) -> f64 {
    0.5 * (beh.get(0, y).bob_marginal(b) + beh.get(1, y).bob_marginal(b))
}

pub fn check_local_measurement(bx: &NonlocalBox, tol: f64) -> ConditionCheck {
    let (pa, pb) = (&bx.alice_first, &bx.bob_first);
    let mut r: f64 = 0.0;
    for i in 0..2 {
        for k in 0..2 {
            r = r.max((alice_local(pa, k, i) - alice_local(pb, k, i)).abs());
            r = r.max((bob_local(pa, k, i) - bob_local(pb, k, i)).abs());
        }
    }
    ConditionCheck::new(r, tol)
}

pub fn check_no_causal_order(bx: &NonlocalBox, tol: f64) -> ConditionCheck {
    ConditionCheck::new(bx.alice_first.max_abs_diff(&bx.bob_first), tol)
}

/// `E(0,0) + E(0,1) + E(1,0) − E(1,1)` for one behavior.
pub fn chsh_signed(beh: &Behavior) -> f64 {
    let e = |x, y| beh.get(x, y).correlator();
    e(0, 0) + e(0, 1) + e(1, 0) - e(1, 1)
}

/// `|E(0,0) + E(0,1) + E(1,0) − E(1,1)|` from the chosen order's tables.
pub fn chsh_value(bx: &NonlocalBox, order: Order) -> f64 {
    chsh_signed(bx.behavior(order)).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChshValues {
    pub alice_first: f64,
    pub bob_first: f64,
}

/// Every condition for one box at one tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CausalityReport {
    pub no_signaling_alice_first: ConditionCheck,
    pub no_signaling_bob_first: ConditionCheck,
    pub local_measurement: ConditionCheck,
    pub no_causal_order: ConditionCheck,
    pub tolerance: f64,
    pub chsh: ChshValues,
}

impl CausalityReport {
    pub fn all_pass(&self) -> bool {
        self.no_signaling_alice_first.pass
            && self.no_signaling_bob_first.pass
            && self.local_measurement.pass
            && self.no_causal_order.pass
    }
}

pub fn causality_report(bx: &NonlocalBox, tol: f64) -> CausalityReport {
    CausalityReport {
        no_signaling_alice_first: check_no_signaling(bx, Order::AliceFirst, tol),
        no_signaling_bob_first: check_no_signaling(bx, Order::BobFirst, tol),
        local_measurement: check_local_measurement(bx, tol),
        no_causal_order: check_no_causal_order(bx, tol),
        tolerance: tol,
        chsh: ChshValues {
            alice_first: chsh_value(bx, Order::AliceFirst),
            bob_first: chsh_value(bx, Order::BobFirst),
        },
    }
}

/// Outcome of [`signaling_implication_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignalingFinding {
    pub signals_alice_first: bool,
    pub signals_bob_first: bool,
    pub no_causal_order: bool,
    /// Signaling in some order while both orders agree. Then the receiver
    /// could read the sender's input in the order where the sender has not
    /// yet acted, so such a box cannot be realized causally.
    pub inconsistent: bool,
}

pub fn signaling_implication_check(bx: &NonlocalBox, tol: f64) -> SignalingFinding {
    let sa = !check_no_signaling(bx, Order::AliceFirst, tol).pass;
    let sb = !check_no_signaling(bx, Order::BobFirst, tol).pass;
    let nco = check_no_causal_order(bx, tol).pass;
    SignalingFinding {
        signals_alice_first: sa,
        signals_bob_first: sb,
        no_causal_order: nco,
        inconsistent: nco && (sa || sb),
    }
}
