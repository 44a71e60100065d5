//! Hand-specified boxes.

use crate::boxes::{Behavior, JointDistribution, NonlocalBox};

fn xor_behavior(on: f64, off: f64) -> Behavior {
    Behavior::new(std::array::from_fn(|x| {
        std::array::from_fn(|y| {
            let t = std::array::from_fn(|a| std::array::from_fn(|b| if a ^ b == x & y { on } else { off }));
            JointDistribution::from_raw(t)
        })
    }))
}

/// `P(ab|xy) = 1/2` if `a ⊕ b = xy`, else 0.
pub fn pr_behavior() -> Behavior {
    xor_behavior(0.5, 0.0)
}

/// `P(ab|xy) = 1/2` if `a ⊕ b ≠ xy`, else 0.
pub fn anti_pr_behavior() -> Behavior {
    xor_behavior(0.0, 0.5)
}

pub fn pr_box() -> NonlocalBox {
    NonlocalBox::order_independent(pr_behavior(), "builtin:pr")
}

pub fn anti_pr_box() -> NonlocalBox {
    NonlocalBox::order_independent(anti_pr_behavior(), "builtin:anti-pr")
}

/// PR correlations when Alice measures first, anti-PR when Bob does.
/// Non-signaling in each order and locally consistent, yet the two orders
/// disagree on every joint entry.
pub fn mixed_order_device() -> NonlocalBox {
    NonlocalBox::new(pr_behavior(), anti_pr_behavior(), "builtin:mixed-order")
}

/// Local deterministic strategy `a = alice[x]`, `b = bob[y]`.
pub fn deterministic_box(alice: [usize; 2], bob: [usize; 2]) -> NonlocalBox {
    let beh = Behavior::new(std::array::from_fn(|x| {
        std::array::from_fn(|y| JointDistribution::deterministic(alice[x], bob[y]))
    }));
    NonlocalBox::order_independent(beh, format!("builtin:local:{}{}{}{}", alice[0], alice[1], bob[0], bob[1]))
}

/// White noise, `P(ab|xy) = 1/4`.
pub fn uniform_box() -> NonlocalBox {
    NonlocalBox::order_independent(Behavior::new([[JointDistribution::uniform(); 2]; 2]), "builtin:uniform")
}

/// Both outcomes copy Bob's input: `P(ab|x0) = δ_{a0}δ_{b0}`,
/// `P(ab|x1) = δ_{a1}δ_{b1}`. Alice's marginal reveals `y`.
pub fn signaling_box() -> NonlocalBox {
    let beh = Behavior::new(std::array::from_fn(|_| std::array::from_fn(|y| JointDistribution::deterministic(y, y))));
    NonlocalBox::order_independent(beh, "builtin:signaling")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pr_tables() {
        let b = pr_box();
        for x in 0..2 {
            for y in 0..2 {
                for a in 0..2 {
                    for bb in 0..2 {
                        let want = if a ^ bb == x * y { 0.5 } else { 0.0 };
                        assert_eq!(b.alice_first.p(a, bb, x, y), want);
                        assert_eq!(b.bob_first.p(a, bb, x, y), want);
                        assert_eq!(anti_pr_box().alice_first.p(a, bb, x, y), 0.5 - want);
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_order_orders() {
        let m = mixed_order_device();
        assert_eq!(m.alice_first, pr_behavior());
        assert_eq!(m.bob_first, anti_pr_behavior());
    }
}
