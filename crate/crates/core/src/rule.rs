//! Outcome-probability assignments `H: [0, 1] → [0, 1]`.
//!
//! A measurement that would give an outcome with quantum weight `p = |c|²`
//! assigns that outcome probability `H(p)` and the other outcome `1 − H(p)`.
//! Every named rule satisfies `H(0) = 0`, `H(1) = 1` and
//! `H(p) + H(1 − p) = 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Slack allowed on the input interval before a domain error.
pub const DOMAIN_SLACK: f64 = 1e-12;

/// Half-width of the band around `1/2` where the step rule returns `1/2`.
pub const STEP_TIE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbabilityRule {
    /// `H(p) = p`.
    Born,
    /// `H(p) = p^{m/2} / (p^{m/2} + (1 − p)^{m/2})`; Born at `m = 2`.
    Power(f64),
    /// The `m → ∞` limit of [`ProbabilityRule::Power`].
    Step,
}

impl ProbabilityRule {
    pub fn power(m: f64) -> Result<Self> {
        if m.is_finite() && m > 0.0 {
            Ok(Self::Power(m))
        } else {
            Err(Error::InvalidExponent(m))
        }
    }

    /// Evaluates `H(p)`. Inputs within [`DOMAIN_SLACK`] of `[0, 1]` are
    /// clamped.
    pub fn eval(&self, p: f64) -> Result<f64> {
        if p.is_nan() || !(-DOMAIN_SLACK..=1.0 + DOMAIN_SLACK).contains(&p) {
            return Err(Error::Domain {
                what: "p",
                value: p,
                lo: 0.0,
                hi: 1.0,
            });
        }
        Ok(self.eval_clamped(p.clamp(0.0, 1.0)))
    }

    /// `H(p)` for `p` already known to lie in `[0, 1]`.
    pub(crate) fn eval_clamped(&self, p: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&p));
        match *self {
            Self::Born => p,
            Self::Power(m) => power_rule(p, m),
            Self::Step => {
                if (p - 0.5).abs() <= STEP_TIE {
                    0.5
                } else if p < 0.5 {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }

    pub fn is_born(&self) -> bool {
        matches!(self, Self::Born)
    }
}

/// Divides through by the larger of `p^{m/2}` and `(1−p)^{m/2}` so that
/// only a ratio `≤ 1` is exponentiated.
fn power_rule(p: f64, m: f64) -> f64 {
    let q = 1.0 - p;
    if p >= q {
        // p > 0 here
        1.0 / (1.0 + (q / p).powf(0.5 * m))
    } else {
        let t = (p / q).powf(0.5 * m);
        t / (1.0 + t)
    }
}

/// Evaluates `rule` at `p`.
pub fn eval_rule(rule: ProbabilityRule, p: f64) -> Result<f64> {
    rule.eval(p)
}

impl fmt::Display for ProbabilityRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Born => f.write_str("born"),
            Self::Power(m) => write!(f, "power:m={m}"),
            Self::Step => f.write_str("step"),
        }
    }
}

impl FromStr for ProbabilityRule {
    type Err = Error;

    /// Accepts `born`, `step`, `power:m=<real>` (also `power:<real>`).
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            what: "rule",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "born" => Ok(Self::Born),
            "step" => Ok(Self::Step),
            _ => {
                let rest = t
                    .strip_prefix("power:")
                    .ok_or_else(|| err("expected born, step or power:m=<real>"))?;
                let rest = rest.strip_prefix("m=").unwrap_or(rest);
                let m: f64 = rest.parse().map_err(|_| err("exponent is not a number"))?;
                Self::power(m).map_err(|e| err(&e.to_string()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn named() -> Vec<ProbabilityRule> {
        let mut v = vec![ProbabilityRule::Born, ProbabilityRule::Step];
        v.extend([0.001, 0.5, 1.0, 2.0, 3.0, 4.0, 8.0, 50.0, 200.0, 5000.0].map(ProbabilityRule::Power));
        v
    }

    #[test]
    fn born_is_identity() {
        assert_eq!(eval_rule(ProbabilityRule::Born, 0.3).unwrap(), 0.3);
    }

    #[test]
    fn power_two_recovers_born() {
        for i in 0..=1000 {
            let p = i as f64 / 1000.0;
            let h = eval_rule(ProbabilityRule::Power(2.0), p).unwrap();
            assert!((h - p).abs() <= 1e-15, "p={p} h={h}");
        }
    }

    #[test]
    fn power_four_at_quarter() {
        // (1/4)² / ((1/4)² + (3/4)²) = 1/10
        let h = eval_rule(ProbabilityRule::Power(4.0), 0.25).unwrap();
        assert!((h - 0.1).abs() < 1e-15);
    }

    #[test]
    fn step_values() {
        let s = ProbabilityRule::Step;
        assert_eq!(s.eval(0.853553).unwrap(), 1.0);
        assert_eq!(s.eval(0.2).unwrap(), 0.0);
        assert_eq!(s.eval(0.5).unwrap(), 0.5);
        assert_eq!(s.eval(0.5 + 1e-16).unwrap(), 0.5);
    }

    #[test]
    fn endpoints_exact() {
        for r in named() {
            assert_eq!(r.eval(0.0).unwrap(), 0.0, "{r}");
            assert_eq!(r.eval(1.0).unwrap(), 1.0, "{r}");
        }
    }

    #[test]
    fn complement_symmetry_on_grid() {
        for r in named() {
            for i in 0..=1000 {
                let p = i as f64 / 1000.0;
                let s = r.eval(p).unwrap() + r.eval(1.0 - p).unwrap();
                assert!((s - 1.0).abs() <= 1e-12, "{r} p={p} sum={s}");
            }
        }
    }

    #[test]
    fn large_power_approaches_step() {
        let hi = ProbabilityRule::Power(200.0);
        for i in 0..=1000 {
            let p = i as f64 / 1000.0;
            if p > 0.45 && p < 0.55 {
                continue;
            }
            let d = (hi.eval(p).unwrap() - ProbabilityRule::Step.eval(p).unwrap()).abs();
            assert!(d <= 1e-6, "p={p} d={d}");
        }
    }

    #[test]
    fn extreme_exponents_stay_finite() {
        for m in [1e-9, 1e4, 1e8] {
            for p in [1e-300, 1e-12, 0.3, 0.7, 1.0 - 1e-12] {
                let h = ProbabilityRule::Power(m).eval(p).unwrap();
                assert!(h.is_finite() && (0.0..=1.0).contains(&h));
            }
        }
    }

    #[test]
    fn domain_errors() {
        let r = ProbabilityRule::Born;
        assert!(matches!(r.eval(1.1), Err(Error::Domain { .. })));
        assert!(matches!(r.eval(-0.01), Err(Error::Domain { .. })));
        assert!(r.eval(f64::NAN).is_err());
        assert_eq!(r.eval(1.0 + 1e-13).unwrap(), 1.0);
        assert_eq!(r.eval(-1e-13).unwrap(), 0.0);
    }

    #[test]
    fn invalid_exponents() {
        assert!(ProbabilityRule::power(0.0).is_err());
        assert!(ProbabilityRule::power(-1.0).is_err());
        assert!(ProbabilityRule::power(f64::INFINITY).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for r in named() {
            let back: ProbabilityRule = r.to_string().parse().unwrap();
            assert_eq!(back, r);
        }
        assert_eq!("power:4".parse::<ProbabilityRule>().unwrap(), ProbabilityRule::Power(4.0));
        assert!("power:m=-2".parse::<ProbabilityRule>().is_err());
        assert!("linear".parse::<ProbabilityRule>().is_err());
    }

    proptest! {
        #[test]
        fn power_is_monotone(m in 0.01f64..100.0, a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let r = ProbabilityRule::Power(m);
            prop_assert!(r.eval(lo).unwrap() <= r.eval(hi).unwrap());
        }

        #[test]
        fn values_in_unit_interval(m in 0.01f64..500.0, p in 0.0f64..=1.0) {
            let h = ProbabilityRule::Power(m).eval(p).unwrap();
            prop_assert!((0.0..=1.0).contains(&h));
        }
    }
}
