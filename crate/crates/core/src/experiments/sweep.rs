use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{check_no_causal_order, chsh_value};
use crate::boxes::{NonlocalBox, Order};
use crate::engine::assemble_box;
use crate::error::{Error, Result};
use crate::observable::chsh_observables;
use crate::rule::ProbabilityRule;
use crate::state::TwoQubitState;

/// CHSH value of the Bell state under the power rule with exponent `m`:
///
/// ```text
/// B(m) = 4 (s₊^m − s₋^m) / (s₊^m + s₋^m),   s± = √(2 ± √2)
/// ```
///
/// evaluated as `4 (1 − r) / (1 + r)` with `r = (s₋/s₊)^m ≤ 1`, so large `m`
/// cannot overflow. `B(2) = 2√2`, `B(m) → 4` as `m → ∞`, `B(m) → 0` as
/// `m → 0⁺`.
pub fn closed_form_chsh(m: f64) -> f64 {
    let sqrt2 = std::f64::consts::SQRT_2;
    let ratio = (2.0 - sqrt2) / (2.0 + sqrt2);
    let r = ratio.powf(0.5 * m);
    4.0 * (1.0 - r) / (1.0 + r)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub m: f64,
    /// Alice-first CHSH value from the engine.
    pub chsh_engine: f64,
    pub chsh_closed_form: f64,
    /// Largest `|P_A − P_B|` over the box.
    pub nco_residual: f64,
}

/// The Bell-state box with the standard CHSH observables under `rule`.
pub fn bell_chsh_box(rule: ProbabilityRule) -> NonlocalBox {
    let (xs, ys) = chsh_observables();
    let mut bx = assemble_box(&TwoQubitState::bell(), &xs, &ys, rule);
    bx.provenance = format!("state=bell rule={rule} observables=chsh");
    bx
}

/// Evaluates `steps` exponents evenly spaced over `[m_start, m_end]`.
pub fn chsh_sweep(m_start: f64, m_end: f64, steps: usize) -> Result<Vec<SweepRow>> {
    if !(m_start.is_finite() && m_end.is_finite() && 0.0 < m_start && m_start < m_end && steps >= 2) {
        return Err(Error::InvalidSweep { m_start, m_end, steps });
    }
    let width = (m_end - m_start) / (steps - 1) as f64;
    Ok((0..steps)
        .into_par_iter()
        .map(|i| {
            let m = if i == steps - 1 { m_end } else { m_start + i as f64 * width };
            let bx = bell_chsh_box(ProbabilityRule::Power(m));
            SweepRow {
                m,
                chsh_engine: chsh_value(&bx, Order::AliceFirst),
                chsh_closed_form: closed_form_chsh(m),
                nco_residual: check_no_causal_order(&bx, 0.0).max_residual,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_spot_values() {
        assert!((closed_form_chsh(2.0) - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        // (√(2±√2))⁴ = 6 ± 4√2  ⇒  B(4) = 4·8√2/12 = 8√2/3
        assert!((closed_form_chsh(4.0) - 8.0 * 2f64.sqrt() / 3.0).abs() < 1e-14);
        assert!(closed_form_chsh(200.0) >= 4.0 - 1e-12);
        assert!(closed_form_chsh(1e6).is_finite());
        assert!(closed_form_chsh(0.001) <= 0.01);
    }

    #[test]
    fn closed_form_matches_direct_formula() {
        // the printed form, fine for moderate m
        let sp = (2.0 + 2f64.sqrt()).sqrt();
        let sm = (2.0 - 2f64.sqrt()).sqrt();
        for m in [0.5, 1.0, 3.0, 7.5, 20.0] {
            let direct = 4.0 * (sp.powf(m) - sm.powf(m)) / (sp.powf(m) + sm.powf(m));
            assert!((closed_form_chsh(m) - direct).abs() < 1e-13, "m={m}");
        }
    }

    #[test]
    fn sweep_hits_two() {
        let rows = chsh_sweep(0.1, 20.0, 200).unwrap();
        assert_eq!(rows.len(), 200);
        let at2 = rows.iter().find(|r| (r.m - 2.0).abs() < 1e-9).expect("grid contains m=2");
        assert!((at2.chsh_engine - 2.0 * 2f64.sqrt()).abs() <= 1e-10);
        assert_eq!(rows.last().unwrap().m, 20.0);
        assert!(rows.last().unwrap().chsh_engine >= 3.9999);
    }

    #[test]
    fn sweep_rejects_bad_ranges() {
        assert!(chsh_sweep(0.1, 20.0, 1).is_err());
        assert!(chsh_sweep(0.0, 20.0, 10).is_err());
        assert!(chsh_sweep(3.0, 2.0, 10).is_err());
        assert!(chsh_sweep(1.0, f64::NAN, 10).is_err());
    }

    #[test]
    fn bob_first_agrees() {
        for m in [0.7, 2.0, 5.0, 13.0] {
            let bx = bell_chsh_box(ProbabilityRule::Power(m));
            let a = chsh_value(&bx, Order::AliceFirst);
            let b = chsh_value(&bx, Order::BobFirst);
            assert!((a - b).abs() <= 1e-12);
        }
    }
}
