use serde::Serialize;

use crate::error::{Error, Result};
use crate::rule::ProbabilityRule;
use crate::state::TwoQubitState;

/// `|H(q₁+q₂)·H(q₁/(q₁+q₂)) − H(q₁)|`.
pub fn nco_residual(rule: ProbabilityRule, q1: f64, q2: f64) -> Result<f64> {
    let s = q1 + q2;
    if !(q1 >= 0.0 && q2 >= 0.0 && s > 0.0 && s <= 1.0 + crate::rule::DOMAIN_SLACK) {
        return Err(Error::Domain {
            what: "q1 + q2",
            value: s,
            lo: f64::MIN_POSITIVE,
            hi: 1.0,
        });
    }
    let h = |p: f64| rule.eval(p);
    Ok((h(s)? * h(q1 / s)? - h(q1)?).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualRecord {
    pub q1: f64,
    pub q2: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualGrid {
    pub n: usize,
    pub max_residual: f64,
    pub argmax: ResidualRecord,
    /// Row-major over `i` then `j`.
    pub records: Vec<ResidualRecord>,
}

fn check_grid(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::GridTooSmall { got: n, min })
    } else {
        Ok(())
    }
}

/// Grid points `(i/n, j/n)` with `1 ≤ i + j ≤ n`, `i` outer.
fn triangle(n: usize) -> impl Iterator<Item = (f64, f64)> {
    let nf = n as f64;
    (0..=n).flat_map(move |i| {
        (0..=n - i)
            .filter(move |j| i + j >= 1)
            .map(move |j| (i as f64 / nf, j as f64 / nf))
    })
}

/// Evaluates [`nco_residual`] over the triangular grid. Ties for the
/// maximum go to the first grid point in `(i, j)` order.
pub fn residual_grid(rule: ProbabilityRule, n: usize) -> Result<ResidualGrid> {
    check_grid(n, 2)?;
    let records = triangle(n)
        .map(|(q1, q2)| {
            Ok(ResidualRecord {
                q1,
                q2,
                residual: nco_residual(rule, q1, q2)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut argmax = records[0];
    for r in &records[1..] {
        if r.residual > argmax.residual {
            argmax = *r;
        }
    }
    Ok(ResidualGrid {
        n,
        max_residual: argmax.residual,
        argmax,
        records,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdditivityReport {
    /// `max |H(s)·[H(q₁/s) + H(q₂/s)] − H(q₁) − H(q₂)|`, the sum of the two
    /// order-agreement relations.
    pub summed_relation: f64,
    /// `max |H(q₁ + q₂) − H(q₁) − H(q₂)|`.
    pub cauchy: f64,
}

pub fn additivity_check(rule: ProbabilityRule, n: usize) -> Result<AdditivityReport> {
    check_grid(n, 2)?;
    let h = |p: f64| rule.eval(p);
    let mut out = AdditivityReport {
        summed_relation: 0.0,
        cauchy: 0.0,
    };
    for (q1, q2) in triangle(n) {
        let s = q1 + q2;
        let rhs = h(q1)? + h(q2)?;
        out.summed_relation = out.summed_relation.max((h(s)? * (h(q1 / s)? + h(q2 / s)?) - rhs).abs());
        out.cauchy = out.cauchy.max((h(s)? - rhs).abs());
    }
    Ok(out)
}

/// `√q₁|00⟩ + √q₂|01⟩ + √(1−q₁−q₂)|11⟩`, the `α₃ = 0` state whose
/// `σ_z ⊗ σ_z` order disagreement is [`nco_residual`]`(q₁, q₂)`.
pub fn pair_state(q1: f64, q2: f64) -> Result<TwoQubitState> {
    let rest = (1.0 - q1 - q2).max(0.0);
    TwoQubitState::from_real([q1.sqrt(), q2.sqrt(), 0.0, rest.sqrt()])
}
