use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{check_no_causal_order, chsh_value};
use crate::boxes::Order;
use crate::engine::assemble_box;
use crate::error::{Error, Result};
use crate::observable::{chsh_observables, ObservablePair, QubitObservable};
use crate::optimize::{compass_minimize, CompassOptions};
use crate::rule::ProbabilityRule;
use crate::state::TwoQubitState;
use crate::uniqueness::restart_rng;

/// Residual at or below which a box counts as order-independent.
pub const FEASIBLE_RESIDUAL: f64 = 1e-10;

/// Weights of the disagreement in the successive CHSH climbs.
const PENALTIES: &[f64] = &[0.5, 2.0, 10.0, 100.0];

/// Minimum Schmidt weight for a state to count as entangled.
const ENTANGLEMENT_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservableSearch {
    /// `[[θ, φ]; 2]` for Alice's inputs 0 and 1.
    pub alice: [[f64; 2]; 2],
    pub bob: [[f64; 2]; 2],
    pub residual: f64,
    /// Alice-first CHSH value at the reported observables.
    pub chsh: f64,
    pub restarts: usize,
    pub seed: u64,
    /// Restart that produced the reported point.
    pub best_restart: usize,
}

impl ObservableSearch {
    pub fn observables(&self) -> (ObservablePair, ObservablePair) {
        let pair = |a: [[f64; 2]; 2]| a.map(|[t, p]| QubitObservable::from_unbounded(t, p));
        (pair(self.alice), pair(self.bob))
    }
}

fn decode(p: &[f64]) -> (ObservablePair, ObservablePair) {
    let o = |k: usize| QubitObservable::from_unbounded(p[2 * k], p[2 * k + 1]);
    ([o(0), o(1)], [o(2), o(3)])
}

fn encode(xs: &ObservablePair, ys: &ObservablePair) -> Vec<f64> {
    xs.iter().chain(ys).flat_map(|o| [o.theta(), o.phi()]).collect()
}

struct Candidate {
    params: Vec<f64>,
    residual: f64,
    chsh: f64,
    restart: usize,
}

impl Candidate {
    fn feasible(&self) -> bool {
        self.residual <= FEASIBLE_RESIDUAL
    }

    /// Feasible beats infeasible; among feasible the larger CHSH wins,
    /// otherwise the smaller residual. Ties keep `self`.
    fn better_than(&self, other: &Candidate) -> bool {
        match (self.feasible(), other.feasible()) {
            (true, false) => true,
            (false, true) => false,
            (true, true) => self.chsh > other.chsh,
            (false, false) => self.residual < other.residual,
        }
    }
}

/// Searches the eight Bloch angles for observables that make both
/// measurement orders agree on `state` under `rule`, and among those
/// prefers the largest CHSH value.
///
/// Each restart first minimizes the order disagreement by compass search.
/// If that reaches [`FEASIBLE_RESIDUAL`], it climbs `CHSH − μ·residual` for
/// a growing sequence of μ, minimizing the disagreement again after each
/// climb and keeping a climbed point only if it is still feasible and has
/// the larger CHSH value. Restart 0 starts from the standard CHSH settings,
/// the rest from random directions. No global optimality is
/// claimed; the best point found is reported as is.
pub fn nco_observable_search(
    state: &TwoQubitState,
    rule: ProbabilityRule,
    restarts: usize,
    seed: u64,
) -> Result<ObservableSearch> {
    let (_, lo) = state.schmidt_weights();
    if lo <= ENTANGLEMENT_FLOOR {
        return Err(Error::NotEntangled(lo));
    }
    let restarts = restarts.max(1);

    let evaluate = |p: &[f64]| {
        let (xs, ys) = decode(p);
        let bx = assemble_box(state, &xs, &ys, rule);
        (check_no_causal_order(&bx, 0.0).max_residual, chsh_value(&bx, Order::AliceFirst))
    };
    let residual_opts = CompassOptions {
        initial_step: 0.3,
        min_step: 1e-10,
        max_evals: 8_000,
    };
    let chsh_opts = CompassOptions {
        initial_step: 0.1,
        min_step: 1e-10,
        max_evals: 8_000,
    };
    let polish_opts = CompassOptions {
        initial_step: 1e-3,
        min_step: 1e-12,
        max_evals: 4_000,
    };

    let candidates: Vec<Candidate> = (0..restarts)
        .into_par_iter()
        .map(|k| {
            let start = if k == 0 {
                let (xs, ys) = chsh_observables();
                encode(&xs, &ys)
            } else {
                let mut rng = restart_rng(seed, k);
                let xs = [QubitObservable::random(&mut rng), QubitObservable::random(&mut rng)];
                let ys = [QubitObservable::random(&mut rng), QubitObservable::random(&mut rng)];
                encode(&xs, &ys)
            };
            let (params, residual) = compass_minimize(start, residual_opts, |p| evaluate(p).0);
            let mut best = (params.clone(), residual, evaluate(&params).1);
            if residual <= FEASIBLE_RESIDUAL {
                // climb CHSH under a growing penalty on the disagreement,
                // pulling each climbed point back onto the agreement set
                let mut point = params;
                for &mu in PENALTIES {
                    let (p, _) = compass_minimize(point.clone(), chsh_opts, |p| {
                        let (r, c) = evaluate(p);
                        mu * r - c
                    });
                    let (p, r) = compass_minimize(p, polish_opts, |p| evaluate(p).0);
                    let c = evaluate(&p).1;
                    if r <= FEASIBLE_RESIDUAL && c > best.2 {
                        best = (p.clone(), r, c);
                        point = p;
                    }
                }
            }
            let (params, residual, chsh) = best;
            Candidate {
                params,
                residual,
                chsh,
                restart: k,
            }
        })
        .collect();

    let best = candidates
        .into_iter()
        .reduce(|best, c| if c.better_than(&best) { c } else { best })
        .expect("at least one restart");
    let (xs, ys) = decode(&best.params);
    let angles = |pair: ObservablePair| pair.map(|o| [o.theta(), o.phi()]);
    Ok(ObservableSearch {
        alice: angles(xs),
        bob: angles(ys),
        residual: best.residual,
        chsh: best.chsh,
        restarts,
        seed,
        best_restart: best.restart,
    })
}
