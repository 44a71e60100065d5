use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::check_no_causal_order;
use crate::engine::assemble_box;
use crate::observable::ObservablePair;
use crate::optimize::{compass_minimize, CompassOptions};
use crate::rule::ProbabilityRule;
use crate::state::{Amplitude, TwoQubitState};

/// Largest entry-wise `|P_A − P_B|` of the assembled box.
pub fn box_nco_residual(state: &TwoQubitState, x_obs: &ObservablePair, y_obs: &ObservablePair, rule: ProbabilityRule) -> f64 {
    check_no_causal_order(&assemble_box(state, x_obs, y_obs, rule), 0.0).max_residual
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViolationSearch {
    pub state: TwoQubitState,
    pub residual: f64,
    /// Restart that produced the best state.
    pub restart: usize,
}

fn to_params(s: &TwoQubitState) -> Vec<f64> {
    s.amplitudes().iter().flat_map(|a| [a.re, a.im]).collect()
}

fn from_params(p: &[f64]) -> Option<TwoQubitState> {
    TwoQubitState::new(std::array::from_fn(|k| Amplitude::new(p[2 * k], p[2 * k + 1]))).ok()
}

/// Per-restart generator: stream `restart` of the ChaCha generator seeded
/// with `seed`.
pub(crate) fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Multi-start search for the state that maximizes the order disagreement
/// of the box built from `rule` and the given observables.
///
/// Each restart draws a random state and improves it by coordinate-wise
/// perturbation of the real and imaginary amplitude parts, renormalizing at
/// every evaluation. Restarts run in parallel; the best result (earliest
/// restart on ties) is returned.
pub fn max_nco_violation(
    rule: ProbabilityRule,
    x_obs: &ObservablePair,
    y_obs: &ObservablePair,
    restarts: usize,
    seed: u64,
) -> ViolationSearch {
    let objective = |p: &[f64]| match from_params(p) {
        Some(s) => -box_nco_residual(&s, x_obs, y_obs, rule),
        None => f64::INFINITY,
    };
    let opts = CompassOptions {
        initial_step: 0.2,
        min_step: 1e-8,
        max_evals: 6_000,
    };
    let results: Vec<ViolationSearch> = (0..restarts.max(1))
        .into_par_iter()
        .map(|k| {
            let mut rng = restart_rng(seed, k);
            let start = TwoQubitState::random(&mut rng);
            let (p, _) = compass_minimize(to_params(&start), opts, objective);
            let state = from_params(&p).unwrap_or(start);
            ViolationSearch {
                residual: box_nco_residual(&state, x_obs, y_obs, rule),
                state,
                restart: k,
            }
        })
        .collect();
    results
        .into_iter()
        .reduce(|best, r| if r.residual > best.residual { r } else { best })
        .expect("at least one restart")
}
