//! Derivative-free compass search used by the multi-start routines.

/// Step-size schedule and evaluation budget for [`compass_minimize`].
#[derive(Debug, Clone, Copy)]
pub struct CompassOptions {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_evals: usize,
}

impl Default for CompassOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.25,
            min_step: 1e-9,
            max_evals: 20_000,
        }
    }
}

/// Minimizes `f` by coordinate-wise `±step` perturbations, accepting any
/// strict improvement and halving the step after a sweep with none.
/// Returns the best point and its value.
pub fn compass_minimize(
    mut x: Vec<f64>,
    opts: CompassOptions,
    mut f: impl FnMut(&[f64]) -> f64,
) -> (Vec<f64>, f64) {
    let mut fx = f(&x);
    let mut evals = 1;
    let mut step = opts.initial_step;
    while step >= opts.min_step && evals < opts.max_evals {
        let mut improved = false;
        for i in 0..x.len() {
            for dir in [1.0, -1.0] {
                let old = x[i];
                x[i] = old + dir * step;
                let fy = f(&x);
                evals += 1;
                if fy < fx {
                    fx = fy;
                    improved = true;
                    break;
                }
                x[i] = old;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, fx)
}
