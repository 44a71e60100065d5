//! Pure two-qubit states in the computational product basis.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Complex coefficient of a basis vector.
pub type Amplitude = Complex64;

/// Squared norms below this are treated as the zero vector.
pub const ZERO_NORM: f64 = 1e-14;

/// A normalized pure state `α₁|00⟩ + α₂|01⟩ + α₃|10⟩ + α₄|11⟩`.
///
/// The first label is Alice's qubit, the second is Bob's. Amplitudes are
/// stored in that order and are normalized on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    amps: [Amplitude; 4],
}

impl TwoQubitState {
    /// Normalizes the four amplitudes into a state, keeping relative phases.
    pub fn new(amps: [Amplitude; 4]) -> Result<Self> {
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite { what: "amplitude" });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < ZERO_NORM {
            return Err(Error::AllZero { norm });
        }
        Ok(Self {
            amps: amps.map(|a| a / norm),
        })
    }

    /// Real-amplitude convenience constructor.
    pub fn from_real(a: [f64; 4]) -> Result<Self> {
        Self::new(a.map(|x| Amplitude::new(x, 0.0)))
    }

    /// `(|00⟩ + |11⟩)/√2`.
    pub fn bell() -> Self {
        let h = Amplitude::new(FRAC_1_SQRT_2, 0.0);
        let z = Amplitude::new(0.0, 0.0);
        Self { amps: [h, z, z, h] }
    }

    /// Product state `|a⟩ ⊗ |b⟩` from two single-qubit vectors.
    pub fn product(alice: [Amplitude; 2], bob: [Amplitude; 2]) -> Result<Self> {
        Self::new([
            alice[0] * bob[0],
            alice[0] * bob[1],
            alice[1] * bob[0],
            alice[1] * bob[1],
        ])
    }

    /// Uniformly distributed state on the unit sphere of C⁴ (normalized
    /// complex Gaussian draw).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let amps = std::array::from_fn(|_| {
                Amplitude::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            });
            if let Ok(s) = Self::new(amps) {
                return s;
            }
        }
    }

    pub fn amplitudes(&self) -> &[Amplitude; 4] {
        &self.amps
    }

    /// Amplitude of `|a b⟩`.
    pub fn amp(&self, a: usize, b: usize) -> Amplitude {
        self.amps[2 * a + b]
    }

    /// Squared magnitudes `|αᵢ|²`.
    pub fn weights(&self) -> [f64; 4] {
        self.amps.map(|a| a.norm_sqr())
    }

    /// The same state with the parties swapped (`|ab⟩ → |ba⟩`).
    pub fn swapped(&self) -> Self {
        let [a1, a2, a3, a4] = self.amps;
        Self {
            amps: [a1, a3, a2, a4],
        }
    }

    /// Multiplies every amplitude by `e^{iθ}`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let ph = Amplitude::from_polar(1.0, theta);
        Self {
            amps: self.amps.map(|a| a * ph),
        }
    }

    /// Schmidt weights `(λ_max, λ_min)`, the eigenvalues of either reduced
    /// density matrix.
    pub fn schmidt_weights(&self) -> (f64, f64) {
        let [a1, a2, a3, a4] = self.amps;
        let det = (a1 * a4 - a2 * a3).norm_sqr();
        let disc = (1.0 - 4.0 * det).max(0.0).sqrt();
        let hi = 0.5 * (1.0 + disc);
        // 1 - hi loses precision for small det; use the product instead.
        (hi, det / hi)
    }

    pub fn is_entangled(&self, tol: f64) -> bool {
        self.schmidt_weights().1 > tol
    }
}

impl fmt::Display for TwoQubitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .amps
            .iter()
            .map(|a| format!("{}:{}", a.re, a.im))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Normalizes four amplitudes into a [`TwoQubitState`].
pub fn make_state(a1: Amplitude, a2: Amplitude, a3: Amplitude, a4: Amplitude) -> Result<TwoQubitState> {
    TwoQubitState::new([a1, a2, a3, a4])
}

pub fn bell_state() -> TwoQubitState {
    TwoQubitState::bell()
}
