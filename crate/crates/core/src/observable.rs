//! Binary projective qubit measurements parametrized by Bloch direction.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Spin measurement along the Bloch direction `(θ, φ)`.
///
/// Outcome 0 is the eigenvector along `+n`, outcome 1 the one along `−n`:
///
/// ```text
/// e₀ = ( cos θ/2,  e^{iφ} sin θ/2 )
/// e₁ = ( sin θ/2, −e^{iφ} cos θ/2 )
/// ```
///
/// With this phase convention the antipodal direction `(π − θ, φ + π)` has
/// exactly the swapped eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitObservable {
    theta: f64,
    phi: f64,
}

/// Observables for inputs 0 and 1 of one party.
pub type ObservablePair = [QubitObservable; 2];

impl QubitObservable {
    /// `theta` must lie in `[0, π]`; `phi` is wrapped into `[0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidAngle {
                name: "theta",
                value: theta,
            });
        }
        if !phi.is_finite() {
            return Err(Error::InvalidAngle {
                name: "phi",
                value: phi,
            });
        }
        Ok(Self {
            theta,
            phi: wrap_phi(phi),
        })
    }

    /// Maps arbitrary finite angles onto the sphere, reflecting `theta`
    /// through the poles. Used by the search routines, which move angles
    /// freely.
    pub fn from_unbounded(theta: f64, phi: f64) -> Self {
        let mut t = theta.rem_euclid(TAU);
        let mut p = phi;
        if t > PI {
            t = TAU - t;
            p += PI;
        }
        Self {
            theta: t,
            phi: wrap_phi(p),
        }
    }

    /// Uniform direction on the sphere.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        Self {
            theta: (1.0 - 2.0 * u).clamp(-1.0, 1.0).acos(),
            phi: wrap_phi(TAU * v),
        }
    }

    pub fn sigma_z() -> Self {
        Self {
            theta: 0.0,
            phi: 0.0,
        }
    }

    pub fn sigma_x() -> Self {
        Self {
            theta: FRAC_PI_2,
            phi: 0.0,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Eigenvector for `outcome` (0 or 1).
    pub fn eigenvector(&self, outcome: usize) -> [Complex64; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        let ph = Complex64::from_polar(1.0, self.phi);
        match outcome {
            0 => [Complex64::new(c, 0.0), ph * s],
            1 => [Complex64::new(s, 0.0), -ph * c],
            _ => panic!("binary observable has no outcome {outcome}"),
        }
    }

    pub fn eigenbasis(&self) -> [[Complex64; 2]; 2] {
        [self.eigenvector(0), self.eigenvector(1)]
    }

    /// Unit Bloch vector `(x, y, z)`.
    pub fn direction(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// The observable along `−n`; its outcome labels are swapped.
    pub fn flipped(&self) -> Self {
        Self {
            theta: PI - self.theta,
            phi: wrap_phi(self.phi + PI),
        }
    }
}

impl fmt::Display for QubitObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.theta, self.phi)
    }
}

fn wrap_phi(phi: f64) -> f64 {
    let p = phi.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if p >= TAU {
        0.0
    } else {
        p
    }
}

/// `⟨u|v⟩`.
pub fn inner(u: &[Complex64; 2], v: &[Complex64; 2]) -> Complex64 {
    u[0].conj() * v[0] + u[1].conj() * v[1]
}

/// Standard CHSH settings.
///
/// Alice: `x=0 ↦ σ_z`, `x=1 ↦ σ_x`. Bob: `y=0 ↦ (σ_z+σ_x)/√2`,
/// `y=1 ↦ (σ_z−σ_x)/√2`. On `(|00⟩+|11⟩)/√2` the correlators are
/// `E(x,y) = ±1/√2` with the minus sign on `(1,1)`, so the
/// `E00 + E01 + E10 − E11` form reaches `2√2`.
pub fn chsh_observables() -> (ObservablePair, ObservablePair) {
    let alice = [QubitObservable::sigma_z(), QubitObservable::sigma_x()];
    let bob = [
        QubitObservable {
            theta: FRAC_PI_4,
            phi: 0.0,
        },
        QubitObservable {
            theta: FRAC_PI_4,
            phi: PI,
        },
    ];
    (alice, bob)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn overlap(u: &[Complex64; 2], v: &[Complex64; 2]) -> f64 {
        inner(u, v).norm_sqr()
    }

    #[test]
    fn eigenbases_are_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut obs: Vec<_> = (0..500).map(|_| QubitObservable::random(&mut rng)).collect();
        obs.push(QubitObservable::sigma_z());
        obs.push(QubitObservable::new(PI, 0.0).unwrap());
        for o in obs {
            let [e0, e1] = o.eigenbasis();
            assert!(inner(&e0, &e1).norm() <= 1e-14);
            assert!((overlap(&e0, &e0) - 1.0).abs() < 1e-14);
            assert!((overlap(&e1, &e1) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn sigma_z_eigenvector_is_ket_zero() {
        let (alice, _) = chsh_observables();
        let e0 = alice[0].eigenvector(0);
        assert_eq!(e0, [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
    }

    #[test]
    fn chsh_overlaps() {
        // cos²(π/8) = (2+√2)/4, computed independently of the eigenvector code
        let cos2 = (2.0 + 2f64.sqrt()) / 4.0;
        let (alice, bob) = chsh_observables();
        let z0 = alice[0].eigenvector(0);
        let x0 = alice[1].eigenvector(0);
        assert!((overlap(&z0, &bob[0].eigenvector(0)) - cos2).abs() < 1e-15);
        assert!((overlap(&z0, &bob[1].eigenvector(0)) - cos2).abs() < 1e-15);
        assert!((overlap(&x0, &bob[0].eigenvector(0)) - cos2).abs() < 1e-15);
        assert!((overlap(&x0, &bob[1].eigenvector(0)) - (1.0 - cos2)).abs() < 1e-15);
        assert!((overlap(&z0, &bob[0].eigenvector(1)) - (2.0 - 2f64.sqrt()) / 4.0).abs() < 1e-15);
    }

    #[test]
    fn chsh_directions() {
        let (alice, bob) = chsh_observables();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let close = |a: [f64; 3], b: [f64; 3]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-15);
        assert!(close(alice[0].direction(), [0.0, 0.0, 1.0]));
        assert!(close(alice[1].direction(), [1.0, 0.0, 0.0]));
        assert!(close(bob[0].direction(), [r, 0.0, r]));
        assert!(close(bob[1].direction(), [-r, 0.0, r]));
    }

    #[test]
    fn flipped_swaps_eigenvectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let o = QubitObservable::random(&mut rng);
            let f = o.flipped();
            for (a, b) in [(0, 1), (1, 0)] {
                let u = o.eigenvector(a);
                let v = f.eigenvector(b);
                assert!((u[0] - v[0]).norm() < 1e-14 && (u[1] - v[1]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn angle_validation() {
        assert!(QubitObservable::new(-0.1, 0.0).is_err());
        assert!(QubitObservable::new(3.5, 0.0).is_err());
        assert!(QubitObservable::new(0.5, f64::NAN).is_err());
        let o = QubitObservable::new(0.5, -FRAC_PI_2).unwrap();
        assert!((o.phi() - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn unbounded_angles_land_on_the_sphere() {
        let o = QubitObservable::from_unbounded(4.0, 0.3);
        assert!((0.0..=PI).contains(&o.theta()) && (0.0..TAU).contains(&o.phi()));
        let d = o.direction();
        let expect = [4f64.sin() * 0.3f64.cos(), 4f64.sin() * 0.3f64.sin(), 4f64.cos()];
        for i in 0..3 {
            assert!((d[i] - expect[i]).abs() < 1e-14);
        }
    }
}
