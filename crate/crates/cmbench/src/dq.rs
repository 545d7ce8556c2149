//! dq-frame vector arithmetic.
//!
//! All rotating-frame quantities in the toolkit are `DqPair`s. Rotations use
//! the generator J = [[0, -1], [1, 0]], so `rotate(theta)` maps a vector from
//! a frame that leads by `theta` into the reference frame:
//! `x_ref = R(theta) * x_dev` with R(theta) = exp(J*theta).

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DqPair {
    pub d: f64,
    pub q: f64,
}

impl DqPair {
    pub const ZERO: DqPair = DqPair { d: 0.0, q: 0.0 };

    pub fn new(d: f64, q: f64) -> Self {
        DqPair { d, q }
    }

    pub fn magnitude(self) -> f64 {
        self.d.hypot(self.q)
    }

    /// Rotate by `theta` (counter-clockwise, R(theta) = exp(J*theta)).
    pub fn rotate(self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        DqPair {
            d: c * self.d - s * self.q,
            q: s * self.d + c * self.q,
        }
    }

    /// J * x = (-q, d); the 90-degree counter-clockwise rotation.
    pub fn perp(self) -> Self {
        DqPair {
            d: -self.q,
            q: self.d,
        }
    }

    /// Inner product d*d' + q*q'.
    pub fn dot(self, other: DqPair) -> f64 {
        self.d * other.d + self.q * other.q
    }

    pub fn is_finite(self) -> bool {
        self.d.is_finite() && self.q.is_finite()
    }
}

impl Add for DqPair {
    type Output = DqPair;
    fn add(self, rhs: DqPair) -> DqPair {
        DqPair::new(self.d + rhs.d, self.q + rhs.q)
    }
}

impl Sub for DqPair {
    type Output = DqPair;
    fn sub(self, rhs: DqPair) -> DqPair {
        DqPair::new(self.d - rhs.d, self.q - rhs.q)
    }
}

impl Mul<f64> for DqPair {
    type Output = DqPair;
    fn mul(self, k: f64) -> DqPair {
        DqPair::new(self.d * k, self.q * k)
    }
}

impl Neg for DqPair {
    type Output = DqPair;
    fn neg(self) -> DqPair {
        DqPair::new(-self.d, -self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn magnitude_pythagorean() {
        assert_relative_eq!(DqPair::new(3.0, 4.0).magnitude(), 5.0);
        assert_relative_eq!(DqPair::new(-1.0, 0.0).magnitude(), 1.0);
    }

    #[test]
    fn rotate_quarter_turn_matches_perp() {
        let x = DqPair::new(0.3, -1.2);
        let r = x.rotate(FRAC_PI_2);
        let p = x.perp();
        assert_relative_eq!(r.d, p.d, epsilon = 1e-15);
        assert_relative_eq!(r.q, p.q, epsilon = 1e-15);
    }

    #[test]
    fn rotate_round_trip() {
        let x = DqPair::new(0.7, 0.2);
        let y = x.rotate(1.234).rotate(-1.234);
        assert_relative_eq!(x.d, y.d, epsilon = 1e-15);
        assert_relative_eq!(x.q, y.q, epsilon = 1e-15);
    }
}
