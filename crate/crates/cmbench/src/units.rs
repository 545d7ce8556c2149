//! Per-unit base quantities.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Per-unit base for the whole benchmark. One common power base is used for
/// every device; line data in ohms is normalized through `z_base()`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PerUnitBase {
    /// Apparent power base (VA).
    pub s_base_va: f64,
    /// Line-line voltage base (V).
    pub v_base_v: f64,
    /// Rated frequency (Hz).
    pub f_base_hz: f64,
}

impl PerUnitBase {
    pub fn new(s_base_va: f64, v_base_v: f64, f_base_hz: f64) -> Result<Self> {
        let base = PerUnitBase {
            s_base_va,
            v_base_v,
            f_base_hz,
        };
        base.validate()?;
        Ok(base)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s_base_va > 0.0 && self.v_base_v > 0.0 && self.f_base_hz > 0.0) {
            return Err(Error::validation(
                "per-unit base: s_base, v_base and f_base must all be strictly positive",
            ));
        }
        Ok(())
    }

    /// Angular frequency base, rad/s.
    pub fn omega_b(&self) -> f64 {
        TAU * self.f_base_hz
    }

    /// Impedance base, ohm.
    pub fn z_base_ohm(&self) -> f64 {
        self.v_base_v * self.v_base_v / self.s_base_va
    }

    /// Current base (line current, A).
    pub fn i_base_a(&self) -> f64 {
        self.s_base_va / (3f64.sqrt() * self.v_base_v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn omega_b_is_two_pi_f() {
        let b = PerUnitBase::new(1e9, 5e5, 50.0).unwrap();
        assert_relative_eq!(b.omega_b(), 100.0 * std::f64::consts::PI, epsilon = 1e-12);
    }

    #[test]
    fn z_base() {
        let b = PerUnitBase::new(1e9, 5e5, 50.0).unwrap();
        assert_relative_eq!(b.z_base_ohm(), 250.0);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(PerUnitBase::new(0.0, 5e5, 50.0).is_err());
        assert!(PerUnitBase::new(1e9, -1.0, 50.0).is_err());
        assert!(PerUnitBase::new(1e9, 5e5, 0.0).is_err());
    }
}
