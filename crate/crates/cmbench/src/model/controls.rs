//! Machine-side regulations: first-order static AVR and droop + governor +
//! reheat turbine frequency control.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AvrParams {
    /// Exciter gain (pu field voltage per pu voltage error).
    pub ke: f64,
    /// Transducer time constant (s).
    pub te_s: f64,
    /// Voltage setpoint (pu).
    pub vg_ref: f64,
}

impl AvrParams {
    pub fn validate(&self) -> Result<()> {
        if self.ke <= 0.0 || self.te_s <= 0.0 {
            return Err(Error::validation("avr: Ke and Te must be > 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GovTurbineParams {
    /// Droop (fraction, e.g. 0.02 for 2 %).
    pub rg: f64,
    /// Governor time constant (s).
    pub tg_s: f64,
    /// Reheat time constant (s).
    pub tr_s: f64,
    /// High-pressure power fraction.
    pub fh: f64,
}

impl GovTurbineParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.rg > 0.0 && self.rg < 1.0) {
            return Err(Error::validation("gov: droop Rg must be in (0, 1)"));
        }
        if self.tg_s <= 0.0 || self.tr_s <= 0.0 {
            return Err(Error::validation("gov: Tg and Tr must be > 0"));
        }
        if !(0.0..=1.0).contains(&self.fh) {
            return Err(Error::validation("gov: Fh must be in [0, 1]"));
        }
        Ok(())
    }
}

/// State slice layout for the regulation block.
pub const REG_STATE_LEN: usize = 3;
pub const REG_GAMMA_AVR: usize = 0;
pub const REG_X_GOV: usize = 1;
pub const REG_X_TURB: usize = 2;

#[derive(Debug, Clone, Copy)]
pub struct RegOutputs {
    pub d_state: [f64; REG_STATE_LEN],
    /// Field voltage (exciter pu) from the AVR.
    pub e_fd: f64,
    /// Mechanical power from the turbine.
    pub p_m: f64,
}

/// AVR + governor + turbine derivatives.
///
/// `v_meas` is the terminal voltage magnitude; `delta_omega` the machine
/// speed deviation from nominal (the governor's droop input); `p_ref` the
/// power setpoint. The turbine (1 + s Fh Tr)/(1 + s Tr) is realized as one
/// state plus feedthrough: Pm = x_turb + Fh * x_gov,
/// dx_turb/dt = ((1 - Fh) x_gov - x_turb)/Tr.
pub fn avr_governor_derivatives(
    state: &[f64],
    v_meas: f64,
    delta_omega: f64,
    p_ref: f64,
    avr: &AvrParams,
    gov: &GovTurbineParams,
) -> Result<RegOutputs> {
    if state.len() != REG_STATE_LEN {
        return Err(Error::validation(format!(
            "regulations: state slice must have length {REG_STATE_LEN}, got {}",
            state.len()
        )));
    }
    if !(state.iter().all(|v| v.is_finite())
        && v_meas.is_finite()
        && delta_omega.is_finite()
        && p_ref.is_finite())
    {
        return Err(Error::NonFinite {
            context: "avr_governor_derivatives".into(),
            label: "state/measurements".into(),
        });
    }
    if v_meas < 0.0 {
        return Err(Error::validation(
            "regulations: voltage magnitude must be >= 0",
        ));
    }

    let gamma_avr = state[REG_GAMMA_AVR];
    let x_gov = state[REG_X_GOV];
    let x_turb = state[REG_X_TURB];

    let d_gamma = (v_meas - gamma_avr) / avr.te_s;
    let e_fd = avr.ke * (avr.vg_ref - gamma_avr);

    let u_gov = p_ref - delta_omega / gov.rg;
    let d_gov = (u_gov - x_gov) / gov.tg_s;
    let d_turb = ((1.0 - gov.fh) * x_gov - x_turb) / gov.tr_s;
    let p_m = x_turb + gov.fh * x_gov;

    Ok(RegOutputs {
        d_state: [d_gamma, d_gov, d_turb],
        e_fd,
        p_m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn avr() -> AvrParams {
        AvrParams {
            ke: 500.0,
            te_s: 0.05,
            vg_ref: 1.0,
        }
    }

    fn gov() -> GovTurbineParams {
        GovTurbineParams {
            rg: 0.02,
            tg_s: 0.5,
            tr_s: 10.0,
            fh: 0.1,
        }
    }

    #[test]
    fn steady_state_has_zero_derivatives() {
        // measured voltage equals the filtered value, speed at nominal,
        // turbine loaded consistently.
        let p_ref = 0.2;
        let state = [0.997, p_ref, (1.0 - 0.1) * p_ref];
        let out = avr_governor_derivatives(&state, 0.997, 0.0, p_ref, &avr(), &gov()).unwrap();
        for d in out.d_state {
            assert_relative_eq!(d, 0.0, epsilon = 1e-14);
        }
        assert_relative_eq!(out.p_m, p_ref, epsilon = 1e-14);
        assert_relative_eq!(out.e_fd, 500.0 * (1.0 - 0.997), epsilon = 1e-9);
    }

    #[test]
    fn droop_arithmetic() {
        // delta_omega = 0.01 at Rg = 0.02 pushes the governor input down by 0.5 pu.
        let state = [1.0, 0.0, 0.0];
        let out = avr_governor_derivatives(&state, 1.0, 0.01, 0.0, &avr(), &gov()).unwrap();
        // d_gov = (u_gov - x_gov)/Tg with x_gov = 0 -> u_gov = d_gov * Tg
        assert_relative_eq!(out.d_state[REG_X_GOV] * 0.5, -0.5, epsilon = 1e-12);
    }

    #[test]
    fn transducer_step_response_63_percent() {
        // Integrate the isolated transducer through one time constant and
        // compare with the analytic first-order response.
        let a = avr();
        let g = gov();
        let mut gamma: f64 = 0.0;
        let h = 1e-5;
        let steps = (a.te_s / h).round() as usize;
        for _ in 0..steps {
            // trapezoidal step of d(gamma)/dt = (1 - gamma)/Te
            let k1 = (1.0 - gamma) / a.te_s;
            let pred = gamma + h * k1;
            let k2 = (1.0 - pred) / a.te_s;
            gamma += 0.5 * h * (k1 + k2);
        }
        let expected = 1.0 - (-1.0f64).exp();
        assert_relative_eq!(gamma, expected, epsilon = 1e-6);
        // and the module reports the same slope at the start
        let out = avr_governor_derivatives(&[0.0, 0.0, 0.0], 1.0, 0.0, 0.0, &a, &g).unwrap();
        assert_relative_eq!(out.d_state[REG_GAMMA_AVR], 1.0 / a.te_s, epsilon = 1e-12);
    }

    #[test]
    fn turbine_realization_matches_transfer_function_dc_gain() {
        // At DC the reheat turbine transfer (1 + s Fh Tr)/(1 + s Tr) is 1.
        let g = gov();
        let x_gov = 0.3;
        let x_turb = (1.0 - g.fh) * x_gov;
        let out =
            avr_governor_derivatives(&[1.0, x_gov, x_turb], 1.0, 0.0, x_gov, &avr(), &g).unwrap();
        assert_relative_eq!(out.p_m, x_gov, epsilon = 1e-14);
        assert_relative_eq!(out.d_state[REG_X_TURB], 0.0, epsilon = 1e-14);
    }

    #[test]
    fn rejects_negative_voltage() {
        assert!(
            avr_governor_derivatives(&[0.0; 3], -0.1, 0.0, 0.0, &avr(), &gov()).is_err()
        );
    }
}
