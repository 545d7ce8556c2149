//! Synchronous machine: per-unit flux-linkage model with stator transients,
//! one field winding and one damper per axis (7 states total).
//!
//! Conventions:
//! - generator sign: stator currents flow out of the machine;
//! - machine rotor frame leads the network frame by `theta_sm`, so
//!   `x_net = x_mach.rotate(theta_sm)`;
//! - field voltage input `e_fd` is in exciter per-unit (1 pu field voltage
//!   gives 1 pu open-circuit terminal voltage on the air-gap line).
//!
//! Stator equations (machine frame, currents out):
//!   dpsi_d/dt = wb (e_d + Ra i_d + w psi_q)
//!   dpsi_q/dt = wb (e_q + Ra i_q - w psi_d)
//! Rotor:
//!   dpsi_fd/dt = wb (e_fd Rfd/Lad - Rfd i_fd)
//!   dpsi_1d/dt = -wb R1d i_1d,  dpsi_1q/dt = -wb R1q i_1q
//! Mechanics:
//!   dw/dt = (Pm - Pe - Kd (w - w_frame)) / (2H),  Pe = w (psi_d i_q - psi_q i_d)
//!   dtheta/dt = wb (w - w_frame)

use crate::dq::DqPair;
use crate::error::{Error, Result};
use crate::units::PerUnitBase;
use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use serde::{Deserialize, Serialize};

/// Standard-parameter set of the machine (reactances in pu, time constants in
/// seconds). Converted to fundamental winding quantities by [`SmDerived`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SmParams {
    /// Inertia constant (s).
    pub h_s: f64,
    /// Damping coefficient (pu torque per pu speed deviation vs the grid).
    pub kd: f64,
    /// Stator resistance (pu).
    pub ra: f64,
    pub xd: f64,
    pub xq: f64,
    pub xd_p: f64,
    pub xd_pp: f64,
    pub xq_pp: f64,
    pub td0_p_s: f64,
    pub td0_pp_s: f64,
    pub tq0_pp_s: f64,
    /// Stator leakage reactance (pu).
    pub xl: f64,
}

impl SmParams {
    /// Typical round-rotor values; the electrical set is a documented
    /// placeholder, not a published benchmark quantity.
    pub fn typical_round_rotor(h_s: f64, kd: f64) -> Self {
        SmParams {
            h_s,
            kd,
            ra: 0.0025,
            xd: 1.8,
            xq: 1.7,
            xd_p: 0.3,
            xd_pp: 0.25,
            xq_pp: 0.25,
            td0_p_s: 8.0,
            td0_pp_s: 0.03,
            tq0_pp_s: 0.05,
            xl: 0.2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ck = |cond: bool, msg: &str| {
            if cond {
                Ok(())
            } else {
                Err(Error::validation(format!("sm: {msg}")))
            }
        };
        ck(self.h_s > 0.0, "H must be > 0")?;
        ck(self.kd >= 0.0, "Kd must be >= 0")?;
        ck(self.ra >= 0.0, "Ra must be >= 0")?;
        ck(self.xl >= 0.0, "Xl must be >= 0")?;
        ck(
            self.xd > self.xd_p && self.xd_p > self.xd_pp && self.xd_pp > self.xl,
            "need Xd > Xd' > Xd'' > Xl",
        )?;
        ck(
            self.xq > self.xq_pp && self.xq_pp > self.xl,
            "need Xq > Xq'' > Xl",
        )?;
        ck(
            self.td0_p_s > 0.0 && self.td0_pp_s > 0.0 && self.tq0_pp_s > 0.0,
            "time constants must be > 0",
        )?;
        Ok(())
    }
}

/// Fundamental winding parameters derived from the standard set, plus the
/// precomputed flux-to-current inverses.
#[derive(Debug, Clone)]
pub struct SmDerived {
    pub params: SmParams,
    pub l_ad: f64,
    pub l_aq: f64,
    pub l_fd: f64,
    pub r_fd: f64,
    pub l_1d: f64,
    pub r_1d: f64,
    pub l_1q: f64,
    pub r_1q: f64,
    /// psi = md * (-i_d, i_fd, i_1d)
    md: Matrix3<f64>,
    md_inv: Matrix3<f64>,
    /// psi = mq * (-i_q, i_1q)
    mq: Matrix2<f64>,
    mq_inv: Matrix2<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct SmCurrents {
    pub i_d: f64,
    pub i_q: f64,
    pub i_fd: f64,
    pub i_1d: f64,
    pub i_1q: f64,
}

/// Inputs to the machine derivative evaluation.
#[derive(Debug, Clone, Copy)]
pub struct SmInputs {
    /// Terminal voltage in the common network frame.
    pub v_term: DqPair,
    /// Field voltage, exciter pu.
    pub e_fd: f64,
    /// Mechanical power, pu.
    pub p_m: f64,
    /// Rotation speed of the network frame, pu.
    pub omega_frame: f64,
}

/// Machine state slice layout.
pub const SM_STATE_LEN: usize = 7;
pub const SM_THETA: usize = 0;
pub const SM_OMEGA: usize = 1;
pub const SM_PSI_D: usize = 2;
pub const SM_PSI_Q: usize = 3;
pub const SM_PSI_FD: usize = 4;
pub const SM_PSI_1D: usize = 5;
pub const SM_PSI_1Q: usize = 6;

impl SmDerived {
    pub fn new(params: SmParams, base: &PerUnitBase) -> Result<Self> {
        params.validate()?;
        let wb = base.omega_b();
        let l_ad = params.xd - params.xl;
        let l_aq = params.xq - params.xl;

        let ldp = params.xd_p - params.xl;
        let l_fd = l_ad * ldp / (l_ad - ldp);
        let r_fd = (l_ad + l_fd) / (wb * params.td0_p_s);

        let a = l_ad * l_fd / (l_ad + l_fd);
        let ldpp = params.xd_pp - params.xl;
        if a <= ldpp {
            return Err(Error::validation(
                "sm: Xd'' too close to Xd' for a physical damper inductance",
            ));
        }
        let l_1d = a * ldpp / (a - ldpp);
        let r_1d = (l_1d + a) / (wb * params.td0_pp_s);

        let lqpp = params.xq_pp - params.xl;
        let l_1q = l_aq * lqpp / (l_aq - lqpp);
        let r_1q = (l_1q + l_aq) / (wb * params.tq0_pp_s);

        let md = Matrix3::new(
            l_ad + params.xl,
            l_ad,
            l_ad,
            l_ad,
            l_ad + l_fd,
            l_ad,
            l_ad,
            l_ad,
            l_ad + l_1d,
        );
        let md_inv = md
            .try_inverse()
            .ok_or_else(|| Error::numerical("sm: singular d-axis inductance matrix"))?;
        let mq = Matrix2::new(l_aq + params.xl, l_aq, l_aq, l_aq + l_1q);
        let mq_inv = mq
            .try_inverse()
            .ok_or_else(|| Error::numerical("sm: singular q-axis inductance matrix"))?;

        Ok(SmDerived {
            params,
            l_ad,
            l_aq,
            l_fd,
            r_fd,
            l_1d,
            r_1d,
            l_1q,
            r_1q,
            md,
            md_inv,
            mq,
            mq_inv,
        })
    }

    /// Winding currents from the five flux states (generator sign for the
    /// stator pair).
    pub fn currents(&self, psi_d: f64, psi_q: f64, psi_fd: f64, psi_1d: f64, psi_1q: f64) -> SmCurrents {
        let cd = self.md_inv * Vector3::new(psi_d, psi_fd, psi_1d);
        let cq = self.mq_inv * Vector2::new(psi_q, psi_1q);
        SmCurrents {
            i_d: -cd[0],
            i_q: -cq[0],
            i_fd: cd[1],
            i_1d: cd[2],
            i_1q: cq[1],
        }
    }

    /// Fluxes from winding currents (forward relation, used by tests and by
    /// steady-state construction).
    pub fn fluxes(&self, c: &SmCurrents) -> [f64; 5] {
        let d = self.md * Vector3::new(-c.i_d, c.i_fd, c.i_1d);
        let q = self.mq * Vector2::new(-c.i_q, c.i_1q);
        [d[0], q[0], d[1], d[2], q[1]]
    }

    /// Subtransient saliency coefficients: d(i_d)/d(psi_d) and
    /// d(i_q)/d(psi_q) at fixed rotor fluxes.
    fn stator_current_gain(&self) -> (f64, f64) {
        (-self.md_inv[(0, 0)], -self.mq_inv[(0, 0)])
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SmDerivatives {
    pub d_state: [f64; SM_STATE_LEN],
    /// Electrical (air-gap) power, pu.
    pub p_e: f64,
    /// Stator current in the network frame (out of the machine).
    pub i_net: DqPair,
}

/// Full machine derivative evaluation.
pub fn sm_derivatives(
    state: &[f64],
    inputs: &SmInputs,
    sm: &SmDerived,
    base: &PerUnitBase,
) -> Result<SmDerivatives> {
    if state.len() != SM_STATE_LEN {
        return Err(Error::validation(format!(
            "sm: state slice must have length {SM_STATE_LEN}, got {}",
            state.len()
        )));
    }
    for (i, v) in state.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite {
                context: "sm_derivatives".into(),
                label: sm_state_name(i).into(),
            });
        }
    }
    if !(inputs.v_term.is_finite()
        && inputs.e_fd.is_finite()
        && inputs.p_m.is_finite()
        && inputs.omega_frame.is_finite())
    {
        return Err(Error::NonFinite {
            context: "sm_derivatives".into(),
            label: "inputs".into(),
        });
    }

    let wb = base.omega_b();
    let p = &sm.params;
    let theta = state[SM_THETA];
    let omega = state[SM_OMEGA];
    let (psi_d, psi_q) = (state[SM_PSI_D], state[SM_PSI_Q]);
    let (psi_fd, psi_1d, psi_1q) = (state[SM_PSI_FD], state[SM_PSI_1D], state[SM_PSI_1Q]);

    let c = sm.currents(psi_d, psi_q, psi_fd, psi_1d, psi_1q);
    let e = inputs.v_term.rotate(-theta);

    let dpsi_d = wb * (e.d + p.ra * c.i_d + omega * psi_q);
    let dpsi_q = wb * (e.q + p.ra * c.i_q - omega * psi_d);
    let e_fd_w = inputs.e_fd * sm.r_fd / sm.l_ad;
    let dpsi_fd = wb * (e_fd_w - sm.r_fd * c.i_fd);
    let dpsi_1d = -wb * sm.r_1d * c.i_1d;
    let dpsi_1q = -wb * sm.r_1q * c.i_1q;

    let p_e = omega * (psi_d * c.i_q - psi_q * c.i_d);
    let d_omega = (inputs.p_m - p_e - p.kd * (omega - inputs.omega_frame)) / (2.0 * p.h_s);
    let d_theta = wb * (omega - inputs.omega_frame);

    Ok(SmDerivatives {
        d_state: [d_theta, d_omega, dpsi_d, dpsi_q, dpsi_fd, dpsi_1d, dpsi_1q],
        p_e,
        i_net: DqPair::new(c.i_d, c.i_q).rotate(theta),
    })
}

/// Decomposition of the network-frame stator current derivative as an affine
/// function of the (unknown) terminal voltage:
///   d(i_net)/dt = g * v_term + h.
/// Used by the assembler to solve the node-voltage algebra of branches that
/// carry the machine current.
pub fn sm_terminal_coupling(
    state: &[f64],
    e_fd: f64,
    omega_frame: f64,
    sm: &SmDerived,
    base: &PerUnitBase,
) -> (DqPair, Matrix2<f64>, DqPair) {
    let wb = base.omega_b();
    let p = &sm.params;
    let theta = state[SM_THETA];
    let omega = state[SM_OMEGA];
    let (psi_d, psi_q) = (state[SM_PSI_D], state[SM_PSI_Q]);
    let (psi_fd, psi_1d, psi_1q) = (state[SM_PSI_FD], state[SM_PSI_1D], state[SM_PSI_1Q]);
    let c = sm.currents(psi_d, psi_q, psi_fd, psi_1d, psi_1q);

    let (kd0, kq0) = sm.stator_current_gain();
    // d(i_mach)/dt = s * e + r, with s diagonal in the machine frame.
    let kd_row = -sm.md_inv.row(0);
    let kq_row = -sm.mq_inv.row(0);

    let e_fd_w = e_fd * sm.r_fd / sm.l_ad;
    let dpsi_fd = wb * (e_fd_w - sm.r_fd * c.i_fd);
    let dpsi_1d = -wb * sm.r_1d * c.i_1d;
    let dpsi_1q = -wb * sm.r_1q * c.i_1q;

    let r_d = kd_row[0] * wb * (p.ra * c.i_d + omega * psi_q) + kd_row[1] * dpsi_fd + kd_row[2] * dpsi_1d;
    let r_q = kq_row[0] * wb * (p.ra * c.i_q - omega * psi_d) + kq_row[1] * dpsi_1q;

    let (sin_t, cos_t) = theta.sin_cos();
    let rot = Matrix2::new(cos_t, -sin_t, sin_t, cos_t);
    let s_mach = Matrix2::new(wb * kd0, 0.0, 0.0, wb * kq0);
    let g = rot * s_mach * rot.transpose();

    let i_net = DqPair::new(c.i_d, c.i_q).rotate(theta);
    let r_net = DqPair::new(r_d, r_q).rotate(theta);
    let dtheta = wb * (omega - omega_frame);
    let h = r_net + i_net.perp() * dtheta;

    (i_net, g, h)
}

fn sm_state_name(i: usize) -> &'static str {
    match i {
        SM_THETA => "theta_sm",
        SM_OMEGA => "omega_sm",
        SM_PSI_D => "psi_d",
        SM_PSI_Q => "psi_q",
        SM_PSI_FD => "psi_fd",
        SM_PSI_1D => "psi_1d",
        SM_PSI_1Q => "psi_1q",
        _ => "sm_state",
    }
}

/// Zero-current (open-circuit) machine state consistent with field voltage
/// `e_fd`, terminal aligned with the network d-axis.
pub fn no_load_state(e_fd: f64, sm: &SmDerived) -> [f64; SM_STATE_LEN] {
    let i_fd = e_fd / sm.l_ad;
    let c = SmCurrents {
        i_d: 0.0,
        i_q: 0.0,
        i_fd,
        i_1d: 0.0,
        i_1q: 0.0,
    };
    let f = sm.fluxes(&c);
    [
        -std::f64::consts::FRAC_PI_2,
        1.0,
        f[0],
        f[1],
        f[2],
        f[3],
        f[4],
    ]
}
