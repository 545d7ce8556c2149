//! State labels and device grouping.
//!
//! Every state of an assembled system carries a `(device, name)` label so
//! that mode tables, participation exports and diagnostics stay readable and
//! comparable across runs.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Canonical state names. The inverter control names (`gamma_currd`,
/// `vsdfilt`, ...) are the ones used in participation-factor outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateName {
    ThetaSm,
    OmegaSm,
    PsiD,
    PsiQ,
    PsiFd,
    Psi1d,
    Psi1q,
    GammaAvr,
    XGov,
    XTurb,
    Isd,
    Isq,
    Vcd,
    Vcq,
    GammaCurrd,
    GammaCurrq,
    Vsdfilt,
    Vsqfilt,
    XPllInt,
    ThetaPll,
    XDroopW,
    XPmeas,
    ILineD,
    ILineQ,
    OmegaF,
    ThetaF,
}

impl StateName {
    pub fn as_str(&self) -> &'static str {
        match self {
            StateName::ThetaSm => "theta_sm",
            StateName::OmegaSm => "omega_sm",
            StateName::PsiD => "psi_d",
            StateName::PsiQ => "psi_q",
            StateName::PsiFd => "psi_fd",
            StateName::Psi1d => "psi_1d",
            StateName::Psi1q => "psi_1q",
            StateName::GammaAvr => "gamma_avr",
            StateName::XGov => "x_gov",
            StateName::XTurb => "x_turb",
            StateName::Isd => "isd",
            StateName::Isq => "isq",
            StateName::Vcd => "vcd",
            StateName::Vcq => "vcq",
            StateName::GammaCurrd => "gamma_currd",
            StateName::GammaCurrq => "gamma_currq",
            StateName::Vsdfilt => "vsdfilt",
            StateName::Vsqfilt => "vsqfilt",
            StateName::XPllInt => "x_pll_int",
            StateName::ThetaPll => "theta_pll",
            StateName::XDroopW => "x_droop_w",
            StateName::XPmeas => "x_pmeas",
            StateName::ILineD => "i_line_d",
            StateName::ILineQ => "i_line_q",
            StateName::OmegaF => "omega_f",
            StateName::ThetaF => "theta_f",
        }
    }
}

/// Coarse group a state belongs to, used for coupling classification.
/// Line currents count toward the grid group: they carry the network's
/// electrical-distance dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeviceGroup {
    Sm,
    Inverter,
    Grid,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StateLabel {
    /// Device identifier, e.g. "sm", "gfl", "line1", "grid".
    pub device: String,
    pub name: StateName,
}

impl StateLabel {
    pub fn new(device: impl Into<String>, name: StateName) -> Self {
        StateLabel {
            device: device.into(),
            name,
        }
    }

    pub fn group(&self) -> DeviceGroup {
        match self.name {
            StateName::ThetaSm
            | StateName::OmegaSm
            | StateName::PsiD
            | StateName::PsiQ
            | StateName::PsiFd
            | StateName::Psi1d
            | StateName::Psi1q
            | StateName::GammaAvr
            | StateName::XGov
            | StateName::XTurb => DeviceGroup::Sm,
            StateName::Isd
            | StateName::Isq
            | StateName::Vcd
            | StateName::Vcq
            | StateName::GammaCurrd
            | StateName::GammaCurrq
            | StateName::Vsdfilt
            | StateName::Vsqfilt
            | StateName::XPllInt
            | StateName::ThetaPll
            | StateName::XDroopW
            | StateName::XPmeas => DeviceGroup::Inverter,
            StateName::ILineD | StateName::ILineQ | StateName::OmegaF | StateName::ThetaF => {
                DeviceGroup::Grid
            }
        }
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.device, self.name.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_format() {
        let l = StateLabel::new("gfl", StateName::GammaCurrd);
        assert_eq!(l.to_string(), "gfl.gamma_currd");
    }

    #[test]
    fn grouping() {
        assert_eq!(
            StateLabel::new("sm", StateName::PsiD).group(),
            DeviceGroup::Sm
        );
        assert_eq!(
            StateLabel::new("gfl", StateName::Vsdfilt).group(),
            DeviceGroup::Inverter
        );
        assert_eq!(
            StateLabel::new("line1", StateName::ILineD).group(),
            DeviceGroup::Grid
        );
    }
}
