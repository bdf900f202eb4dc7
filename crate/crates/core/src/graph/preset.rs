//! Parameter presets for gate-graph construction. All energies in eV.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hückel-style parameter set for conjugated molecules: couplings by bond
/// type plus heteroatom site energies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HuckelParams {
    pub beta_cc_single: f64,
    pub beta_cc_double: f64,
    pub beta_cc_triple: f64,
    pub beta_cc_cross: f64,
    pub beta_nc: f64,
    pub beta_sc: f64,
    pub alpha_n: f64,
    pub alpha_s: f64,
    pub alpha_c: f64,
}

impl Default for HuckelParams {
    fn default() -> Self {
        HuckelParams {
            beta_cc_single: -2.4,
            beta_cc_double: -2.7,
            beta_cc_triple: -3.0,
            beta_cc_cross: -2.55,
            beta_nc: -1.08,
            beta_sc: -2.16,
            alpha_n: -2.7,
            alpha_s: -4.05,
            alpha_c: 0.0,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum PresetError {
    #[error("unknown preset {0:?} (expected \"uniform\" or \"huckel\")")]
    Unknown(String),
    #[error("coupling element {name} must be negative and finite, got {value}")]
    BadCoupling { name: &'static str, value: f64 },
    #[error("site energy {name} must be finite, got {value}")]
    BadEnergy { name: &'static str, value: f64 },
}

impl HuckelParams {
    /// Gate builders live in the negative-coupling regime; a sign flip in a
    /// preset file is a configuration mistake, not a new physics regime.
    pub fn validate(&self) -> Result<(), PresetError> {
        let couplings = [
            ("beta_cc_single", self.beta_cc_single),
            ("beta_cc_double", self.beta_cc_double),
            ("beta_cc_triple", self.beta_cc_triple),
            ("beta_cc_cross", self.beta_cc_cross),
            ("beta_nc", self.beta_nc),
            ("beta_sc", self.beta_sc),
        ];
        for (name, value) in couplings {
            if !(value.is_finite() && value < 0.0) {
                return Err(PresetError::BadCoupling { name, value });
            }
        }
        let energies = [
            ("alpha_n", self.alpha_n),
            ("alpha_s", self.alpha_s),
            ("alpha_c", self.alpha_c),
        ];
        for (name, value) in energies {
            if !value.is_finite() {
                return Err(PresetError::BadEnergy { name, value });
            }
        }
        Ok(())
    }
}

/// Named parameter set used by the builders.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Preset {
    /// All site energies 0 eV, all couplings -1 eV.
    Uniform,
    /// Bond-type-resolved couplings and heteroatom energies.
    Huckel(HuckelParams),
}

impl Preset {
    pub fn uniform() -> Self {
        Preset::Uniform
    }

    pub fn huckel() -> Self {
        Preset::Huckel(HuckelParams::default())
    }

    pub fn from_name(name: &str) -> Result<Self, PresetError> {
        match name {
            "uniform" => Ok(Preset::Uniform),
            "huckel" => Ok(Preset::Huckel(HuckelParams::default())),
            other => Err(PresetError::Unknown(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Uniform => "uniform",
            Preset::Huckel(_) => "huckel",
        }
    }

    pub fn validate(&self) -> Result<(), PresetError> {
        match self {
            Preset::Uniform => Ok(()),
            Preset::Huckel(p) => p.validate(),
        }
    }

    pub(crate) fn alpha_c(&self) -> f64 {
        match self {
            Preset::Uniform => 0.0,
            Preset::Huckel(p) => p.alpha_c,
        }
    }

    pub(crate) fn alpha_n(&self) -> f64 {
        match self {
            Preset::Uniform => 0.0,
            Preset::Huckel(p) => p.alpha_n,
        }
    }

    pub(crate) fn beta_single(&self) -> f64 {
        match self {
            Preset::Uniform => -1.0,
            Preset::Huckel(p) => p.beta_cc_single,
        }
    }

    pub(crate) fn beta_double(&self) -> f64 {
        match self {
            Preset::Uniform => -1.0,
            Preset::Huckel(p) => p.beta_cc_double,
        }
    }

    pub(crate) fn beta_nc(&self) -> f64 {
        match self {
            Preset::Uniform => -1.0,
            Preset::Huckel(p) => p.beta_nc,
        }
    }

    pub(crate) fn is_huckel(&self) -> bool {
        matches!(self, Preset::Huckel(_))
    }
}
