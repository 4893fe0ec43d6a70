//! Physical constants table (CODATA 2018), SI units.
//!
//! The table ships as a JSON data file so every number entering a bound is
//! auditable; callers may load an override table from disk. The Planck
//! length is carried as an independent tabulated constant.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstantsError {
    #[error("failed to read constants file: {0}")]
    Io(#[from] std::io::Error),
    #[error("failed to parse constants table: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("constant {0} must be positive")]
    NonPositive(&'static str),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J s.
    pub hbar_J_s: f64,
    /// Planck constant, J s.
    pub h_J_s: f64,
    /// Speed of light, m/s.
    pub c_m_s: f64,
    /// Elementary charge, C.
    pub e_C: f64,
    /// Vacuum permittivity, F/m.
    pub epsilon0_F_m: f64,
    /// Bohr radius, m.
    pub bohr_radius_m: f64,
    /// Planck length, m.
    pub planck_length_m: f64,
    /// Electron mass, kg.
    pub m_e_kg: f64,
    /// Muon mass, kg.
    pub m_mu_kg: f64,
    /// Proton mass, kg.
    pub m_p_kg: f64,
    /// Antiproton mass, kg.
    pub m_pbar_kg: f64,
    /// Helium-4 nucleus (alpha particle) mass, kg.
    pub m_he4_nucleus_kg: f64,
}

static CODATA_2018: &str = include_str!("../data/codata_2018.json");
static DEFAULT: OnceLock<PhysicalConstants> = OnceLock::new();

impl PhysicalConstants {
    /// The bundled CODATA 2018 table.
    pub fn codata2018() -> &'static PhysicalConstants {
        DEFAULT.get_or_init(|| {
            let c: PhysicalConstants =
                serde_json::from_str(CODATA_2018).expect("bundled table parses");
            c.validate().expect("bundled table is positive");
            c
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self, ConstantsError> {
        let c: PhysicalConstants = serde_json::from_str(s)?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_json_file(path: &std::path::Path) -> Result<Self, ConstantsError> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    fn validate(&self) -> Result<(), ConstantsError> {
        let fields: [(&'static str, f64); 12] = [
            ("hbar_J_s", self.hbar_J_s),
            ("h_J_s", self.h_J_s),
            ("c_m_s", self.c_m_s),
            ("e_C", self.e_C),
            ("epsilon0_F_m", self.epsilon0_F_m),
            ("bohr_radius_m", self.bohr_radius_m),
            ("planck_length_m", self.planck_length_m),
            ("m_e_kg", self.m_e_kg),
            ("m_mu_kg", self.m_mu_kg),
            ("m_p_kg", self.m_p_kg),
            ("m_pbar_kg", self.m_pbar_kg),
            ("m_he4_nucleus_kg", self.m_he4_nucleus_kg),
        ];
        for (name, v) in fields {
            if !(v > 0.0) {
                return Err(ConstantsError::NonPositive(name));
            }
        }
        Ok(())
    }

    /// Coulomb strength e^2/(4 pi eps0) in J m.
    pub fn coulomb_strength(&self) -> f64 {
        self.e_C * self.e_C / (4.0 * std::f64::consts::PI * self.epsilon0_F_m)
    }
}
