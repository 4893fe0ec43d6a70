//! Numeric per-particle and effective noncommutativity constants for
//! composite systems.
//!
//! Under the mass conditions c_theta*m = gamma_t and c_eta/m = alpha_t the
//! effective constants depend only on the total (center-of-mass) or reduced
//! (relative-motion) mass, not on the composition. Everything here is
//! binary64; the exact statements live in the symbolic layer.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CompositeError {
    #[error("particle masses must be positive, got {0}")]
    NonPositiveMass(f64),
    #[error("system must contain at least one particle")]
    Empty,
    #[error("operation requires exactly two particles, system has {0}")]
    TwoParticleOnly(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParticleParams {
    /// Mass in kg.
    pub mass: f64,
    pub c_theta: f64,
    pub c_eta: f64,
}

/// Particle masses plus their dimensionless noncommutativity constants.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemParams {
    particles: Vec<ParticleParams>,
}

impl SystemParams {
    pub fn new(particles: Vec<ParticleParams>) -> Result<Self, CompositeError> {
        if particles.is_empty() {
            return Err(CompositeError::Empty);
        }
        for p in &particles {
            if !(p.mass > 0.0) {
                return Err(CompositeError::NonPositiveMass(p.mass));
            }
        }
        Ok(SystemParams { particles })
    }

    /// Imposes the mass conditions: c_theta_n = gamma_t/m_n, c_eta_n = alpha_t*m_n.
    pub fn from_mass_conditions(
        gamma_tilde: f64,
        alpha_tilde: f64,
        masses: &[f64],
    ) -> Result<Self, CompositeError> {
        let particles = masses
            .iter()
            .map(|&m| {
                if !(m > 0.0) {
                    return Err(CompositeError::NonPositiveMass(m));
                }
                Ok(ParticleParams {
                    mass: m,
                    c_theta: gamma_tilde / m,
                    c_eta: alpha_tilde * m,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if particles.is_empty() {
            return Err(CompositeError::Empty);
        }
        Ok(SystemParams { particles })
    }

    pub fn particles(&self) -> &[ParticleParams] {
        &self.particles
    }

    pub fn total_mass(&self) -> f64 {
        self.particles.iter().map(|p| p.mass).sum()
    }

    pub fn reduced_mass(&self) -> Result<f64, CompositeError> {
        if self.particles.len() != 2 {
            return Err(CompositeError::TwoParticleOnly(self.particles.len()));
        }
        let (m1, m2) = (self.particles[0].mass, self.particles[1].mass);
        Ok(m1 * m2 / (m1 + m2))
    }
}

/// Effective constants for the center-of-mass and (two-particle systems
/// only) the relative motion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EffectiveConstants {
    /// c_theta^c = sum_n mu_n^2 c_theta_n (mu^2-weighted).
    pub c_theta_c: f64,
    /// c_eta^c = sum_n c_eta_n (plain sum).
    pub c_eta_c: f64,
    /// c_theta^r = c_theta_1 + c_theta_2.
    pub c_theta_r: Option<f64>,
    /// c_eta^r = mu_2^2 c_eta_1 + mu_1^2 c_eta_2.
    pub c_eta_r: Option<f64>,
    /// Total mass in kg.
    pub total_mass: f64,
    /// Reduced mass in kg (two-particle systems).
    pub reduced_mass: Option<f64>,
}

/// Center-of-mass effective constants for any particle count.
pub fn effective_com_constants(sys: &SystemParams) -> EffectiveConstants {
    let total = sys.total_mass();
    let mut c_theta_c = 0.0;
    let mut c_eta_c = 0.0;
    for p in sys.particles() {
        let mu = p.mass / total;
        c_theta_c += mu * mu * p.c_theta;
        c_eta_c += p.c_eta;
    }
    EffectiveConstants {
        c_theta_c,
        c_eta_c,
        c_theta_r: None,
        c_eta_r: None,
        total_mass: total,
        reduced_mass: None,
    }
}

/// Relative-motion constants; requires exactly two particles.
pub fn relative_constants(sys: &SystemParams) -> Result<EffectiveConstants, CompositeError> {
    let reduced = sys.reduced_mass()?;
    let total = sys.total_mass();
    let (p1, p2) = (&sys.particles()[0], &sys.particles()[1]);
    let (mu1, mu2) = (p1.mass / total, p2.mass / total);
    let mut out = effective_com_constants(sys);
    out.c_theta_r = Some(p1.c_theta + p2.c_theta);
    out.c_eta_r = Some(mu2 * mu2 * p1.c_eta + mu1 * mu1 * p2.c_eta);
    out.reduced_mass = Some(reduced);
    Ok(out)
}

/// Outcome of the mass-condition consistency check.
#[derive(Clone, Copy, Debug)]
pub struct MassConditionCheck {
    pub holds: bool,
    /// Inferred gamma_t (mean of the per-particle products c_theta_n * m_n).
    pub gamma_tilde: f64,
    /// Inferred alpha_t (mean of the per-particle ratios c_eta_n / m_n).
    pub alpha_tilde: f64,
    /// Largest relative spread across either family of products/ratios.
    pub max_residual: f64,
}

/// Relative spread of a list of values: (max - min) / max magnitude,
/// zero when all values vanish.
fn relative_spread(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let scale = max.abs().max(min.abs());
    if scale == 0.0 {
        0.0
    } else {
        (max - min) / scale
    }
}

/// Checks whether all products c_theta_n*m_n and ratios c_eta_n/m_n agree
/// within the relative tolerance, and reports the inferred constants.
pub fn check_mass_conditions(sys: &SystemParams, tol: f64) -> MassConditionCheck {
    let products: Vec<f64> = sys.particles().iter().map(|p| p.c_theta * p.mass).collect();
    let ratios: Vec<f64> = sys.particles().iter().map(|p| p.c_eta / p.mass).collect();
    let r_theta = relative_spread(&products);
    let r_eta = relative_spread(&ratios);
    let n = sys.particles().len() as f64;
    MassConditionCheck {
        holds: r_theta <= tol && r_eta <= tol,
        gamma_tilde: products.iter().sum::<f64>() / n,
        alpha_tilde: ratios.iter().sum::<f64>() / n,
        max_residual: r_theta.max(r_eta),
    }
}

/// Default relative tolerance for `check_mass_conditions`.
pub const MASS_CONDITION_TOL: f64 = 1e-12;
