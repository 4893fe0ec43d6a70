//! Closed-form perturbative energy corrections for a two-particle Coulomb
//! system in rotationally invariant noncommutative phase space, plus the
//! center-of-mass oscillator spectrum induced by momentum noncommutativity.
//!
//! Public values are SI; hydrogenic radial moments are computed in units of
//! the length scale `a` and converted at the end.

use thiserror::Error;

use crate::composite::EffectiveConstants;
use crate::constants::PhysicalConstants;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HydrogenError {
    #[error("invalid bound state (n={n}, l={l}): need n >= 1 and l <= n-1")]
    InvalidState { n: u32, l: u32 },
    #[error("moment <r^{s}> diverges for l={l} (finite only for s >= -(2l+2))")]
    DivergentMoment { s: i32, l: u32 },
    #[error(
        "coordinate correction diverges for l={l}; the closed form needs l >= 2 \
         (use the ns formula for l = 0)"
    )]
    DivergentLevel { l: u32 },
    #[error("relative-motion constants missing: system is not two-particle")]
    MissingRelativeConstants,
    #[error("mean-square moment must be nonnegative, got {0}")]
    NegativeMoment(f64),
}

/// Two-body Coulomb problem: reduced mass, coupling, and the derived
/// length scale a = hbar^2/(mu kappa), never stored.
#[derive(Clone, Copy, Debug)]
pub struct CoulombSystem {
    /// Reduced mass, kg.
    pub mu: f64,
    /// Coulomb coupling, J m.
    pub kappa: f64,
    /// Total mass of the two bodies, kg.
    pub total_mass: f64,
    hbar: f64,
}

impl CoulombSystem {
    pub fn new(mu: f64, kappa: f64, total_mass: f64, constants: &PhysicalConstants) -> Self {
        assert!(mu > 0.0 && kappa > 0.0, "mu and kappa must be positive");
        CoulombSystem { mu, kappa, total_mass, hbar: constants.hbar_J_s }
    }

    /// Length scale a = hbar^2 / (mu kappa), m.
    pub fn length_scale(&self) -> f64 {
        self.hbar * self.hbar / (self.mu * self.kappa)
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Unperturbed level E_n = -kappa/(2 a n^2), J.
    pub fn bohr_energy(&self, n: u32) -> f64 {
        -self.kappa / (2.0 * self.length_scale() * (n as f64).powi(2))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundState {
    pub n: u32,
    pub l: u32,
}

impl BoundState {
    pub fn new(n: u32, l: u32) -> Result<Self, HydrogenError> {
        if n < 1 || l > n - 1 {
            return Err(HydrogenError::InvalidState { n, l });
        }
        Ok(BoundState { n, l })
    }
}

/// Averaged noncommutativity moments over the auxiliary ground states.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NCMoments {
    /// <theta^r>, m^2/(J s).
    pub mean_theta: f64,
    /// <(theta^r)^2>, (m^2/(J s))^2.
    pub mean_theta_sq: f64,
    /// <(eta^r)^2>, kg^2/s^2.
    pub mean_eta_sq_r: f64,
    /// <(eta^c)^2>, kg^2/s^2.
    pub mean_eta_sq_c: f64,
}

/// Gaussian ground-state moments of the effective constants:
/// <theta^r> = 2 l_P^2 c_th^r / (sqrt(pi) hbar),
/// <(theta^r)^2> = 3 (c_th^r l_P^2)^2 / (2 hbar^2),
/// <(eta)^2> = 3 (c_et hbar)^2 / (2 l_P^4).
pub fn nc_moments(
    consts: &EffectiveConstants,
    constants: &PhysicalConstants,
) -> Result<NCMoments, HydrogenError> {
    let c_theta_r = consts.c_theta_r.ok_or(HydrogenError::MissingRelativeConstants)?;
    let c_eta_r = consts.c_eta_r.ok_or(HydrogenError::MissingRelativeConstants)?;
    let lp2 = constants.planck_length_m * constants.planck_length_m;
    let hbar = constants.hbar_J_s;
    let theta_scale = c_theta_r * lp2 / hbar;
    let eta_scale_r = c_eta_r * hbar / lp2;
    let eta_scale_c = consts.c_eta_c * hbar / lp2;
    Ok(NCMoments {
        mean_theta: 2.0 * theta_scale / std::f64::consts::PI.sqrt(),
        mean_theta_sq: 1.5 * theta_scale * theta_scale,
        mean_eta_sq_r: 1.5 * eta_scale_r * eta_scale_r,
        mean_eta_sq_c: 1.5 * eta_scale_c * eta_scale_c,
    })
}

/// Hydrogenic <r^s> in units of a^s via the Kramers-Pasternack three-term
/// recursion, seeded at <r^-1> and <r^-2>.
pub fn r_power_mean_reduced(n: u32, l: u32, s: i32) -> Result<f64, HydrogenError> {
    let state = BoundState::new(n, l)?;
    let (n, l) = (state.n, state.l);
    if s < -(2 * l as i32 + 2) {
        return Err(HydrogenError::DivergentMoment { s, l });
    }
    let nf = n as f64;
    let lf = l as f64;
    let n2 = nf * nf;
    let two_l1_sq = (2.0 * lf + 1.0) * (2.0 * lf + 1.0);

    // Upward from M_0 = 1, M_{-1} = 1/n^2:
    //   M_s = (n^2/(s+1)) [ (2s+1) M_{s-1} - (s/4)((2l+1)^2 - s^2) M_{s-2} ]
    if s >= 0 {
        let mut m_prev = 1.0 / n2; // M_{-1}
        let mut m_cur = 1.0; // M_0
        for t in 1..=s {
            let tf = t as f64;
            let next = n2 / (tf + 1.0)
                * ((2.0 * tf + 1.0) * m_cur - tf / 4.0 * (two_l1_sq - tf * tf) * m_prev);
            m_prev = m_cur;
            m_cur = next;
        }
        return Ok(m_cur);
    }

    // Downward:
    //   M_{t-2} = [ (2t+1) M_{t-1} - (t+1)/n^2 M_t ] / ( (t/4)((2l+1)^2 - t^2) )
    let mut m_t = 1.0 / n2; // M_{-1}
    let mut m_t1 = 1.0 / (n2 * nf * (lf + 0.5)); // M_{-2}
    if s == -1 {
        return Ok(m_t);
    }
    let mut t = -1i32;
    while t - 2 >= s {
        let tf = t as f64;
        let denom = tf / 4.0 * (two_l1_sq - tf * tf);
        debug_assert!(denom != 0.0, "recursion coefficient vanished inside the finite range");
        let next = ((2.0 * tf + 1.0) * m_t1 - (tf + 1.0) / n2 * m_t) / denom;
        m_t = m_t1;
        m_t1 = next;
        t -= 1;
    }
    Ok(m_t1)
}

/// Hydrogenic <r^s> in SI (m^s).
pub fn r_power_mean(state: BoundState, sys: &CoulombSystem, s: i32) -> Result<f64, HydrogenError> {
    Ok(r_power_mean_reduced(state.n, state.l, s)? * sys.length_scale().powi(s))
}

/// Correction from momentum noncommutativity:
/// dE = kappa a^3 n^2 <(eta^r)^2> (5n^2 + 1 - 3l(l+1)) / (24 hbar^2).
pub fn delta_e_eta(state: BoundState, sys: &CoulombSystem, moments: &NCMoments) -> f64 {
    let a = sys.length_scale();
    let nf = state.n as f64;
    let lf = state.l as f64;
    let poly = 5.0 * nf * nf + 1.0 - 3.0 * lf * (lf + 1.0);
    sys.kappa * a.powi(3) * nf * nf * moments.mean_eta_sq_r * poly / (24.0 * sys.hbar * sys.hbar)
}

/// Correction from coordinate noncommutativity for l >= 2.
pub fn delta_e_theta_high_l(
    state: BoundState,
    sys: &CoulombSystem,
    moments: &NCMoments,
) -> Result<f64, HydrogenError> {
    if state.l < 2 {
        return Err(HydrogenError::DivergentLevel { l: state.l });
    }
    let nf = state.n as f64;
    let lf = state.l as f64;
    let n2 = nf * nf;
    let ll1 = lf * (lf + 1.0);
    let bracket = 1.0 / (6.0 * ll1 * (2.0 * lf + 1.0))
        - (6.0 * n2 - 2.0 * ll1)
            / (3.0 * ll1 * (2.0 * lf + 1.0) * (2.0 * lf + 3.0) * (2.0 * lf - 1.0))
        + (5.0 * n2 - 3.0 * ll1 + 1.0)
            / (2.0 * (lf + 2.0) * (2.0 * lf + 1.0) * (2.0 * lf + 3.0) * (lf - 1.0) * (2.0 * lf - 1.0))
        - (5.0 / 6.0) * (5.0 * n2 - 3.0 * ll1 + 1.0)
            / (ll1 * (lf + 2.0) * (2.0 * lf + 1.0) * (2.0 * lf + 3.0) * (lf - 1.0) * (2.0 * lf - 1.0));
    let a = sys.length_scale();
    Ok(-sys.hbar * sys.hbar * sys.kappa * moments.mean_theta_sq / (a.powi(5) * nf.powi(5))
        * bracket)
}

/// The cited coefficient of the ns-level coordinate correction; taken as
/// printed, to two decimal places.
pub const NS_THETA_COEFFICIENT: f64 = 1.72;

/// Correction from coordinate noncommutativity for l = 0:
/// dE = 1.72 hbar <theta^r> pi kappa / (8 a^3 n^3).
pub fn delta_e_theta_ns(n: u32, sys: &CoulombSystem, moments: &NCMoments) -> f64 {
    let a = sys.length_scale();
    let nf = n as f64;
    NS_THETA_COEFFICIENT * sys.hbar * moments.mean_theta * std::f64::consts::PI * sys.kappa
        / (8.0 * a.powi(3) * nf.powi(3))
}

/// The theta part of a correction; l = 1 has no finite closed form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThetaCorrection {
    Value(f64),
    NotComputable,
}

impl ThetaCorrection {
    pub fn value(&self) -> Option<f64> {
        match self {
            ThetaCorrection::Value(v) => Some(*v),
            ThetaCorrection::NotComputable => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrectionBreakdown {
    pub eta: f64,
    pub theta: ThetaCorrection,
}

impl CorrectionBreakdown {
    pub fn total(&self) -> Option<f64> {
        self.theta.value().map(|t| t + self.eta)
    }
}

/// Total first-order correction, dispatching the theta part on l.
pub fn total_correction(
    state: BoundState,
    sys: &CoulombSystem,
    moments: &NCMoments,
) -> CorrectionBreakdown {
    let eta = delta_e_eta(state, sys, moments);
    let theta = match state.l {
        0 => ThetaCorrection::Value(delta_e_theta_ns(state.n, sys, moments)),
        1 => ThetaCorrection::NotComputable,
        _ => ThetaCorrection::Value(
            delta_e_theta_high_l(state, sys, moments).expect("l >= 2 checked"),
        ),
    };
    CorrectionBreakdown { eta, theta }
}

/// Center-of-mass oscillator level
/// E = hbar sqrt(2 <(eta^c)^2>) (n1 + n2 + n3 + 3/2) / (sqrt(3) M).
pub fn com_oscillator_level(
    quanta: (u32, u32, u32),
    total_mass: f64,
    moments: &NCMoments,
    constants: &PhysicalConstants,
) -> Result<f64, HydrogenError> {
    if moments.mean_eta_sq_c < 0.0 {
        return Err(HydrogenError::NegativeMoment(moments.mean_eta_sq_c));
    }
    let sum = (quanta.0 + quanta.1 + quanta.2) as f64 + 1.5;
    Ok(constants.hbar_J_s * (2.0 * moments.mean_eta_sq_c).sqrt() * sum
        / (3.0_f64.sqrt() * total_mass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composite::{relative_constants, SystemParams};
    use approx::assert_relative_eq;

    fn test_system() -> CoulombSystem {
        let c = PhysicalConstants::codata2018();
        // hydrogen-like numbers keep the scales realistic
        let mu = c.m_e_kg * c.m_p_kg / (c.m_e_kg + c.m_p_kg);
        CoulombSystem::new(mu, c.coulomb_strength(), c.m_e_kg + c.m_p_kg, c)
    }

    fn moments_for(gamma: f64, alpha: f64, masses: &[f64; 2]) -> (NCMoments, CoulombSystem) {
        let c = PhysicalConstants::codata2018();
        let sys = SystemParams::from_mass_conditions(gamma, alpha, masses).unwrap();
        let eff = relative_constants(&sys).unwrap();
        let m = nc_moments(&eff, c).unwrap();
        let mu = sys.reduced_mass().unwrap();
        (m, CoulombSystem::new(mu, c.coulomb_strength(), sys.total_mass(), c))
    }

    #[test]
    fn bound_state_validation() {
        assert!(BoundState::new(1, 0).is_ok());
        assert!(BoundState::new(3, 2).is_ok());
        assert!(matches!(
            BoundState::new(2, 2),
            Err(HydrogenError::InvalidState { n: 2, l: 2 })
        ));
        assert!(BoundState::new(0, 0).is_err());
    }

    #[test]
    fn moment_examples() {
        // normalization
        assert_relative_eq!(r_power_mean_reduced(1, 0, 0).unwrap(), 1.0);
        // <r^2>(1s) = 3 a^2
        assert_relative_eq!(r_power_mean_reduced(1, 0, 2).unwrap(), 3.0, max_relative = 1e-14);
        // <r^-3>(2p) = 1/24
        assert_relative_eq!(
            r_power_mean_reduced(2, 1, -3).unwrap(),
            1.0 / 24.0,
            max_relative = 1e-14
        );
        // <r>(n,l) = (3n^2 - l(l+1))/2
        assert_relative_eq!(
            r_power_mean_reduced(4, 2, 1).unwrap(),
            (3.0 * 16.0 - 6.0) / 2.0,
            max_relative = 1e-13
        );
        // divergences
        assert!(matches!(
            r_power_mean_reduced(1, 0, -3),
            Err(HydrogenError::DivergentMoment { s: -3, l: 0 })
        ));
        assert!(r_power_mean_reduced(3, 1, -4).is_ok());
        assert!(r_power_mean_reduced(3, 1, -5).is_err());
        // SI scaling
        let sys = test_system();
        let a = sys.length_scale();
        let got = r_power_mean(BoundState::new(1, 0).unwrap(), &sys, 2).unwrap();
        assert_relative_eq!(got, 3.0 * a * a, max_relative = 1e-13);
    }

    #[test]
    fn kramers_pasternack_residuals() {
        // The three-term relation itself, evaluated on computed moments.
        for n in 1..=8u32 {
            for l in 0..n {
                let smin = -(2 * l as i32 + 2) + 2;
                for s in smin..=2 {
                    let m_s = r_power_mean_reduced(n, l, s).unwrap();
                    let m_s1 = r_power_mean_reduced(n, l, s - 1).unwrap();
                    let m_s2 = r_power_mean_reduced(n, l, s - 2).unwrap();
                    let sf = s as f64;
                    let n2 = (n * n) as f64;
                    let tl = (2 * l + 1) as f64;
                    let resid = (sf + 1.0) / n2 * m_s - (2.0 * sf + 1.0) * m_s1
                        + sf / 4.0 * (tl * tl - sf * sf) * m_s2;
                    let scale = m_s.abs().max(m_s1.abs()).max(m_s2.abs());
                    assert!(
                        resid.abs() <= 1e-12 * scale,
                        "KP residual too large at n={n} l={l} s={s}: {resid:e}"
                    );
                }
            }
        }
    }

    #[test]
    fn eta_correction_examples() {
        let sys = test_system();
        let zero = NCMoments::default();
        assert_eq!(delta_e_eta(BoundState::new(1, 0).unwrap(), &sys, &zero), 0.0);

        // polynomial factor at (1,0) is 5+1-0 = 6
        let m = NCMoments { mean_eta_sq_r: 1e-60, ..Default::default() };
        let got = delta_e_eta(BoundState::new(1, 0).unwrap(), &sys, &m);
        let a = sys.length_scale();
        let expect = sys.kappa * a.powi(3) * 1e-60 * 6.0 / (24.0 * sys.hbar() * sys.hbar());
        assert_relative_eq!(got, expect, max_relative = 1e-14);
    }

    #[test]
    fn eta_cross_route_identity() {
        // dE = (<eta^2>/12 mu) <r^2> must match the closed form exactly.
        let sys = test_system();
        let m = NCMoments { mean_eta_sq_r: 3.7e-61, ..Default::default() };
        for (n, l) in [(1u32, 0u32), (2, 1), (5, 3), (8, 0), (36, 34)] {
            let state = BoundState::new(n, l).unwrap();
            let direct = delta_e_eta(state, &sys, &m);
            let via_r2 = m.mean_eta_sq_r / (12.0 * sys.mu) * r_power_mean(state, &sys, 2).unwrap();
            assert_relative_eq!(direct, via_r2, max_relative = 1e-12);
        }
    }

    #[test]
    fn theta_high_l_examples() {
        let sys = test_system();
        let zero = NCMoments::default();
        assert_eq!(
            delta_e_theta_high_l(BoundState::new(3, 2).unwrap(), &sys, &zero).unwrap(),
            0.0
        );
        assert!(matches!(
            delta_e_theta_high_l(BoundState::new(2, 1).unwrap(), &sys, &zero),
            Err(HydrogenError::DivergentLevel { l: 1 })
        ));
        assert!(delta_e_theta_high_l(BoundState::new(1, 0).unwrap(), &sys, &zero).is_err());

        // (3,2) bracket evaluates to 1/135 (hand-reduced):
        // 1/180 - 42/1890 + 28/840 - (5/6)(28/2520) = 1/135.
        let m = NCMoments { mean_theta_sq: 2.2e-140, ..Default::default() };
        let got = delta_e_theta_high_l(BoundState::new(3, 2).unwrap(), &sys, &m).unwrap();
        let a = sys.length_scale();
        let expect = -sys.hbar() * sys.hbar() * sys.kappa * 2.2e-140
            / (a.powi(5) * 243.0 * 135.0);
        assert_relative_eq!(got, expect, max_relative = 1e-12);
    }

    #[test]
    fn theta_ns_examples() {
        let sys = test_system();
        let zero = NCMoments::default();
        assert_eq!(delta_e_theta_ns(1, &sys, &zero), 0.0);

        let m = NCMoments { mean_theta: 4.4e-70, ..Default::default() };
        let r = delta_e_theta_ns(2, &sys, &m) / delta_e_theta_ns(1, &sys, &m);
        assert_relative_eq!(r, 1.0 / 8.0, max_relative = 1e-14);

        // with hbar <theta> = a^2 the n=1 value is (1.72 pi / 8) kappa/a
        let a = sys.length_scale();
        let m = NCMoments { mean_theta: a * a / sys.hbar(), ..Default::default() };
        let got = delta_e_theta_ns(1, &sys, &m);
        assert_relative_eq!(
            got,
            1.72 * std::f64::consts::PI / 8.0 * sys.kappa / a,
            max_relative = 1e-14
        );
    }

    #[test]
    fn total_correction_dispatch() {
        let sys = test_system();
        let (m, _) = moments_for(1e-40, 1e10, &[1e-27, 2e-27]);
        // l = 2 state: equals the sum of the two branch functions
        let s = BoundState::new(3, 2).unwrap();
        let tot = total_correction(s, &sys, &m);
        assert_relative_eq!(
            tot.total().unwrap(),
            delta_e_eta(s, &sys, &m) + delta_e_theta_high_l(s, &sys, &m).unwrap(),
            max_relative = 1e-14
        );
        // l = 0: ns formula
        let s = BoundState::new(2, 0).unwrap();
        let tot = total_correction(s, &sys, &m);
        assert_relative_eq!(
            tot.total().unwrap(),
            delta_e_eta(s, &sys, &m) + delta_e_theta_ns(2, &sys, &m),
            max_relative = 1e-14
        );
        // l = 1: marker, not a number, and not silently zero
        let s = BoundState::new(2, 1).unwrap();
        let tot = total_correction(s, &sys, &m);
        assert_eq!(tot.theta, ThetaCorrection::NotComputable);
        assert!(tot.total().is_none());
        // zero moments: zero corrections
        let tot = total_correction(BoundState::new(4, 0).unwrap(), &sys, &NCMoments::default());
        assert_eq!(tot.total(), Some(0.0));
    }

    #[test]
    fn moment_ratio_is_fixed_by_gaussian_statistics() {
        // <theta>^2 / <theta^2> = (4/pi)/(3/2) = 8/(3 pi), Cauchy-Schwarz < 1
        let (m, _) = moments_for(3.3e-41, 0.0, &[1e-27, 3e-27]);
        let ratio = m.mean_theta * m.mean_theta / m.mean_theta_sq;
        assert_relative_eq!(ratio, 8.0 / (3.0 * std::f64::consts::PI), max_relative = 1e-13);
        assert!(m.mean_theta * m.mean_theta <= m.mean_theta_sq);
    }

    #[test]
    fn parameter_scaling_powers() {
        // doubling the constants: eta and high-l theta scale by 4, ns theta by 2
        let (m1, sys) = moments_for(2e-41, 5e9, &[1e-27, 2e-27]);
        let (m2, _) = moments_for(4e-41, 1e10, &[1e-27, 2e-27]);
        let s22 = BoundState::new(3, 2).unwrap();
        let s10 = BoundState::new(1, 0).unwrap();
        assert_relative_eq!(
            delta_e_eta(s10, &sys, &m2) / delta_e_eta(s10, &sys, &m1),
            4.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            delta_e_theta_high_l(s22, &sys, &m2).unwrap()
                / delta_e_theta_high_l(s22, &sys, &m1).unwrap(),
            4.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            delta_e_theta_ns(1, &sys, &m2) / delta_e_theta_ns(1, &sys, &m1),
            2.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn quantum_number_trends() {
        let sys = test_system();
        let m = NCMoments {
            mean_theta: 1e-70,
            mean_theta_sq: 1e-140,
            mean_eta_sq_r: 1e-61,
            mean_eta_sq_c: 1e-61,
        };
        // eta correction grows ~ n^4 at fixed l
        let r = delta_e_eta(BoundState::new(64, 0).unwrap(), &sys, &m)
            / delta_e_eta(BoundState::new(32, 0).unwrap(), &sys, &m);
        assert!((r / 16.0 - 1.0).abs() < 0.05, "eta n-trend ratio {r}");
        // ns theta correction falls exactly as 1/n^3
        let r = delta_e_theta_ns(32, &sys, &m) / delta_e_theta_ns(64, &sys, &m);
        assert_relative_eq!(r, 8.0, max_relative = 1e-12);
        // high-l theta correction approaches 1/n^3 at fixed l for large n
        // (the 1/n^5 prefactor is compensated by the n^2 growth of the bracket)
        let r = delta_e_theta_high_l(BoundState::new(40, 2).unwrap(), &sys, &m).unwrap()
            / delta_e_theta_high_l(BoundState::new(80, 2).unwrap(), &sys, &m).unwrap();
        assert!((r / 8.0 - 1.0).abs() < 0.05, "theta high-l n-trend ratio {r}");
    }

    #[test]
    fn reduced_mass_trends() {
        let c = PhysicalConstants::codata2018();
        let gamma = 1e-41;
        let alpha = 1e9;
        let (m_a, sys_a) = moments_for(gamma, alpha, &[1e-27, 1e-27]);
        let (m_b, sys_b) = moments_for(gamma, alpha, &[2e-27, 2e-27]);
        let (a_a, a_b) = (sys_a.length_scale(), sys_b.length_scale());
        // <(eta^r)^2> a^3 ~ 1/mu
        let ra = m_a.mean_eta_sq_r * a_a.powi(3);
        let rb = m_b.mean_eta_sq_r * a_b.powi(3);
        assert_relative_eq!(ra / rb, 2.0, max_relative = 1e-10);
        // <theta^r>/a^3 ~ mu^2
        let ra = m_a.mean_theta / a_a.powi(3);
        let rb = m_b.mean_theta / a_b.powi(3);
        assert_relative_eq!(rb / ra, 4.0, max_relative = 1e-10);
        // <(theta^r)^2>/a^5 ~ mu^3
        let ra = m_a.mean_theta_sq / a_a.powi(5);
        let rb = m_b.mean_theta_sq / a_b.powi(5);
        assert_relative_eq!(rb / ra, 8.0, max_relative = 1e-10);
        let _ = c;
    }

    #[test]
    fn com_oscillator_examples() {
        let c = PhysicalConstants::codata2018();
        let m0 = NCMoments::default();
        assert_eq!(com_oscillator_level((0, 0, 0), 1e-27, &m0, c).unwrap(), 0.0);

        let m = NCMoments { mean_eta_sq_c: 4e-61, ..Default::default() };
        let ground = com_oscillator_level((0, 0, 0), 1e-27, &m, c).unwrap();
        assert_relative_eq!(
            ground,
            1.5 * c.hbar_J_s * (2.0 * 4e-61_f64).sqrt() / (3.0_f64.sqrt() * 1e-27),
            max_relative = 1e-14
        );
        // equidistant spectrum
        let e1 = com_oscillator_level((1, 0, 0), 1e-27, &m, c).unwrap();
        let e2 = com_oscillator_level((0, 2, 0), 1e-27, &m, c).unwrap();
        assert_relative_eq!(e2 - e1, e1 - ground, max_relative = 1e-12);
    }
}
