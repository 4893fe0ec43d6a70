//! Exotic-atom spectroscopy: measurement records and the upper bounds on
//! noncommutativity parameters they imply.
//!
//! A measured transition frequency with uncertainty bounds the allowed
//! noncommutative shift of that transition. The error budget is split
//! between the coordinate and momentum channels (half each by default);
//! each inequality is inverted in closed form through the linearity of the
//! corrections in the corresponding moment.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::constants::PhysicalConstants;
use crate::hydrogen::{
    delta_e_eta, delta_e_theta_high_l, delta_e_theta_ns, BoundState, CoulombSystem, NCMoments,
};

#[derive(Debug, Error)]
pub enum AtomsError {
    #[error("failed to read measurement file: {0}")]
    Io(#[from] std::io::Error),
    #[error("failed to parse measurement file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("record {index} invalid: {reason}")]
    Validation { index: usize, reason: String },
    #[error("unknown atom preset '{0}'")]
    UnknownAtom(String),
    #[error("theta correction not computable: state with l = 1 in transition")]
    ThetaNotComputable,
    #[error("split fraction must lie in (0, 1), got {0}")]
    BadSplit(f64),
}

/// How the Coulomb length scale entering the corrections is chosen.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LengthRecipe {
    /// a = hbar^2 / (mu kappa) with the exact two-body reduced mass.
    Exact,
    /// a = m_e a_B / m_2: the hydrogen Bohr radius rescaled by the second
    /// body's mass, the simplification used for order-of-magnitude bounds.
    PaperSimplified,
}

impl LengthRecipe {
    pub fn as_str(&self) -> &'static str {
        match self {
            LengthRecipe::Exact => "exact",
            LengthRecipe::PaperSimplified => "paper",
        }
    }
}

/// A hydrogen-like two-body system with an effective nuclear charge.
#[derive(Clone, Debug)]
pub struct AtomSpec {
    pub name: String,
    /// Light / orbiting body mass, kg.
    pub m1: f64,
    /// Heavy / central body mass, kg.
    pub m2: f64,
    pub z_eff: f64,
    pub recipe: LengthRecipe,
}

impl AtomSpec {
    pub fn new(name: &str, m1: f64, m2: f64, z_eff: f64, recipe: LengthRecipe) -> Self {
        assert!(m1 > 0.0 && m2 > 0.0 && z_eff > 0.0);
        AtomSpec { name: name.to_string(), m1, m2, z_eff, recipe }
    }

    pub fn hydrogen(c: &PhysicalConstants) -> Self {
        Self::new("hydrogen", c.m_e_kg, c.m_p_kg, 1.0, LengthRecipe::Exact)
    }

    pub fn muonic_hydrogen(c: &PhysicalConstants) -> Self {
        Self::new("muonic_hydrogen", c.m_mu_kg, c.m_p_kg, 1.0, LengthRecipe::Exact)
    }

    /// Antiprotonic helium: antiproton orbiting a He-4 nucleus, with the
    /// electron shielding folded into Z_eff = 2 and the simplified length
    /// scale a = m_e a_B / m_pbar.
    pub fn antiprotonic_helium(c: &PhysicalConstants) -> Self {
        Self::new(
            "antiprotonic_helium",
            c.m_pbar_kg,
            c.m_he4_nucleus_kg,
            2.0,
            LengthRecipe::PaperSimplified,
        )
    }

    pub fn preset(name: &str, c: &PhysicalConstants) -> Result<Self, AtomsError> {
        match name {
            "hydrogen" => Ok(Self::hydrogen(c)),
            "muonic_hydrogen" => Ok(Self::muonic_hydrogen(c)),
            "antiprotonic_helium" => Ok(Self::antiprotonic_helium(c)),
            other => Err(AtomsError::UnknownAtom(other.to_string())),
        }
    }

    pub fn kappa(&self, c: &PhysicalConstants) -> f64 {
        self.z_eff * c.coulomb_strength()
    }

    pub fn reduced_mass(&self) -> f64 {
        self.m1 * self.m2 / (self.m1 + self.m2)
    }

    /// The length scale the chosen recipe implies, m.
    pub fn length_scale(&self, c: &PhysicalConstants) -> f64 {
        match self.recipe {
            LengthRecipe::Exact => {
                c.hbar_J_s * c.hbar_J_s / (self.reduced_mass() * self.kappa(c))
            }
            LengthRecipe::PaperSimplified => c.m_e_kg * c.bohr_radius_m / self.m1,
        }
    }

    /// The Coulomb system whose corrections use this atom's length scale.
    /// The simplified recipe is realized through the effective reduced
    /// mass hbar^2/(a kappa), so a = hbar^2/(mu kappa) always holds.
    pub fn coulomb_system(&self, c: &PhysicalConstants) -> CoulombSystem {
        let kappa = self.kappa(c);
        let mu = c.hbar_J_s * c.hbar_J_s / (self.length_scale(c) * kappa);
        CoulombSystem::new(mu, kappa, self.m1 + self.m2, c)
    }

    pub fn with_recipe(mut self, recipe: LengthRecipe) -> Self {
        self.recipe = recipe;
        self
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Transition {
    pub from: [u32; 2],
    pub to: [u32; 2],
}

/// One spectroscopic measurement.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MeasurementRecord {
    pub atom: String,
    pub transition: Transition,
    #[serde(rename = "frequency_MHz")]
    pub frequency_mhz: f64,
    #[serde(rename = "uncertainty_MHz")]
    pub uncertainty_mhz: f64,
    pub source: String,
}

impl MeasurementRecord {
    fn validate(&self, index: usize) -> Result<(), AtomsError> {
        let bad = |reason: String| AtomsError::Validation { index, reason };
        if !(self.frequency_mhz > 0.0) {
            return Err(bad(format!("frequency must be positive, got {}", self.frequency_mhz)));
        }
        if !(self.uncertainty_mhz > 0.0) {
            return Err(bad(format!(
                "uncertainty must be positive, got {}",
                self.uncertainty_mhz
            )));
        }
        for (tag, [n, l]) in [("from", self.transition.from), ("to", self.transition.to)] {
            if BoundState::new(n, l).is_err() {
                return Err(bad(format!("{tag} state (n={n}, l={l}) is not a valid level")));
            }
        }
        Ok(())
    }

    pub fn from_state(&self) -> BoundState {
        BoundState::new(self.transition.from[0], self.transition.from[1]).expect("validated")
    }

    pub fn to_state(&self) -> BoundState {
        BoundState::new(self.transition.to[0], self.transition.to[1]).expect("validated")
    }
}

/// Loads and validates a JSON array of measurement records.
pub fn load_measurements(path: &Path) -> Result<Vec<MeasurementRecord>, AtomsError> {
    let text = std::fs::read_to_string(path)?;
    load_measurements_str(&text)
}

pub fn load_measurements_str(text: &str) -> Result<Vec<MeasurementRecord>, AtomsError> {
    let records: Vec<MeasurementRecord> = serde_json::from_str(text)?;
    for (i, r) in records.iter().enumerate() {
        r.validate(i)?;
    }
    Ok(records)
}

/// Theta-channel transition correction; `None` marks an l = 1 state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransitionCorrections {
    /// Delta^theta = dE^theta(from) - dE^theta(to), J.
    pub delta_theta: Option<f64>,
    /// Delta^eta = dE^eta(from) - dE^eta(to), J.
    pub delta_eta: f64,
}

fn theta_correction(state: BoundState, sys: &CoulombSystem, m: &NCMoments) -> Option<f64> {
    match state.l {
        0 => Some(delta_e_theta_ns(state.n, sys, m)),
        1 => None,
        _ => Some(delta_e_theta_high_l(state, sys, m).expect("l >= 2")),
    }
}

/// Differences of the level corrections across a transition.
pub fn transition_corrections(
    rec: &MeasurementRecord,
    atom: &AtomSpec,
    moments: &NCMoments,
    constants: &PhysicalConstants,
) -> TransitionCorrections {
    let sys = atom.coulomb_system(constants);
    let (from, to) = (rec.from_state(), rec.to_state());
    let delta_eta = delta_e_eta(from, &sys, moments) - delta_e_eta(to, &sys, moments);
    let delta_theta = match (
        theta_correction(from, &sys, moments),
        theta_correction(to, &sys, moments),
    ) {
        (Some(a), Some(b)) => Some(a - b),
        _ => None,
    };
    TransitionCorrections { delta_theta, delta_eta }
}

/// An inverted inequality: either an upper limit or no constraint at all
/// (the transition is blind to that channel).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bound {
    Limited(f64),
    Unconstrained,
}

impl Bound {
    pub fn value(&self) -> Option<f64> {
        match self {
            Bound::Limited(v) => Some(*v),
            Bound::Unconstrained => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundsResult {
    pub record: MeasurementRecord,
    pub atom: String,
    pub recipe: LengthRecipe,
    pub split_fraction: f64,
    /// hbar <theta^r> upper bound, m^2.
    pub hbar_theta_bound_m2: Bound,
    /// hbar sqrt(<(eta^r)^2>) upper bound, kg^2 m^2 / s^2.
    pub hbar_eta_bound: Bound,
}

/// Ratio <(theta^r)^2> / <theta^r>^2 fixed by the Gaussian ground state:
/// (3/2) / (4/pi) = 3 pi / 8.
const THETA_SQ_OVER_MEAN_SQ: f64 = 3.0 * std::f64::consts::PI / 8.0;

/// Inverts the measurement inequality into parameter bounds.
///
/// The theta channel is linear in <theta^r> through the ns formula and
/// linear in <(theta^r)^2> through the l >= 2 formula; with
/// <(theta^r)^2> = (3 pi/8) <theta^r>^2 the budget inequality
/// A t + B' t^2 <= E has a closed-form positive root. The eta channel is
/// linear in <(eta^r)^2> throughout.
pub fn bounds_from_record(
    rec: &MeasurementRecord,
    atom: &AtomSpec,
    constants: &PhysicalConstants,
    split_fraction: f64,
) -> Result<BoundsResult, AtomsError> {
    if !(split_fraction > 0.0 && split_fraction < 1.0) {
        return Err(AtomsError::BadSplit(split_fraction));
    }
    rec.validate(0)?;

    // Channel energy budgets from the frequency uncertainty.
    let e_total = constants.h_J_s * rec.uncertainty_mhz * 1e6;
    let e_theta = split_fraction * e_total;
    let e_eta = (1.0 - split_fraction) * e_total;

    // Unit-moment responses pick out the linear coefficients.
    let probe_mean = NCMoments { mean_theta: 1.0, ..Default::default() };
    let probe_sq = NCMoments { mean_theta_sq: 1.0, ..Default::default() };
    let probe_eta = NCMoments { mean_eta_sq_r: 1.0, ..Default::default() };

    let c_mean = transition_corrections(rec, atom, &probe_mean, constants);
    let c_sq = transition_corrections(rec, atom, &probe_sq, constants);
    let c_eta = transition_corrections(rec, atom, &probe_eta, constants);

    let (a_lin, b_quad) = match (c_mean.delta_theta, c_sq.delta_theta) {
        (Some(a), Some(b)) => (a.abs(), b.abs() * THETA_SQ_OVER_MEAN_SQ),
        _ => return Err(AtomsError::ThetaNotComputable),
    };

    // Largest t >= 0 with a_lin t + b_quad t^2 <= e_theta (conservative
    // triangle bound when both branches contribute).
    let hbar = constants.hbar_J_s;
    let theta_bound = if a_lin == 0.0 && b_quad == 0.0 {
        Bound::Unconstrained
    } else if b_quad == 0.0 {
        Bound::Limited(hbar * e_theta / a_lin)
    } else {
        let t = (-a_lin + (a_lin * a_lin + 4.0 * b_quad * e_theta).sqrt()) / (2.0 * b_quad);
        Bound::Limited(hbar * t)
    };

    let k_eta = c_eta.delta_eta.abs();
    let eta_bound = if k_eta == 0.0 {
        Bound::Unconstrained
    } else {
        Bound::Limited(hbar * (e_eta / k_eta).sqrt())
    };

    Ok(BoundsResult {
        record: rec.clone(),
        atom: atom.name.clone(),
        recipe: atom.recipe,
        split_fraction,
        hbar_theta_bound_m2: theta_bound,
        hbar_eta_bound: eta_bound,
    })
}

/// Relative sensitivities of two atoms, driven by their reduced masses.
#[derive(Clone, Copy, Debug)]
pub struct MassRatioReport {
    pub mu_a: f64,
    pub mu_b: f64,
    pub mu_ratio: f64,
    pub mu_ratio_cubed: f64,
    /// theta corrections scale as mu^3.
    pub theta_sensitivity_ratio: f64,
    /// eta corrections scale as 1/mu.
    pub eta_sensitivity_ratio: f64,
    /// Ratio of the light constituent masses (the infinite-nucleus limit
    /// of the reduced-mass ratio).
    pub light_mass_ratio: f64,
    pub light_mass_ratio_cubed: f64,
}

pub fn reduced_mass_comparison(atom_a: &AtomSpec, atom_b: &AtomSpec) -> MassRatioReport {
    let mu_a = atom_a.reduced_mass();
    let mu_b = atom_b.reduced_mass();
    let mu_ratio = mu_a / mu_b;
    let light_a = atom_a.m1.min(atom_a.m2);
    let light_b = atom_b.m1.min(atom_b.m2);
    let light_mass_ratio = light_a / light_b;
    MassRatioReport {
        mu_a,
        mu_b,
        mu_ratio,
        mu_ratio_cubed: mu_ratio.powi(3),
        theta_sensitivity_ratio: mu_ratio.powi(3),
        eta_sensitivity_ratio: 1.0 / mu_ratio,
        light_mass_ratio,
        light_mass_ratio_cubed: light_mass_ratio.powi(3),
    }
}

/// The measured antiprotonic-helium (36,34) -> (34,32) transition used by
/// the bundled bounds pipeline.
pub fn pbar_helium_record() -> MeasurementRecord {
    MeasurementRecord {
        atom: "antiprotonic_helium".into(),
        transition: Transition { from: [36, 34], to: [34, 32] },
        frequency_mhz: 1_522_107_062.0,
        uncertainty_mhz: 3.5,
        source: "two-photon laser spectroscopy of pbar-He+ (2011)".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c() -> &'static PhysicalConstants {
        PhysicalConstants::codata2018()
    }

    #[test]
    fn measurement_parsing_and_validation() {
        let text = r#"[
          {"atom": "antiprotonic_helium",
           "transition": {"from": [36, 34], "to": [34, 32]},
           "frequency_MHz": 1522107062, "uncertainty_MHz": 3.5,
           "source": "test"}
        ]"#;
        let recs = load_measurements_str(text).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].transition.from, [36, 34]);
        assert_eq!(recs[0].frequency_mhz, 1522107062.0);

        assert!(load_measurements_str("[]").unwrap().is_empty());

        let bad = r#"[
          {"atom": "x", "transition": {"from": [2, 0], "to": [1, 0]},
           "frequency_MHz": 1.0, "uncertainty_MHz": -2.0, "source": "s"}
        ]"#;
        match load_measurements_str(bad) {
            Err(AtomsError::Validation { index: 0, reason }) => {
                assert!(reason.contains("uncertainty"));
            }
            other => panic!("expected validation error, got {other:?}"),
        }

        let bad_state = r#"[
          {"atom": "x", "transition": {"from": [2, 5], "to": [1, 0]},
           "frequency_MHz": 1.0, "uncertainty_MHz": 2.0, "source": "s"}
        ]"#;
        assert!(matches!(
            load_measurements_str(bad_state),
            Err(AtomsError::Validation { index: 0, .. })
        ));
    }

    #[test]
    fn transition_corrections_basics() {
        let atom = AtomSpec::antiprotonic_helium(c());
        let rec = pbar_helium_record();
        // zero moments give zero corrections
        let z = transition_corrections(&rec, &atom, &NCMoments::default(), c());
        assert_eq!(z.delta_theta, Some(0.0));
        assert_eq!(z.delta_eta, 0.0);

        // identical from/to states give zero
        let same = MeasurementRecord {
            transition: Transition { from: [36, 34], to: [36, 34] },
            ..rec.clone()
        };
        let m = NCMoments {
            mean_theta: 1.0,
            mean_theta_sq: 1.0,
            mean_eta_sq_r: 1.0,
            mean_eta_sq_c: 0.0,
        };
        let z = transition_corrections(&same, &atom, &m, c());
        assert_eq!(z.delta_theta, Some(0.0));
        assert_eq!(z.delta_eta, 0.0);

        // definitional identity against direct level evaluation
        let sys = atom.coulomb_system(c());
        let direct = delta_e_theta_high_l(BoundState::new(36, 34).unwrap(), &sys, &m).unwrap()
            - delta_e_theta_high_l(BoundState::new(34, 32).unwrap(), &sys, &m).unwrap();
        let tc = transition_corrections(&rec, &atom, &m, c());
        assert_relative_eq!(tc.delta_theta.unwrap(), direct, max_relative = 1e-14);

        // l = 1 state blocks the theta channel
        let with_p = MeasurementRecord {
            transition: Transition { from: [3, 1], to: [2, 0] },
            ..rec
        };
        let tc = transition_corrections(&with_p, &atom, &m, c());
        assert_eq!(tc.delta_theta, None);
    }

    #[test]
    fn pbar_helium_bounds_reproduce_reported_orders() {
        let atom = AtomSpec::antiprotonic_helium(c());
        let rec = pbar_helium_record();
        let b = bounds_from_record(&rec, &atom, c(), 0.5).unwrap();
        let theta = b.hbar_theta_bound_m2.value().unwrap();
        let eta = b.hbar_eta_bound.value().unwrap();
        // order-of-magnitude anchors: 1e-27 m^2 and 1e-50 kg^2 m^2/s^2
        assert!(theta / 1e-27 > 0.1 && theta / 1e-27 < 10.0, "theta bound {theta:e}");
        assert!(eta / 1e-50 > 0.1 && eta / 1e-50 < 10.0, "eta bound {eta:e}");
    }

    #[test]
    fn bounds_scale_with_uncertainty() {
        // an ns-ns transition makes the theta channel purely linear
        let atom = AtomSpec::hydrogen(c());
        let mk = |unc: f64| MeasurementRecord {
            atom: "hydrogen".into(),
            transition: Transition { from: [2, 0], to: [1, 0] },
            frequency_mhz: 2.466e9,
            uncertainty_mhz: unc,
            source: "test".into(),
        };
        let full = bounds_from_record(&mk(2.0), &atom, c(), 0.5).unwrap();
        let half = bounds_from_record(&mk(1.0), &atom, c(), 0.5).unwrap();
        let t_ratio = half.hbar_theta_bound_m2.value().unwrap()
            / full.hbar_theta_bound_m2.value().unwrap();
        let e_ratio = half.hbar_eta_bound.value().unwrap() / full.hbar_eta_bound.value().unwrap();
        assert_relative_eq!(t_ratio, 0.5, max_relative = 1e-12);
        assert_relative_eq!(e_ratio, 0.5f64.sqrt(), max_relative = 1e-12);
        // monotone in the uncertainty
        assert!(half.hbar_theta_bound_m2.value() < full.hbar_theta_bound_m2.value());
    }

    #[test]
    fn recipe_sensitivity_is_bounded() {
        let rec = pbar_helium_record();
        let paper = AtomSpec::antiprotonic_helium(c());
        let exact = AtomSpec::antiprotonic_helium(c()).with_recipe(LengthRecipe::Exact);
        let bp = bounds_from_record(&rec, &paper, c(), 0.5).unwrap();
        let be = bounds_from_record(&rec, &exact, c(), 0.5).unwrap();
        let rt = bp.hbar_theta_bound_m2.value().unwrap() / be.hbar_theta_bound_m2.value().unwrap();
        let re = bp.hbar_eta_bound.value().unwrap() / be.hbar_eta_bound.value().unwrap();
        for r in [rt, re] {
            assert!(r > 1e-3 && r < 1e3, "recipe ratio {r}");
        }
    }

    #[test]
    fn reduced_mass_comparison_examples() {
        let h = AtomSpec::hydrogen(c());
        let muh = AtomSpec::muonic_hydrogen(c());
        let rep = reduced_mass_comparison(&muh, &h);
        // exact reduced-mass ratio is about 186
        assert!((rep.mu_ratio - 186.0).abs() < 1.0, "mu ratio {}", rep.mu_ratio);
        // the infinite-proton-mass limit reproduces the quoted 206.8
        assert_relative_eq!(
            (rep.light_mass_ratio * 10.0).round() / 10.0,
            206.8,
            max_relative = 1e-12
        );
        // and its cube, quoted to two significant figures as 8.8e6
        let cubed_2sig = (rep.light_mass_ratio_cubed / 1e5).round() * 1e5;
        assert_relative_eq!(cubed_2sig, 8.8e6, max_relative = 1e-12);

        // atom against itself: all ratios one
        let same = reduced_mass_comparison(&h, &h);
        assert_relative_eq!(same.mu_ratio, 1.0);
        assert_relative_eq!(same.theta_sensitivity_ratio, 1.0);
        assert_relative_eq!(same.eta_sensitivity_ratio, 1.0);
    }

    #[test]
    fn unit_coherence_of_bounds() {
        // Recompute with every length expressed in Bohr radii and convert
        // the bounds back to SI; nothing may move beyond rounding.
        let base = c();
        let ab = base.bohr_radius_m;
        let scaled = PhysicalConstants {
            hbar_J_s: base.hbar_J_s / (ab * ab),
            h_J_s: base.h_J_s / (ab * ab),
            c_m_s: base.c_m_s / ab,
            e_C: base.e_C,
            epsilon0_F_m: base.epsilon0_F_m * ab * ab * ab,
            bohr_radius_m: 1.0,
            planck_length_m: base.planck_length_m / ab,
            ..*base
        };
        let rec = pbar_helium_record();
        let b_si = bounds_from_record(&rec, &AtomSpec::antiprotonic_helium(base), base, 0.5)
            .unwrap();
        let b_scaled =
            bounds_from_record(&rec, &AtomSpec::antiprotonic_helium(&scaled), &scaled, 0.5)
                .unwrap();
        // hbar<theta> carries m^2; hbar sqrt<eta^2> carries kg^2 m^2 / s^2.
        assert_relative_eq!(
            b_scaled.hbar_theta_bound_m2.value().unwrap() * ab * ab,
            b_si.hbar_theta_bound_m2.value().unwrap(),
            max_relative = 1e-10
        );
        assert_relative_eq!(
            b_scaled.hbar_eta_bound.value().unwrap() * ab * ab,
            b_si.hbar_eta_bound.value().unwrap(),
            max_relative = 1e-10
        );
    }
}
