//! Noncommutative coordinates and momenta built from canonical generators,
//! plus machine verification of the full commutator algebra: per-particle
//! relations, center-of-mass and relative-motion relations with effective
//! tensors, the mass-condition branch, and infinitesimal rotational
//! covariance under the total angular momentum.
//!
//! On the representation signs: the coordinate representation is
//! X_i = x_i + (c_th l_P^2 / 2 hbar) [a~ x p]_i and the momentum one is
//! P_i = p_i + (c_et hbar / 2 l_P^2) [x x p~b]_i. The positive momentum
//! sign is forced by the target algebra: with the opposite sign the
//! momentum-momentum bracket comes out as -i*hbar*eta instead of
//! +i*hbar*eta, which the verification below would flag.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::report::Report;
use crate::weyl::{levi_civita, Generator, OperatorExpr, ScalarCoeff, Symbol, WeylError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReprError {
    #[error("unknown particle index {0}")]
    UnknownParticle(u32),
    #[error("operation requires exactly two particles, system has {got}")]
    TwoParticleOnly { got: usize },
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// One particle of the system: its mass symbol and the two dimensionless
/// noncommutativity constants (symbols, bound values, or expressions).
#[derive(Clone, Debug)]
pub struct ParticleSpec {
    pub index: u32,
    pub mass: ScalarCoeff,
    pub c_theta: ScalarCoeff,
    pub c_eta: ScalarCoeff,
}

impl ParticleSpec {
    pub fn symbolic(index: u32) -> Self {
        ParticleSpec {
            index,
            mass: ScalarCoeff::mass(index),
            c_theta: ScalarCoeff::c_theta(index),
            c_eta: ScalarCoeff::c_eta(index),
        }
    }
}

/// Which operator-valued tensor of noncommutativity.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TensorKind {
    Theta,
    Eta,
}

/// Composite-system operators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Composite {
    /// X^c, the center-of-mass coordinate.
    CenterCoord,
    /// P^c, the total momentum.
    TotalMomentum,
    /// Delta X^(n) = X^(n) - X^c.
    DeltaCoord(u32),
    /// Delta P^(n) = P^(n) - mu_n P^c.
    DeltaMomentum(u32),
    /// X^r = X^(1) - X^(2) (two particles only).
    RelativeCoord,
    /// P^r = mu_2 P^(1) - mu_1 P^(2) (two particles only).
    RelativeMomentum,
}

/// An N-particle system in rotationally invariant noncommutative phase
/// space. The auxiliary (a~, p~a) and (b~, p~b) systems are shared between
/// particles.
#[derive(Clone, Debug)]
pub struct NCSystem {
    particles: Vec<ParticleSpec>,
    mass_conditions_applied: bool,
    // Test hook: flips the momentum coupling sign without touching the
    // eta tensor, so the [P,P] checks must fail.
    corrupt_momentum_sign: bool,
}

fn ih() -> ScalarCoeff {
    ScalarCoeff::i().mul(&ScalarCoeff::hbar())
}

impl NCSystem {
    /// Fully symbolic system: masses m_n and constants c_th_n, c_et_n.
    pub fn symbolic(n_particles: u32) -> Self {
        assert!(n_particles >= 1, "at least one particle");
        NCSystem {
            particles: (1..=n_particles).map(ParticleSpec::symbolic).collect(),
            mass_conditions_applied: false,
            corrupt_momentum_sign: false,
        }
    }

    /// Symbolic system with c_th_n = gamma_t/m_n and c_et_n = alpha_t*m_n
    /// already in force.
    pub fn with_mass_conditions(n_particles: u32) -> Self {
        let mut sys = Self::symbolic(n_particles);
        for p in &mut sys.particles {
            p.c_theta = ScalarCoeff::gamma_tilde()
                .div(&ScalarCoeff::mass(p.index))
                .expect("mass symbol nonzero");
            p.c_eta = ScalarCoeff::alpha_tilde().mul(&ScalarCoeff::mass(p.index));
        }
        sys.mass_conditions_applied = true;
        sys
    }

    /// All noncommutativity constants zero: the commutative limit.
    pub fn commutative(n_particles: u32) -> Self {
        let mut sys = Self::symbolic(n_particles);
        for p in &mut sys.particles {
            p.c_theta = ScalarCoeff::zero();
            p.c_eta = ScalarCoeff::zero();
        }
        sys
    }

    pub fn custom(particles: Vec<ParticleSpec>) -> Self {
        assert!(!particles.is_empty(), "at least one particle");
        NCSystem {
            particles,
            mass_conditions_applied: false,
            corrupt_momentum_sign: false,
        }
    }

    #[cfg(test)]
    pub(crate) fn corrupted_momentum(n_particles: u32) -> Self {
        let mut sys = Self::symbolic(n_particles);
        sys.corrupt_momentum_sign = true;
        sys
    }

    pub fn n_particles(&self) -> usize {
        self.particles.len()
    }

    pub fn particles(&self) -> &[ParticleSpec] {
        &self.particles
    }

    pub fn mass_conditions_applied(&self) -> bool {
        self.mass_conditions_applied
    }

    fn particle(&self, n: u32) -> Result<&ParticleSpec, ReprError> {
        self.particles
            .iter()
            .find(|p| p.index == n)
            .ok_or(ReprError::UnknownParticle(n))
    }

    /// Sum of the particle masses.
    pub fn total_mass(&self) -> ScalarCoeff {
        self.particles
            .iter()
            .fold(ScalarCoeff::zero(), |acc, p| acc.add(&p.mass))
    }

    /// mu_n = m_n / (m_1 + ... + m_N), exact.
    pub fn mu(&self, n: u32) -> Result<ScalarCoeff, ReprError> {
        let mass = self.particle(n)?.mass.clone();
        Ok(mass.div(&self.total_mass())?)
    }

    /// Reduced mass m_1 m_2 / (m_1 + m_2) for two-particle systems.
    pub fn reduced_mass(&self) -> Result<ScalarCoeff, ReprError> {
        if self.particles.len() != 2 {
            return Err(ReprError::TwoParticleOnly { got: self.particles.len() });
        }
        let prod = self.particles[0].mass.mul(&self.particles[1].mass);
        Ok(prod.div(&self.total_mass())?)
    }

    /// X_i^(n) = x_i^(n) + (c_th_n l_P^2 / 2 hbar) [a~ x p^(n)]_i
    pub fn nc_coordinate(&self, n: u32, axis: u8) -> Result<OperatorExpr, ReprError> {
        let spec = self.particle(n)?;
        let coupling = spec
            .c_theta
            .mul(&ScalarCoeff::planck_length().pow(2))
            .mul(&ScalarCoeff::rational(1, 2))
            .div(&ScalarCoeff::hbar())?;
        let mut out = OperatorExpr::generator(Generator::coord(n, axis));
        for j in 1..=3u8 {
            for k in 1..=3u8 {
                let eps = levi_civita(axis, j, k);
                if eps == 0 {
                    continue;
                }
                let c = coupling.mul(&ScalarCoeff::integer(eps));
                out = out.add(&OperatorExpr::term(
                    c,
                    &[Generator::aux_a_coord(j), Generator::momentum(n, k)],
                ));
            }
        }
        Ok(out)
    }

    /// P_i^(n) = p_i^(n) + (c_et_n hbar / 2 l_P^2) [x^(n) x p~b]_i
    pub fn nc_momentum(&self, n: u32, axis: u8) -> Result<OperatorExpr, ReprError> {
        let spec = self.particle(n)?;
        let sign = if self.corrupt_momentum_sign { -1 } else { 1 };
        let coupling = spec
            .c_eta
            .mul(&ScalarCoeff::hbar())
            .mul(&ScalarCoeff::rational(sign, 2))
            .div(&ScalarCoeff::planck_length().pow(2))?;
        let mut out = OperatorExpr::generator(Generator::momentum(n, axis));
        for j in 1..=3u8 {
            for k in 1..=3u8 {
                let eps = levi_civita(axis, j, k);
                if eps == 0 {
                    continue;
                }
                let c = coupling.mul(&ScalarCoeff::integer(eps));
                out = out.add(&OperatorExpr::term(
                    c,
                    &[Generator::coord(n, j), Generator::aux_b_momentum(k)],
                ));
            }
        }
        Ok(out)
    }

    /// theta_ij^(n) = (c_th_n l_P^2/hbar) sum_k eps_ijk a~_k, or the eta
    /// analog (c_et_n hbar/l_P^2) sum_k eps_ijk p~b_k. Antisymmetric in
    /// (i, j); zero on the diagonal.
    pub fn tensor_component(
        &self,
        kind: TensorKind,
        n: u32,
        i: u8,
        j: u8,
    ) -> Result<OperatorExpr, ReprError> {
        let spec = self.particle(n)?;
        let scale = match kind {
            TensorKind::Theta => spec
                .c_theta
                .mul(&ScalarCoeff::planck_length().pow(2))
                .div(&ScalarCoeff::hbar())?,
            TensorKind::Eta => spec
                .c_eta
                .mul(&ScalarCoeff::hbar())
                .div(&ScalarCoeff::planck_length().pow(2))?,
        };
        let mut out = OperatorExpr::zero();
        for k in 1..=3u8 {
            let eps = levi_civita(i, j, k);
            if eps == 0 {
                continue;
            }
            let gen = match kind {
                TensorKind::Theta => Generator::aux_a_coord(k),
                TensorKind::Eta => Generator::aux_b_momentum(k),
            };
            out = out.add(&OperatorExpr::generator(gen).scale(&scale.mul(&ScalarCoeff::integer(eps))));
        }
        Ok(out)
    }

    /// Center-of-mass, relative, and per-particle relative operators.
    pub fn composite_operator(&self, kind: Composite, axis: u8) -> Result<OperatorExpr, ReprError> {
        match kind {
            Composite::CenterCoord => {
                let mut out = OperatorExpr::zero();
                for p in &self.particles {
                    let mu = self.mu(p.index)?;
                    out = out.add(&self.nc_coordinate(p.index, axis)?.scale(&mu));
                }
                Ok(out)
            }
            Composite::TotalMomentum => {
                let mut out = OperatorExpr::zero();
                for p in &self.particles {
                    out = out.add(&self.nc_momentum(p.index, axis)?);
                }
                Ok(out)
            }
            Composite::DeltaCoord(n) => {
                let x_n = self.nc_coordinate(n, axis)?;
                let xc = self.composite_operator(Composite::CenterCoord, axis)?;
                Ok(x_n.sub(&xc))
            }
            Composite::DeltaMomentum(n) => {
                let p_n = self.nc_momentum(n, axis)?;
                let pc = self.composite_operator(Composite::TotalMomentum, axis)?;
                Ok(p_n.sub(&pc.scale(&self.mu(n)?)))
            }
            Composite::RelativeCoord => {
                if self.particles.len() != 2 {
                    return Err(ReprError::TwoParticleOnly { got: self.particles.len() });
                }
                let a = self.particles[0].index;
                let b = self.particles[1].index;
                Ok(self.nc_coordinate(a, axis)?.sub(&self.nc_coordinate(b, axis)?))
            }
            Composite::RelativeMomentum => {
                if self.particles.len() != 2 {
                    return Err(ReprError::TwoParticleOnly { got: self.particles.len() });
                }
                let a = self.particles[0].index;
                let b = self.particles[1].index;
                let pa = self.nc_momentum(a, axis)?.scale(&self.mu(b)?);
                let pb = self.nc_momentum(b, axis)?.scale(&self.mu(a)?);
                Ok(pa.sub(&pb))
            }
        }
    }

    /// L^t_i = sum_n [x^(n) x p^(n)]_i + hbar [a~ x p~a]_i + hbar [b~ x p~b]_i
    pub fn total_angular_momentum(&self, axis: u8) -> OperatorExpr {
        let mut out = OperatorExpr::zero();
        for j in 1..=3u8 {
            for k in 1..=3u8 {
                let eps = levi_civita(axis, j, k);
                if eps == 0 {
                    continue;
                }
                let e = ScalarCoeff::integer(eps);
                for p in &self.particles {
                    out = out.add(&OperatorExpr::term(
                        e.clone(),
                        &[Generator::coord(p.index, j), Generator::momentum(p.index, k)],
                    ));
                }
                let eh = e.mul(&ScalarCoeff::hbar());
                out = out.add(&OperatorExpr::term(
                    eh.clone(),
                    &[Generator::aux_a_coord(j), Generator::aux_a_momentum(k)],
                ));
                out = out.add(&OperatorExpr::term(
                    eh,
                    &[Generator::aux_b_coord(j), Generator::aux_b_momentum(k)],
                ));
            }
        }
        out
    }

    /// Bindings imposing the mass conditions on symbolic constants.
    pub fn mass_condition_bindings(&self) -> BTreeMap<Symbol, ScalarCoeff> {
        let mut b = BTreeMap::new();
        for p in &self.particles {
            b.insert(
                Symbol::CTheta(p.index),
                ScalarCoeff::gamma_tilde()
                    .div(&ScalarCoeff::mass(p.index))
                    .expect("mass symbol nonzero"),
            );
            b.insert(
                Symbol::CEta(p.index),
                ScalarCoeff::alpha_tilde().mul(&ScalarCoeff::mass(p.index)),
            );
        }
        b
    }

    /// sum_k theta_ik^(n) eta_jk^(m) / 4 as an operator expression.
    fn theta_eta_quarter(&self, n: u32, m: u32, i: u8, j: u8) -> Result<OperatorExpr, ReprError> {
        let mut out = OperatorExpr::zero();
        for k in 1..=3u8 {
            let th = self.tensor_component(TensorKind::Theta, n, i, k)?;
            let et = self.tensor_component(TensorKind::Eta, m, j, k)?;
            out = out.add(&th.multiply(&et)?);
        }
        Ok(out.scale(&ScalarCoeff::rational(1, 4)))
    }

    /// Verifies the per-particle algebra: the three bracket families, the
    /// tensors commuting with positions and momenta, and the Jacobi
    /// identity over all (X, P) triples.
    pub fn verify_particle_algebra(&self) -> Report {
        let mut rep = Report::new("particle-algebra");
        let indices: Vec<u32> = self.particles.iter().map(|p| p.index).collect();

        for &n in &indices {
            for &m in &indices {
                for i in 1..=3u8 {
                    for j in 1..=3u8 {
                        let xn = self.op_x(n, i);
                        let xm = self.op_x(m, j);
                        let pn = self.op_p(n, i);
                        let pm = self.op_p(m, j);

                        // [X_i^(n), X_j^(m)] = i hbar delta_nm theta_ij^(n)
                        if i < j || n != m {
                            let lhs = comm(&xn, &xm);
                            let rhs = if n == m {
                                self.tensor(TensorKind::Theta, n, i, j).scale(&ih())
                            } else {
                                OperatorExpr::zero()
                            };
                            rep.check_equal(&format!("xx_n{n}m{m}_i{i}j{j}"), &lhs, &rhs);
                        }

                        // [X_i^(n), P_j^(m)] = i hbar delta_nm (delta_ij + 1/4 sum_k theta_ik eta_jk)
                        let lhs = comm(&xn, &pm);
                        let rhs = if n == m {
                            let mut r = self
                                .theta_eta_quarter(n, m, i, j)
                                .expect("indices valid");
                            if i == j {
                                r = r.add(&OperatorExpr::one());
                            }
                            r.scale(&ih())
                        } else {
                            OperatorExpr::zero()
                        };
                        rep.check_equal(&format!("xp_n{n}m{m}_i{i}j{j}"), &lhs, &rhs);

                        // [P_i^(n), P_j^(m)] = i hbar delta_nm eta_ij^(n)
                        if i < j || n != m {
                            let lhs = comm(&pn, &pm);
                            let rhs = if n == m {
                                self.tensor(TensorKind::Eta, n, i, j).scale(&ih())
                            } else {
                                OperatorExpr::zero()
                            };
                            rep.check_equal(&format!("pp_n{n}m{m}_i{i}j{j}"), &lhs, &rhs);
                        }
                    }
                }
            }
        }

        // Tensors commute with every coordinate and momentum.
        for &n in &indices {
            for (kind, tag) in [(TensorKind::Theta, "theta"), (TensorKind::Eta, "eta")] {
                for (i, j) in [(1u8, 2u8), (1, 3), (2, 3)] {
                    let t = self.tensor(kind, n, i, j);
                    for &m in &indices {
                        for k in 1..=3u8 {
                            let x = self.op_x(m, k);
                            let p = self.op_p(m, k);
                            rep.check_zero(
                                &format!("tensorcomm_{tag}{n}_ij{i}{j}_x{m}_{k}"),
                                &comm(&t, &x),
                            );
                            rep.check_zero(
                                &format!("tensorcomm_{tag}{n}_ij{i}{j}_p{m}_{k}"),
                                &comm(&t, &p),
                            );
                        }
                    }
                }
            }
        }

        self.jacobi_checks(&mut rep);
        rep
    }

    fn op_x(&self, n: u32, i: u8) -> OperatorExpr {
        self.nc_coordinate(n, i).expect("index valid")
    }

    fn op_p(&self, n: u32, i: u8) -> OperatorExpr {
        self.nc_momentum(n, i).expect("index valid")
    }

    fn tensor(&self, kind: TensorKind, n: u32, i: u8, j: u8) -> OperatorExpr {
        self.tensor_component(kind, n, i, j).expect("index valid")
    }

    /// Jacobi identity over all unordered triples drawn (with repetition)
    /// from the noncommutative coordinates and momenta.
    fn jacobi_checks(&self, rep: &mut Report) {
        let mut ops: Vec<(String, OperatorExpr)> = Vec::new();
        for p in &self.particles {
            for i in 1..=3u8 {
                ops.push((format!("X{}_{}", p.index, i), self.op_x(p.index, i)));
                ops.push((format!("P{}_{}", p.index, i), self.op_p(p.index, i)));
            }
        }
        let k = ops.len();
        // Pairwise commutators, computed once.
        let mut pair = vec![vec![OperatorExpr::zero(); k]; k];
        for a in 0..k {
            for b in (a + 1)..k {
                let c = comm(&ops[a].1, &ops[b].1);
                pair[b][a] = c.neg();
                pair[a][b] = c;
            }
        }
        for a in 0..k {
            for b in a..k {
                for c in b..k {
                    // [[A,B],C] + [[B,C],A] + [[C,A],B]
                    let t1 = comm(&pair[a][b], &ops[c].1);
                    let t2 = comm(&pair[b][c], &ops[a].1);
                    let t3 = comm(&pair[c][a], &ops[b].1);
                    let total = t1.add(&t2).add(&t3);
                    rep.check_zero(
                        &format!("jacobi_{}_{}_{}", ops[a].0, ops[b].0, ops[c].0),
                        &total,
                    );
                }
            }
        }
    }

    /// Verifies the center-of-mass and relative-motion algebra.
    ///
    /// The generic branch checks the bracket decompositions for arbitrary
    /// per-particle tensors and exhibits the effective-tensor mismatch as a
    /// nonzero witness. The conditioned branch imposes the mass conditions
    /// through scalar substitution and checks that the mismatch closes, the
    /// cross brackets vanish, and the composite operators take the
    /// effective-tensor representation form.
    pub fn verify_com_algebra(&self) -> Report {
        let mut rep = Report::new("com-algebra");
        if !self.mass_conditions_applied {
            self.com_generic_branch(&mut rep);
        }
        let substitutable = self.mass_conditions_applied
            || self.particles.iter().all(|p| {
                p.c_theta == ScalarCoeff::c_theta(p.index) && p.c_eta == ScalarCoeff::c_eta(p.index)
            });
        if substitutable {
            self.com_conditioned_branch(&mut rep);
        } else {
            rep.info(
                "conditioned_branch_skipped",
                "constants are not the pristine symbols; mass-condition substitution not applicable",
            );
        }
        rep
    }

    fn com_generic_branch(&self, rep: &mut Report) {
        let indices: Vec<u32> = self.particles.iter().map(|p| p.index).collect();
        let nn = indices.len();
        let xc: Vec<OperatorExpr> = (1..=3u8)
            .map(|i| self.composite_operator(Composite::CenterCoord, i).unwrap())
            .collect();
        let pc: Vec<OperatorExpr> = (1..=3u8)
            .map(|i| self.composite_operator(Composite::TotalMomentum, i).unwrap())
            .collect();

        let mu = |n: u32| self.mu(n).expect("index valid");

        // Effective tensors: theta^c = sum mu_n^2 theta^(n), eta^c = sum eta^(n).
        let theta_c = |i: u8, j: u8| {
            let mut out = OperatorExpr::zero();
            for &n in &indices {
                out = out.add(&self.tensor(TensorKind::Theta, n, i, j).scale(&mu(n).pow(2)));
            }
            out
        };
        let eta_c = |i: u8, j: u8| {
            let mut out = OperatorExpr::zero();
            for &n in &indices {
                out = out.add(&self.tensor(TensorKind::Eta, n, i, j));
            }
            out
        };

        for i in 1..=3u8 {
            for j in 1..=3u8 {
                if i < j {
                    // [X^c_i, X^c_j] = i hbar sum_n mu_n^2 theta_ij^(n)
                    rep.check_equal(
                        &format!("com_xcxc_i{i}j{j}"),
                        &comm(&xc[i as usize - 1], &xc[j as usize - 1]),
                        &theta_c(i, j).scale(&ih()),
                    );
                    // [P^c_i, P^c_j] = i hbar sum_n eta_ij^(n)
                    rep.check_equal(
                        &format!("com_pcpc_i{i}j{j}"),
                        &comm(&pc[i as usize - 1], &pc[j as usize - 1]),
                        &eta_c(i, j).scale(&ih()),
                    );
                }
                // [X^c_i, P^c_j] = i hbar (delta_ij + sum_n mu_n T^(nn)_ij)
                let mut rhs = OperatorExpr::zero();
                for &n in &indices {
                    rhs = rhs.add(
                        &self
                            .theta_eta_quarter(n, n, i, j)
                            .expect("index valid")
                            .scale(&mu(n)),
                    );
                }
                if i == j {
                    rhs = rhs.add(&OperatorExpr::one());
                }
                rep.check_equal(
                    &format!("com_xcpc_i{i}j{j}"),
                    &comm(&xc[i as usize - 1], &pc[j as usize - 1]),
                    &rhs.scale(&ih()),
                );
            }
        }

        // Relative-motion brackets, decomposed over per-particle tensors.
        for &n in &indices {
            for &m in &indices {
                for i in 1..=3u8 {
                    for j in 1..=3u8 {
                        let dxn = self.composite_operator(Composite::DeltaCoord(n), i).unwrap();
                        let dxm = self.composite_operator(Composite::DeltaCoord(m), j).unwrap();
                        let dpn = self.composite_operator(Composite::DeltaMomentum(n), i).unwrap();
                        let dpm = self.composite_operator(Composite::DeltaMomentum(m), j).unwrap();

                        if i < j || n != m {
                            // [dX_i^(n), dX_j^(m)]
                            let mut rhs = OperatorExpr::zero();
                            if n == m {
                                rhs = rhs.add(&self.tensor(TensorKind::Theta, n, i, j));
                            }
                            rhs = rhs.sub(&self.tensor(TensorKind::Theta, n, i, j).scale(&mu(n)));
                            rhs = rhs.sub(&self.tensor(TensorKind::Theta, m, i, j).scale(&mu(m)));
                            for &l in &indices {
                                rhs = rhs.add(
                                    &self.tensor(TensorKind::Theta, l, i, j).scale(&mu(l).pow(2)),
                                );
                            }
                            rep.check_equal(
                                &format!("com_dxdx_n{n}m{m}_i{i}j{j}"),
                                &comm(&dxn, &dxm),
                                &rhs.scale(&ih()),
                            );

                            // [dP_i^(n), dP_j^(m)]
                            let mut rhs = OperatorExpr::zero();
                            if n == m {
                                rhs = rhs.add(&self.tensor(TensorKind::Eta, n, i, j));
                            }
                            rhs = rhs.sub(&self.tensor(TensorKind::Eta, n, i, j).scale(&mu(m)));
                            rhs = rhs.sub(&self.tensor(TensorKind::Eta, m, i, j).scale(&mu(n)));
                            for &l in &indices {
                                rhs = rhs.add(
                                    &self
                                        .tensor(TensorKind::Eta, l, i, j)
                                        .scale(&mu(n).mul(&mu(m))),
                                );
                            }
                            rep.check_equal(
                                &format!("com_dpdp_n{n}m{m}_i{i}j{j}"),
                                &comm(&dpn, &dpm),
                                &rhs.scale(&ih()),
                            );
                        }

                        // [dX_i^(n), dP_j^(m)] against the definitional expansion.
                        let mut rhs = OperatorExpr::zero();
                        if n == m {
                            rhs = rhs.add(&self.theta_eta_quarter(n, m, i, j).unwrap());
                            if i == j {
                                rhs = rhs.add(&OperatorExpr::one());
                            }
                        }
                        let mut sub = OperatorExpr::zero();
                        if i == j {
                            sub = sub.add(&OperatorExpr::one());
                        }
                        sub = sub.add(&self.theta_eta_quarter(n, n, i, j).unwrap());
                        sub = sub.add(&self.theta_eta_quarter(m, m, i, j).unwrap());
                        let mut weighted = OperatorExpr::zero();
                        for &l in &indices {
                            weighted = weighted
                                .add(&self.theta_eta_quarter(l, l, i, j).unwrap().scale(&mu(l)));
                        }
                        let rhs = rhs
                            .sub(&sub.scale(&mu(m)))
                            .add(&weighted.scale(&mu(m)))
                            .scale(&ih());
                        rep.check_equal(
                            &format!("com_dxdp_n{n}m{m}_i{i}j{j}"),
                            &comm(&dxn, &dpm),
                            &rhs,
                        );
                    }
                }
            }
        }

        // Residual of the bracket against the mixed bracket as printed
        // (which drops the mu_m weights on the tensor sums). Reported for
        // traceability; it vanishes only in the single-particle case.
        if nn >= 2 {
            let n = indices[0];
            let m = indices[1];
            let (i, j) = (1u8, 2u8);
            let dxn = self.composite_operator(Composite::DeltaCoord(n), i).unwrap();
            let dpm = self.composite_operator(Composite::DeltaMomentum(m), j).unwrap();
            let lhs = comm(&dxn, &dpm);
            let mut printed = OperatorExpr::zero();
            // delta_nm terms drop for n != m; i != j drops the delta_ij ones.
            printed = printed.sub(&self.theta_eta_quarter(n, n, i, j).unwrap());
            printed = printed.sub(&self.theta_eta_quarter(m, m, i, j).unwrap());
            for &l in &indices {
                printed =
                    printed.add(&self.theta_eta_quarter(l, l, i, j).unwrap().scale(&mu(l)));
            }
            let residual = lhs.sub(&printed.scale(&ih()));
            rep.info(
                &format!("com_dxdp_printed_form_residual_n{n}m{m}_i{i}j{j}"),
                &residual.to_text(),
            );
        }

        // Cross brackets are nonzero for generic constants.
        if nn >= 2 {
            let n = indices[0];
            let dx = self.composite_operator(Composite::DeltaCoord(n), 2).unwrap();
            rep.check_nonzero(
                "com_cross_xc_dx_nonzero_generic",
                &comm(&xc[0], &dx),
            );
            let dp = self.composite_operator(Composite::DeltaMomentum(n), 2).unwrap();
            rep.check_nonzero(
                "com_cross_pc_dp_nonzero_generic",
                &comm(&pc[0], &dp),
            );
        }

        // Cross-bracket decompositions hold exactly.
        for &n in &indices {
            for (i, j) in [(1u8, 2u8), (1, 3), (2, 3)] {
                let dx = self.composite_operator(Composite::DeltaCoord(n), j).unwrap();
                let mut rhs = self.tensor(TensorKind::Theta, n, i, j).scale(&mu(n));
                for &m in &indices {
                    rhs = rhs.sub(&self.tensor(TensorKind::Theta, m, i, j).scale(&mu(m).pow(2)));
                }
                rep.check_equal(
                    &format!("com_xc_dx_n{n}_i{i}j{j}"),
                    &comm(&xc[i as usize - 1], &dx),
                    &rhs.scale(&ih()),
                );

                let dp = self.composite_operator(Composite::DeltaMomentum(n), j).unwrap();
                let mut rhs = self.tensor(TensorKind::Eta, n, i, j);
                for &m in &indices {
                    rhs = rhs.sub(&self.tensor(TensorKind::Eta, m, i, j).scale(&mu(n)));
                }
                rep.check_equal(
                    &format!("com_pc_dp_n{n}_i{i}j{j}"),
                    &comm(&pc[i as usize - 1], &dp),
                    &rhs.scale(&ih()),
                );
            }
        }

        // The effective-tensor mismatch witness: nonzero generically,
        // identically zero for a single particle.
        let (i, j) = (1u8, 1u8);
        let mut eff = OperatorExpr::zero();
        for k in 1..=3u8 {
            eff = eff.add(&theta_c(i, k).multiply(&eta_c(j, k)).unwrap());
        }
        let eff = eff.scale(&ScalarCoeff::rational(1, 4));
        let mut direct = OperatorExpr::zero();
        for &n in &indices {
            direct = direct.add(&self.theta_eta_quarter(n, n, i, j).unwrap().scale(&mu(n)));
        }
        let witness = direct.sub(&eff);
        if nn == 1 {
            rep.check_zero("com_effective_mismatch_single_particle", &witness);
        } else {
            rep.check_nonzero("com_effective_mismatch_nonzero_generic", &witness);
        }
    }

    fn com_conditioned_branch(&self, rep: &mut Report) {
        let bindings = if self.mass_conditions_applied {
            BTreeMap::new()
        } else {
            self.mass_condition_bindings()
        };
        let cond = |e: &OperatorExpr| e.substitute_scalars(&bindings).expect("bindings valid");
        let indices: Vec<u32> = self.particles.iter().map(|p| p.index).collect();
        let total_mass = self.total_mass();

        // Effective tensors in their mass-condition form: gamma_t and
        // alpha_t with the total mass.
        let theta_eff = |i: u8, j: u8, inv_mass: &ScalarCoeff| {
            let scale = ScalarCoeff::gamma_tilde()
                .mul(&ScalarCoeff::planck_length().pow(2))
                .div(&ScalarCoeff::hbar())
                .unwrap()
                .mul(inv_mass);
            let mut out = OperatorExpr::zero();
            for k in 1..=3u8 {
                let eps = levi_civita(i, j, k);
                if eps == 0 {
                    continue;
                }
                out = out.add(
                    &OperatorExpr::generator(Generator::aux_a_coord(k))
                        .scale(&scale.mul(&ScalarCoeff::integer(eps))),
                );
            }
            out
        };
        let eta_eff = |i: u8, j: u8, mass: &ScalarCoeff| {
            let scale = ScalarCoeff::alpha_tilde()
                .mul(&ScalarCoeff::hbar())
                .div(&ScalarCoeff::planck_length().pow(2))
                .unwrap()
                .mul(mass);
            let mut out = OperatorExpr::zero();
            for k in 1..=3u8 {
                let eps = levi_civita(i, j, k);
                if eps == 0 {
                    continue;
                }
                out = out.add(
                    &OperatorExpr::generator(Generator::aux_b_momentum(k))
                        .scale(&scale.mul(&ScalarCoeff::integer(eps))),
                );
            }
            out
        };

        let inv_total = ScalarCoeff::one().div(&total_mass).unwrap();
        let xc: Vec<OperatorExpr> = (1..=3u8)
            .map(|i| cond(&self.composite_operator(Composite::CenterCoord, i).unwrap()))
            .collect();
        let pc: Vec<OperatorExpr> = (1..=3u8)
            .map(|i| cond(&self.composite_operator(Composite::TotalMomentum, i).unwrap()))
            .collect();

        // Cross brackets vanish under the conditions.
        for &n in &indices {
            for (i, j) in [(1u8, 2u8), (1, 3), (2, 3)] {
                let dx = self.composite_operator(Composite::DeltaCoord(n), j).unwrap();
                rep.check_zero(
                    &format!("cond_xc_dx_zero_n{n}_i{i}j{j}"),
                    &cond(&comm(
                        &self.composite_operator(Composite::CenterCoord, i).unwrap(),
                        &dx,
                    )),
                );
                let dp = self.composite_operator(Composite::DeltaMomentum(n), j).unwrap();
                rep.check_zero(
                    &format!("cond_pc_dp_zero_n{n}_i{i}j{j}"),
                    &cond(&comm(
                        &self.composite_operator(Composite::TotalMomentum, i).unwrap(),
                        &dp,
                    )),
                );
            }
        }

        // Center-of-mass algebra with effective tensors.
        for i in 1..=3u8 {
            for j in 1..=3u8 {
                if i < j {
                    rep.check_equal(
                        &format!("cond_xcxc_eff_i{i}j{j}"),
                        &comm(&xc[i as usize - 1], &xc[j as usize - 1]),
                        &theta_eff(i, j, &inv_total).scale(&ih()),
                    );
                    rep.check_equal(
                        &format!("cond_pcpc_eff_i{i}j{j}"),
                        &comm(&pc[i as usize - 1], &pc[j as usize - 1]),
                        &eta_eff(i, j, &total_mass).scale(&ih()),
                    );
                }
                // [X^c_i, P^c_j] = i hbar (delta_ij + 1/4 sum_k theta^c_ik eta^c_jk)
                let mut rhs = OperatorExpr::zero();
                for k in 1..=3u8 {
                    rhs = rhs.add(
                        &theta_eff(i, k, &inv_total)
                            .multiply(&eta_eff(j, k, &total_mass))
                            .unwrap(),
                    );
                }
                let mut rhs = rhs.scale(&ScalarCoeff::rational(1, 4));
                if i == j {
                    rhs = rhs.add(&OperatorExpr::one());
                }
                rep.check_equal(
                    &format!("cond_xcpc_eff_i{i}j{j}"),
                    &comm(&xc[i as usize - 1], &pc[j as usize - 1]),
                    &rhs.scale(&ih()),
                );
            }
        }

        // The effective-tensor mismatch closes exactly.
        {
            let (i, j) = (1u8, 1u8);
            let mut eff = OperatorExpr::zero();
            for k in 1..=3u8 {
                let tc = {
                    let mut out = OperatorExpr::zero();
                    for &n in &indices {
                        out = out.add(
                            &self
                                .tensor(TensorKind::Theta, n, i, k)
                                .scale(&self.mu(n).unwrap().pow(2)),
                        );
                    }
                    out
                };
                let ec = {
                    let mut out = OperatorExpr::zero();
                    for &n in &indices {
                        out = out.add(&self.tensor(TensorKind::Eta, n, j, k));
                    }
                    out
                };
                eff = eff.add(&tc.multiply(&ec).unwrap());
            }
            let eff = eff.scale(&ScalarCoeff::rational(1, 4));
            let mut direct = OperatorExpr::zero();
            for &n in &indices {
                direct = direct.add(
                    &self
                        .theta_eta_quarter(n, n, i, j)
                        .unwrap()
                        .scale(&self.mu(n).unwrap()),
                );
            }
            rep.check_zero(
                "cond_effective_mismatch_closes",
                &cond(&direct.sub(&eff)),
            );
        }

        // Two-particle relative motion and the representation forms.
        if indices.len() == 2 {
            let reduced = self.reduced_mass().unwrap();
            let inv_reduced = ScalarCoeff::one().div(&reduced).unwrap();
            let xr: Vec<OperatorExpr> = (1..=3u8)
                .map(|i| cond(&self.composite_operator(Composite::RelativeCoord, i).unwrap()))
                .collect();
            let pr: Vec<OperatorExpr> = (1..=3u8)
                .map(|i| cond(&self.composite_operator(Composite::RelativeMomentum, i).unwrap()))
                .collect();
            let (n1, n2) = (indices[0], indices[1]);

            for (i, j) in [(1u8, 2u8), (1, 3), (2, 3)] {
                // theta^r = theta^(1) + theta^(2), also gamma_t l_P^2/(mu hbar).
                let theta_r_sum = cond(
                    &self
                        .tensor(TensorKind::Theta, n1, i, j)
                        .add(&self.tensor(TensorKind::Theta, n2, i, j)),
                );
                rep.check_equal(
                    &format!("cond_theta_r_form_i{i}j{j}"),
                    &theta_r_sum,
                    &theta_eff(i, j, &inv_reduced),
                );
                rep.check_equal(
                    &format!("cond_xrxr_i{i}j{j}"),
                    &comm(&xr[i as usize - 1], &xr[j as usize - 1]),
                    &theta_r_sum.scale(&ih()),
                );

                // eta^r = mu_2^2 eta^(1) + mu_1^2 eta^(2), also alpha_t mu hbar/l_P^2.
                let eta_r_sum = cond(
                    &self
                        .tensor(TensorKind::Eta, n1, i, j)
                        .scale(&self.mu(n2).unwrap().pow(2))
                        .add(
                            &self
                                .tensor(TensorKind::Eta, n2, i, j)
                                .scale(&self.mu(n1).unwrap().pow(2)),
                        ),
                );
                rep.check_equal(
                    &format!("cond_eta_r_form_i{i}j{j}"),
                    &eta_r_sum,
                    &eta_eff(i, j, &reduced),
                );
                rep.check_equal(
                    &format!("cond_prpr_i{i}j{j}"),
                    &comm(&pr[i as usize - 1], &pr[j as usize - 1]),
                    &eta_r_sum.scale(&ih()),
                );
            }

            // [X^r_i, P^r_j] with the relative effective tensors.
            for i in 1..=3u8 {
                for j in 1..=3u8 {
                    let mut rhs = OperatorExpr::zero();
                    for k in 1..=3u8 {
                        rhs = rhs.add(
                            &theta_eff(i, k, &inv_reduced)
                                .multiply(&eta_eff(j, k, &reduced))
                                .unwrap(),
                        );
                    }
                    let mut rhs = rhs.scale(&ScalarCoeff::rational(1, 4));
                    if i == j {
                        rhs = rhs.add(&OperatorExpr::one());
                    }
                    rep.check_equal(
                        &format!("cond_xrpr_i{i}j{j}"),
                        &comm(&xr[i as usize - 1], &pr[j as usize - 1]),
                        &rhs.scale(&ih()),
                    );
                }
            }

            // Representation forms over canonical COM/relative variables.
            let canon_xc = |i: u8| {
                let mut out = OperatorExpr::zero();
                for &n in &indices {
                    out = out.add(
                        &OperatorExpr::generator(Generator::coord(n, i))
                            .scale(&self.mu(n).unwrap()),
                    );
                }
                out
            };
            let canon_pc = |i: u8| {
                let mut out = OperatorExpr::zero();
                for &n in &indices {
                    out = out.add(&OperatorExpr::generator(Generator::momentum(n, i)));
                }
                out
            };
            let canon_xr = |i: u8| {
                OperatorExpr::generator(Generator::coord(n1, i))
                    .sub(&OperatorExpr::generator(Generator::coord(n2, i)))
            };
            let canon_pr = |i: u8| {
                OperatorExpr::generator(Generator::momentum(n1, i))
                    .scale(&self.mu(n2).unwrap())
                    .sub(
                        &OperatorExpr::generator(Generator::momentum(n2, i))
                            .scale(&self.mu(n1).unwrap()),
                    )
            };
            // Vector duals of the effective tensors.
            let theta_vec = |l: u8, inv_mass: &ScalarCoeff| {
                OperatorExpr::generator(Generator::aux_a_coord(l)).scale(
                    &ScalarCoeff::gamma_tilde()
                        .mul(&ScalarCoeff::planck_length().pow(2))
                        .div(&ScalarCoeff::hbar())
                        .unwrap()
                        .mul(inv_mass),
                )
            };
            let eta_vec = |l: u8, mass: &ScalarCoeff| {
                OperatorExpr::generator(Generator::aux_b_momentum(l)).scale(
                    &ScalarCoeff::alpha_tilde()
                        .mul(&ScalarCoeff::hbar())
                        .div(&ScalarCoeff::planck_length().pow(2))
                        .unwrap()
                        .mul(mass),
                )
            };
            let cross_half =
                |va: &dyn Fn(u8) -> OperatorExpr, vb: &dyn Fn(u8) -> OperatorExpr, i: u8| {
                    let mut out = OperatorExpr::zero();
                    for j in 1..=3u8 {
                        for k in 1..=3u8 {
                            let eps = levi_civita(i, j, k);
                            if eps == 0 {
                                continue;
                            }
                            out = out.add(
                                &va(j)
                                    .multiply(&vb(k))
                                    .unwrap()
                                    .scale(&ScalarCoeff::rational(eps, 2)),
                            );
                        }
                    }
                    out
                };

            for i in 1..=3u8 {
                let rhs = canon_xc(i).add(&cross_half(&|l| theta_vec(l, &inv_total), &canon_pc, i));
                rep.check_equal(&format!("cond_rep_xc_i{i}"), &xc[i as usize - 1], &rhs);

                let rhs = canon_pc(i).sub(&cross_half(&|l| eta_vec(l, &total_mass), &canon_xc, i));
                rep.check_equal(&format!("cond_rep_pc_i{i}"), &pc[i as usize - 1], &rhs);

                let rhs = canon_xr(i).add(&cross_half(&|l| theta_vec(l, &inv_reduced), &canon_pr, i));
                rep.check_equal(&format!("cond_rep_xr_i{i}"), &xr[i as usize - 1], &rhs);

                let rhs = canon_pr(i).sub(&cross_half(&|l| eta_vec(l, &reduced), &canon_xr, i));
                rep.check_equal(&format!("cond_rep_pr_i{i}"), &pr[i as usize - 1], &rhs);
            }
        }
    }

    /// Infinitesimal rotational covariance: every vector family transforms
    /// as [L^t_i, O_j] = i hbar eps_ijk O_k.
    pub fn verify_rotational_covariance(&self) -> Report {
        let mut rep = Report::new("rotational-covariance");
        let lt: Vec<OperatorExpr> = (1..=3u8).map(|i| self.total_angular_momentum(i)).collect();

        // The total angular momentum closes on itself.
        for (i, j, k) in [(1u8, 2u8, 3u8), (2, 3, 1), (3, 1, 2)] {
            rep.check_equal(
                &format!("rot_lt_algebra_i{i}j{j}"),
                &comm(&lt[i as usize - 1], &lt[j as usize - 1]),
                &lt[k as usize - 1].scale(&ih()),
            );
        }

        let mut families: Vec<(String, Box<dyn Fn(u8) -> OperatorExpr + '_>)> = Vec::new();
        for p in &self.particles {
            let n = p.index;
            families.push((format!("X{n}"), Box::new(move |i| self.op_x(n, i))));
            families.push((format!("P{n}"), Box::new(move |i| self.op_p(n, i))));
            families.push((
                format!("x{n}"),
                Box::new(move |i| OperatorExpr::generator(Generator::coord(n, i))),
            ));
            families.push((
                format!("p{n}"),
                Box::new(move |i| OperatorExpr::generator(Generator::momentum(n, i))),
            ));
        }
        families.push((
            "at".into(),
            Box::new(|i| OperatorExpr::generator(Generator::aux_a_coord(i))),
        ));
        families.push((
            "pa".into(),
            Box::new(|i| OperatorExpr::generator(Generator::aux_a_momentum(i))),
        ));
        families.push((
            "bt".into(),
            Box::new(|i| OperatorExpr::generator(Generator::aux_b_coord(i))),
        ));
        families.push((
            "pb".into(),
            Box::new(|i| OperatorExpr::generator(Generator::aux_b_momentum(i))),
        ));

        for (name, family) in &families {
            for i in 1..=3u8 {
                for j in 1..=3u8 {
                    let mut rhs = OperatorExpr::zero();
                    for k in 1..=3u8 {
                        let eps = levi_civita(i, j, k);
                        if eps == 0 {
                            continue;
                        }
                        rhs = rhs.add(&family(k).scale(&ih().mul(&ScalarCoeff::integer(eps))));
                    }
                    rep.check_equal(
                        &format!("rot_{name}_i{i}_j{j}"),
                        &comm(&lt[i as usize - 1], &family(j)),
                        &rhs,
                    );
                }
            }
        }
        rep
    }
}

/// Commutator helper; every bracket in this module stays far below the
/// degree guard.
fn comm(a: &OperatorExpr, b: &OperatorExpr) -> OperatorExpr {
    a.commutator(b).expect("within degree guard")
}
