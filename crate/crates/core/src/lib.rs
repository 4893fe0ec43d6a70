//! Rotationally invariant noncommutative phase space, machine-checked.
//!
//! The symbolic layer ([`weyl`], [`representation`]) verifies the algebra of
//! noncommutative coordinates and momenta built from canonical variables and
//! shared auxiliary oscillators, to exact equality. The numeric layer
//! ([`composite`], [`hydrogen`], [`oracle`], [`atoms`]) computes effective
//! noncommutativity constants for composite systems, perturbative energy
//! corrections for two-particle Coulomb bound states, independent grid
//! oracles for those corrections, and upper bounds on the noncommutativity
//! parameters from exotic-atom spectroscopy.

pub mod atoms;
pub mod composite;
pub mod constants;
pub mod hydrogen;
pub mod jsonfmt;
pub mod oracle;
pub mod report;
pub mod representation;
pub mod weyl;
