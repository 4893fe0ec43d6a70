//! Exact symbolic engine for polynomials in canonical phase-space
//! generators, with commutator evaluation by normal-ordered rewriting.
//!
//! Generators are particle coordinates/momenta plus two shared auxiliary
//! oscillator systems. Any out-of-order adjacent pair g*h is rewritten as
//! h*g + [g,h]; the base commutators are all scalars, so every expression
//! has a unique normal form and equality is a structural check.

pub mod coeff;
pub mod poly;

use std::collections::BTreeMap;
use std::fmt;

pub use coeff::ScalarCoeff;
pub use poly::{MPoly, Symbol};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("polynomial degree {degree} exceeds the guard ({max})")]
    DegreeOverflow { degree: usize, max: usize },
    #[error("invalid scalar binding: {0}")]
    InvalidBinding(String),
    #[error("division by zero scalar")]
    DivisionByZero,
}

/// Maximum operator polynomial degree accepted by `multiply`.
/// Catches runaway rewriting; raise it via `multiply_bounded` if needed.
pub const DEFAULT_MAX_DEGREE: usize = 8;

/// Which canonical family a generator belongs to. The declared order is the
/// normal-ordering target: coordinates come before momenta, particle
/// variables before the auxiliary systems.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GenKind {
    /// Particle coordinate x_i^(n).
    Coord,
    /// Particle momentum p_i^(n).
    Momentum,
    /// Auxiliary coordinate a~_i (theta sector).
    AuxACoord,
    /// Auxiliary momentum p~a_i.
    AuxAMomentum,
    /// Auxiliary coordinate b~_i (eta sector).
    AuxBCoord,
    /// Auxiliary momentum p~b_i.
    AuxBMomentum,
}

/// A canonical phase-space generator.
///
/// Particle kinds carry a 1-based particle index; the auxiliary systems are
/// shared between particles and carry none. Axis runs over 1..=3.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Generator {
    kind: GenKind,
    particle: Option<u32>,
    axis: u8,
}

impl Generator {
    fn new(kind: GenKind, particle: Option<u32>, axis: u8) -> Self {
        assert!((1..=3).contains(&axis), "axis must be 1..=3");
        if matches!(kind, GenKind::Coord | GenKind::Momentum) {
            assert!(
                particle.map(|n| n >= 1).unwrap_or(false),
                "particle kinds need an index >= 1"
            );
        } else {
            assert!(particle.is_none(), "aux kinds carry no particle index");
        }
        Generator { kind, particle, axis }
    }

    pub fn coord(particle: u32, axis: u8) -> Self {
        Self::new(GenKind::Coord, Some(particle), axis)
    }

    pub fn momentum(particle: u32, axis: u8) -> Self {
        Self::new(GenKind::Momentum, Some(particle), axis)
    }

    pub fn aux_a_coord(axis: u8) -> Self {
        Self::new(GenKind::AuxACoord, None, axis)
    }

    pub fn aux_a_momentum(axis: u8) -> Self {
        Self::new(GenKind::AuxAMomentum, None, axis)
    }

    pub fn aux_b_coord(axis: u8) -> Self {
        Self::new(GenKind::AuxBCoord, None, axis)
    }

    pub fn aux_b_momentum(axis: u8) -> Self {
        Self::new(GenKind::AuxBMomentum, None, axis)
    }

    pub fn kind(&self) -> GenKind {
        self.kind
    }

    pub fn particle(&self) -> Option<u32> {
        self.particle
    }

    pub fn axis(&self) -> u8 {
        self.axis
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.particle) {
            (GenKind::Coord, Some(n)) => write!(f, "x{}_{}", n, self.axis),
            (GenKind::Momentum, Some(n)) => write!(f, "p{}_{}", n, self.axis),
            (GenKind::AuxACoord, _) => write!(f, "at_{}", self.axis),
            (GenKind::AuxAMomentum, _) => write!(f, "pa_{}", self.axis),
            (GenKind::AuxBCoord, _) => write!(f, "bt_{}", self.axis),
            (GenKind::AuxBMomentum, _) => write!(f, "pb_{}", self.axis),
            _ => unreachable!(),
        }
    }
}

/// The canonical commutation table, as an exact scalar.
///
/// [x_i^(n), p_j^(m)] = i*hbar δ_nm δ_ij, the dimensionless auxiliary pairs
/// give [a~_i, p~a_j] = [b~_i, p~b_j] = i δ_ij, every other pair commutes.
fn base_commutator_scalar(g: Generator, h: Generator) -> ScalarCoeff {
    use GenKind::*;
    let val = |positive: bool, with_hbar: bool| {
        let mut c = ScalarCoeff::i();
        if with_hbar {
            c = c.mul(&ScalarCoeff::hbar());
        }
        if positive {
            c
        } else {
            c.neg()
        }
    };
    match (g.kind, h.kind) {
        (Coord, Momentum) if g.particle == h.particle && g.axis == h.axis => val(true, true),
        (Momentum, Coord) if g.particle == h.particle && g.axis == h.axis => val(false, true),
        (AuxACoord, AuxAMomentum) if g.axis == h.axis => val(true, false),
        (AuxAMomentum, AuxACoord) if g.axis == h.axis => val(false, false),
        (AuxBCoord, AuxBMomentum) if g.axis == h.axis => val(true, false),
        (AuxBMomentum, AuxBCoord) if g.axis == h.axis => val(false, false),
        _ => ScalarCoeff::zero(),
    }
}

/// [g, h] for two generators, as an operator expression.
pub fn base_commutator(g: Generator, h: Generator) -> OperatorExpr {
    OperatorExpr::scalar(base_commutator_scalar(g, h))
}

/// Normal-ordered polynomial over the generators with exact coefficients.
///
/// Terms are keyed by their factor sequence; the map never holds a zero
/// coefficient, so two expressions are equal iff the maps match.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct OperatorExpr {
    terms: BTreeMap<Vec<Generator>, ScalarCoeff>,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        OperatorExpr::default()
    }

    pub fn scalar(c: ScalarCoeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        OperatorExpr { terms }
    }

    pub fn one() -> Self {
        Self::scalar(ScalarCoeff::one())
    }

    pub fn generator(g: Generator) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![g], ScalarCoeff::one());
        OperatorExpr { terms }
    }

    /// c * g, a convenience for building representations.
    pub fn term(c: ScalarCoeff, gens: &[Generator]) -> Self {
        let mut out = OperatorExpr::zero();
        normal_order_word(gens.to_vec(), c, &mut out);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest number of generator factors among the terms.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Generator], &ScalarCoeff)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    fn add_term(&mut self, word: Vec<Generator>, c: ScalarCoeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &OperatorExpr) -> OperatorExpr {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> OperatorExpr {
        OperatorExpr {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &OperatorExpr) -> OperatorExpr {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, s: &ScalarCoeff) -> OperatorExpr {
        if s.is_zero() {
            return OperatorExpr::zero();
        }
        OperatorExpr {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.mul(s))).collect(),
        }
    }

    /// A + s*B, in normal form with zero terms pruned.
    pub fn add_scaled(&self, s: &ScalarCoeff, other: &OperatorExpr) -> OperatorExpr {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.mul(s));
        }
        out
    }

    /// Normal-ordered product with an explicit degree guard.
    pub fn multiply_bounded(
        &self,
        other: &OperatorExpr,
        max_degree: usize,
    ) -> Result<OperatorExpr, WeylError> {
        let mut out = OperatorExpr::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let degree = wa.len() + wb.len();
                if degree > max_degree {
                    return Err(WeylError::DegreeOverflow { degree, max: max_degree });
                }
                let mut word = Vec::with_capacity(degree);
                word.extend_from_slice(wa);
                word.extend_from_slice(wb);
                normal_order_word(word, ca.mul(cb), &mut out);
            }
        }
        Ok(out)
    }

    /// Normal-ordered product under the default degree guard.
    pub fn multiply(&self, other: &OperatorExpr) -> Result<OperatorExpr, WeylError> {
        self.multiply_bounded(other, DEFAULT_MAX_DEGREE)
    }

    /// Normal form of AB - BA.
    pub fn commutator(&self, other: &OperatorExpr) -> Result<OperatorExpr, WeylError> {
        Ok(self.multiply(other)?.sub(&other.multiply(self)?))
    }

    /// true iff normal_form(A - B) is empty.
    pub fn equals(&self, other: &OperatorExpr) -> bool {
        self.sub(other).is_zero()
    }

    /// Apply scalar bindings to every coefficient; generators untouched.
    pub fn substitute_scalars(
        &self,
        bindings: &BTreeMap<Symbol, ScalarCoeff>,
    ) -> Result<OperatorExpr, WeylError> {
        let mut out = OperatorExpr::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.substitute(bindings)?);
        }
        Ok(out)
    }

    /// Re-run normal ordering on every stored word. Used by tests to show
    /// normal forms are fixed points of the rewriting.
    pub fn renormalized(&self) -> OperatorExpr {
        let mut out = OperatorExpr::zero();
        for (w, c) in &self.terms {
            normal_order_word(w.clone(), c.clone(), &mut out);
        }
        out
    }

    /// Deterministic serialization: one term per line, coefficient then
    /// factor list, in map order.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut lines = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            let mut line = format!("{c}");
            for g in w {
                line.push(' ');
                line.push_str(&g.to_string());
            }
            lines.push(line);
        }
        lines.join("\n")
    }
}

/// Rewrite a single word into normal order, accumulating into `acc`.
///
/// Each out-of-order adjacent pair g*h (g > h) becomes h*g + [g,h]; the
/// commutator is a scalar so the second branch drops the pair entirely.
/// Swaps strictly reduce the inversion count at fixed degree and the
/// commutator branch reduces degree, so the queue terminates.
fn normal_order_word(word: Vec<Generator>, coeff: ScalarCoeff, acc: &mut OperatorExpr) {
    if coeff.is_zero() {
        return;
    }
    let mut queue = vec![(word, coeff)];
    'outer: while let Some((mut w, c)) = queue.pop() {
        let mut k = 1;
        while k < w.len() {
            if w[k - 1] > w[k] {
                let s = base_commutator_scalar(w[k - 1], w[k]);
                if !s.is_zero() {
                    let mut reduced = Vec::with_capacity(w.len() - 2);
                    reduced.extend_from_slice(&w[..k - 1]);
                    reduced.extend_from_slice(&w[k + 1..]);
                    queue.push((reduced, c.mul(&s)));
                }
                w.swap(k - 1, k);
                queue.push((w, c));
                continue 'outer;
            }
            k += 1;
        }
        acc.add_term(w, c);
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl std::ops::Add for &OperatorExpr {
    type Output = OperatorExpr;
    fn add(self, rhs: &OperatorExpr) -> OperatorExpr {
        OperatorExpr::add(self, rhs)
    }
}

impl std::ops::Sub for &OperatorExpr {
    type Output = OperatorExpr;
    fn sub(self, rhs: &OperatorExpr) -> OperatorExpr {
        OperatorExpr::sub(self, rhs)
    }
}

impl std::ops::Neg for &OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> OperatorExpr {
        OperatorExpr::neg(self)
    }
}

/// ε_ijk for 1-based indices; 0 on repeats.
pub fn levi_civita(i: u8, j: u8, k: u8) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (2, 1, 3) | (1, 3, 2) => -1,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: u32, i: u8) -> OperatorExpr {
        OperatorExpr::generator(Generator::coord(n, i))
    }

    fn p(n: u32, i: u8) -> OperatorExpr {
        OperatorExpr::generator(Generator::momentum(n, i))
    }

    fn ihbar() -> ScalarCoeff {
        ScalarCoeff::i().mul(&ScalarCoeff::hbar())
    }

    #[test]
    fn base_commutator_table() {
        let g = Generator::coord(1, 1);
        let h = Generator::momentum(1, 1);
        assert!(base_commutator(g, h).equals(&OperatorExpr::scalar(ihbar())));
        // same-kind coordinates commute
        assert!(base_commutator(Generator::coord(1, 1), Generator::coord(1, 2)).is_zero());
        // dimensionless auxiliary pair
        assert!(base_commutator(Generator::aux_a_coord(1), Generator::aux_a_momentum(1))
            .equals(&OperatorExpr::scalar(ScalarCoeff::i())));
        // cross-system pairs commute
        assert!(base_commutator(Generator::aux_a_coord(1), Generator::aux_b_momentum(1)).is_zero());
        // different particles commute
        assert!(base_commutator(Generator::coord(1, 1), Generator::momentum(2, 1)).is_zero());
        // antisymmetry of the table
        assert!(base_commutator(h, g).equals(&base_commutator(g, h).neg()));
    }

    #[test]
    fn multiply_reorders_with_ccr() {
        // identity
        assert!(x(1, 1).multiply(&OperatorExpr::one()).unwrap().equals(&x(1, 1)));
        // p x = x p - i hbar
        let px = p(1, 1).multiply(&x(1, 1)).unwrap();
        let expect = x(1, 1)
            .multiply(&p(1, 1))
            .unwrap()
            .sub(&OperatorExpr::scalar(ihbar()));
        assert!(px.equals(&expect));
        // p^2 x = x p^2 - 2 i hbar p
        let p2 = p(1, 1).multiply(&p(1, 1)).unwrap();
        let got = p2.multiply(&x(1, 1)).unwrap();
        let expect = x(1, 1)
            .multiply(&p2)
            .unwrap()
            .add_scaled(&ihbar().mul(&ScalarCoeff::integer(-2)), &p(1, 1));
        assert!(got.equals(&expect));
    }

    #[test]
    fn add_scaled_prunes_and_cancels() {
        let zero = x(1, 1).add_scaled(&ScalarCoeff::one(), &x(1, 1).neg());
        assert!(zero.is_zero());
        let scaled = OperatorExpr::zero().add_scaled(&ihbar(), &x(1, 1));
        assert!(scaled.equals(&x(1, 1).scale(&ihbar())));
        // x p - (p x normal-ordered) = i hbar
        let xp = x(1, 1).multiply(&p(1, 1)).unwrap();
        let px = p(1, 1).multiply(&x(1, 1)).unwrap();
        assert!(xp.add_scaled(&ScalarCoeff::integer(-1), &px).equals(&OperatorExpr::scalar(ihbar())));
    }

    #[test]
    fn commutator_basics() {
        assert!(x(1, 1).commutator(&p(1, 1)).unwrap().equals(&OperatorExpr::scalar(ihbar())));
        let a = x(1, 1).multiply(&p(1, 2)).unwrap();
        assert!(a.commutator(&a).unwrap().is_zero());
        // [L3, x1] = i hbar x2 with L3 = x1 p2 - x2 p1
        let l3 = x(1, 1)
            .multiply(&p(1, 2))
            .unwrap()
            .sub(&x(1, 2).multiply(&p(1, 1)).unwrap());
        let got = l3.commutator(&x(1, 1)).unwrap();
        assert!(got.equals(&x(1, 2).scale(&ihbar())));
    }

    #[test]
    fn equals_detects_ordering_differences() {
        let xp = x(1, 1).multiply(&p(1, 1)).unwrap();
        let px = p(1, 1).multiply(&x(1, 1)).unwrap();
        assert!(xp.equals(&xp));
        assert!(!px.equals(&xp));
        assert!(xp.sub(&px).equals(&OperatorExpr::scalar(ihbar())));
    }

    #[test]
    fn degree_guard_trips() {
        let mut big = OperatorExpr::one();
        for _ in 0..5 {
            big = big.multiply(&x(1, 1)).unwrap();
        }
        let err = big.multiply(&big).unwrap_err();
        assert!(matches!(err, WeylError::DegreeOverflow { degree: 10, max: 8 }));
        assert!(big.multiply_bounded(&big, 10).is_ok());
    }

    #[test]
    fn substitution_on_coefficients() {
        use std::collections::BTreeMap;
        // c_th1 * m1 * x -> gamma_t * x
        let expr = x(1, 1).scale(&ScalarCoeff::c_theta(1).mul(&ScalarCoeff::mass(1)));
        let mut b = BTreeMap::new();
        b.insert(
            Symbol::CTheta(1),
            ScalarCoeff::gamma_tilde().div(&ScalarCoeff::mass(1)).unwrap(),
        );
        let got = expr.substitute_scalars(&b).unwrap();
        assert!(got.equals(&x(1, 1).scale(&ScalarCoeff::gamma_tilde())));
    }

    #[test]
    fn text_form_is_stable() {
        let e = x(1, 1)
            .multiply(&p(1, 1))
            .unwrap()
            .add_scaled(&ScalarCoeff::rational(1, 2), &OperatorExpr::one());
        let t = e.to_text();
        assert_eq!(t, e.to_text());
        assert!(t.contains("x1_1 p1_1"));
        assert_eq!(OperatorExpr::zero().to_text(), "0");
    }
}
