//! Exact scalar coefficients: fractions of [`MPoly`] values.
//!
//! Denominators are kept as a multiset of monic polynomial factors so the
//! ratios the physics needs (masses over total mass, constants over single
//! masses) cancel exactly. Zero testing reduces to a numerator test, which
//! keeps operator-expression normal forms decidable.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::poly::{gr_i, gr_int, gr_one, gr_rat, MPoly, Symbol};
use super::WeylError;

/// An exact element of the fraction field over the symbol ring.
#[derive(Clone, Debug)]
pub struct ScalarCoeff {
    num: MPoly,
    /// Monic, non-constant factors with positive exponents, sorted.
    den: Vec<(MPoly, u32)>,
}

impl ScalarCoeff {
    pub fn zero() -> Self {
        ScalarCoeff { num: MPoly::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        ScalarCoeff { num: MPoly::one(), den: Vec::new() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ScalarCoeff { num: MPoly::constant(gr_i()), den: Vec::new() }
    }

    pub fn integer(v: i64) -> Self {
        ScalarCoeff { num: MPoly::constant(gr_int(v)), den: Vec::new() }
    }

    /// Exact rational p/q. Panics on q == 0.
    pub fn rational(p: i64, q: i64) -> Self {
        ScalarCoeff { num: MPoly::constant(gr_rat(p, q)), den: Vec::new() }
    }

    pub fn symbol(s: Symbol) -> Self {
        ScalarCoeff { num: MPoly::symbol(s), den: Vec::new() }
    }

    pub fn hbar() -> Self {
        Self::symbol(Symbol::Hbar)
    }

    pub fn planck_length() -> Self {
        Self::symbol(Symbol::PlanckLength)
    }

    pub fn mass(n: u32) -> Self {
        Self::symbol(Symbol::Mass(n))
    }

    pub fn c_theta(n: u32) -> Self {
        Self::symbol(Symbol::CTheta(n))
    }

    pub fn c_eta(n: u32) -> Self {
        Self::symbol(Symbol::CEta(n))
    }

    pub fn gamma_tilde() -> Self {
        Self::symbol(Symbol::GammaTilde)
    }

    pub fn alpha_tilde() -> Self {
        Self::symbol(Symbol::AlphaTilde)
    }

    pub fn from_poly(p: MPoly) -> Self {
        ScalarCoeff { num: p, den: Vec::new() }
    }

    /// num / den as an exact fraction. Errors when den is zero.
    pub fn fraction(num: MPoly, den: MPoly) -> Result<Self, WeylError> {
        ScalarCoeff::from_poly(num).div(&ScalarCoeff::from_poly(den))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.as_constant().map(|c| c == gr_one()).unwrap_or(false)
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(MPoly, u32)] {
        &self.den
    }

    fn with_den(num: MPoly, den: Vec<(MPoly, u32)>) -> Self {
        let mut out = ScalarCoeff { num, den };
        out.reduce();
        out
    }

    /// Cancel denominator factors that divide the numerator exactly.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut kept = Vec::with_capacity(self.den.len());
        for (f, mut e) in std::mem::take(&mut self.den) {
            while e > 0 {
                match self.num.exact_div(&f) {
                    Some(q) => {
                        self.num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                kept.push((f, e));
            }
        }
        self.den = kept;
    }

    fn merge_dens(a: &[(MPoly, u32)], b: &[(MPoly, u32)]) -> Vec<(MPoly, u32)> {
        let mut out: Vec<(MPoly, u32)> = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.canonical_cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        out
    }

    /// Per-factor exponent min of two denominators (their common part).
    fn den_gcd(a: &[(MPoly, u32)], b: &[(MPoly, u32)]) -> Vec<(MPoly, u32)> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.canonical_cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1.min(b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// a minus g, per factor (g must be contained in a).
    fn den_sub(a: &[(MPoly, u32)], g: &[(MPoly, u32)]) -> Vec<(MPoly, u32)> {
        let mut out = Vec::new();
        let mut j = 0;
        for (f, e) in a {
            let mut e = *e;
            if j < g.len() && g[j].0.canonical_cmp(f) == Ordering::Equal {
                e -= g[j].1;
                j += 1;
            }
            if e > 0 {
                out.push((f.clone(), e));
            }
        }
        out
    }

    fn den_expand(d: &[(MPoly, u32)]) -> MPoly {
        let mut out = MPoly::one();
        for (f, e) in d {
            out = out.mul(&f.pow(*e));
        }
        out
    }

    pub fn add(&self, other: &ScalarCoeff) -> ScalarCoeff {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let g = Self::den_gcd(&self.den, &other.den);
        let ca = Self::den_expand(&Self::den_sub(&other.den, &g));
        let cb = Self::den_expand(&Self::den_sub(&self.den, &g));
        let num = self.num.mul(&ca).add(&other.num.mul(&cb));
        let den = Self::merge_dens(&Self::den_sub(&self.den, &g), &other.den);
        ScalarCoeff::with_den(num, den)
    }

    pub fn neg(&self) -> ScalarCoeff {
        ScalarCoeff { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &ScalarCoeff) -> ScalarCoeff {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ScalarCoeff) -> ScalarCoeff {
        if self.is_zero() || other.is_zero() {
            return ScalarCoeff::zero();
        }
        ScalarCoeff::with_den(
            self.num.mul(&other.num),
            Self::merge_dens(&self.den, &other.den),
        )
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn recip(&self) -> Result<ScalarCoeff, WeylError> {
        if self.is_zero() {
            return Err(WeylError::DivisionByZero);
        }
        let (monic, scale) = self.num.monic_lex();
        let inv_scale = gr_one() / scale;
        let num = Self::den_expand(&self.den).scale(&inv_scale);
        let den = match monic.as_constant() {
            Some(_) => Vec::new(),
            None => vec![(monic, 1)],
        };
        Ok(ScalarCoeff::with_den(num, den))
    }

    pub fn div(&self, other: &ScalarCoeff) -> Result<ScalarCoeff, WeylError> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, e: u32) -> ScalarCoeff {
        let mut out = ScalarCoeff::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Rewrite coefficients with the given symbol bindings applied.
    ///
    /// Bindings may map symbols to arbitrary scalar expressions (this is how
    /// the mass conditions are imposed). A binding that zeroes a mass symbol
    /// or a denominator factor is rejected as invalid.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<Symbol, ScalarCoeff>,
    ) -> Result<ScalarCoeff, WeylError> {
        for (s, v) in bindings {
            if matches!(s, Symbol::Mass(_)) && v.is_zero() {
                return Err(WeylError::InvalidBinding(format!(
                    "mass symbol {s} bound to zero"
                )));
            }
        }
        let num = substitute_poly(&self.num, bindings)?;
        let mut out = num;
        for (f, e) in &self.den {
            let fs = substitute_poly(f, bindings)?;
            if fs.is_zero() {
                return Err(WeylError::InvalidBinding(format!(
                    "denominator factor {f} vanishes under the bindings"
                )));
            }
            out = out.mul(&fs.recip()?.pow(*e));
        }
        Ok(out)
    }

    /// Deterministic total order (used to sort report residuals).
    pub fn canonical_cmp(&self, other: &ScalarCoeff) -> Ordering {
        let o = self.num.canonical_cmp(&other.num);
        if o != Ordering::Equal {
            return o;
        }
        let mut ia = self.den.iter();
        let mut ib = other.den.iter();
        loop {
            match (ia.next(), ib.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((fa, ea)), Some((fb, eb))) => {
                    let o = fa.canonical_cmp(fb);
                    if o != Ordering::Equal {
                        return o;
                    }
                    let o = ea.cmp(eb);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }
}

fn substitute_poly(
    p: &MPoly,
    bindings: &BTreeMap<Symbol, ScalarCoeff>,
) -> Result<ScalarCoeff, WeylError> {
    let mut out = ScalarCoeff::zero();
    for (mono, coeff) in p.iter() {
        let mut term = ScalarCoeff::from_poly(MPoly::constant(coeff.clone()));
        for &(s, e) in mono.factors() {
            let base = match bindings.get(&s) {
                Some(v) => v.clone(),
                None => ScalarCoeff::symbol(s),
            };
            term = term.mul(&base.pow(e));
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Mathematical equality (difference is identically zero).
impl PartialEq for ScalarCoeff {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl Eq for ScalarCoeff {}

impl fmt::Display for ScalarCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            if self.num.num_terms() > 1 {
                return write!(f, "({})", self.num);
            }
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        let mut first = true;
        for (fac, e) in &self.den {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "({fac})")?;
            } else {
                write!(f, "({fac})^{e}")?;
            }
        }
        write!(f, ")")
    }
}

impl std::ops::Add for &ScalarCoeff {
    type Output = ScalarCoeff;
    fn add(self, rhs: &ScalarCoeff) -> ScalarCoeff {
        ScalarCoeff::add(self, rhs)
    }
}

impl std::ops::Sub for &ScalarCoeff {
    type Output = ScalarCoeff;
    fn sub(self, rhs: &ScalarCoeff) -> ScalarCoeff {
        ScalarCoeff::sub(self, rhs)
    }
}

impl std::ops::Mul for &ScalarCoeff {
    type Output = ScalarCoeff;
    fn mul(self, rhs: &ScalarCoeff) -> ScalarCoeff {
        ScalarCoeff::mul(self, rhs)
    }
}

impl std::ops::Neg for &ScalarCoeff {
    type Output = ScalarCoeff;
    fn neg(self) -> ScalarCoeff {
        ScalarCoeff::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total_mass(n: u32) -> MPoly {
        let mut p = MPoly::zero();
        for k in 1..=n {
            p = p.add(&MPoly::symbol(Symbol::Mass(k)));
        }
        p
    }

    /// mu_n = m_n / (m_1 + ... + m_N)
    fn mu(n: u32, total: u32) -> ScalarCoeff {
        ScalarCoeff::fraction(MPoly::symbol(Symbol::Mass(n)), total_mass(total)).unwrap()
    }

    #[test]
    fn mass_fractions_sum_to_one() {
        let s = mu(1, 3).add(&mu(2, 3)).add(&mu(3, 3));
        assert!(s.is_one());
    }

    #[test]
    fn exact_cancellation_through_symbol_ratio() {
        // c_th1 -> gamma_t/m1 applied to c_th1*m1 gives gamma_t
        let expr = ScalarCoeff::c_theta(1).mul(&ScalarCoeff::mass(1));
        let mut b = BTreeMap::new();
        b.insert(
            Symbol::CTheta(1),
            ScalarCoeff::gamma_tilde().div(&ScalarCoeff::mass(1)).unwrap(),
        );
        let out = expr.substitute(&b).unwrap();
        assert_eq!(out, ScalarCoeff::gamma_tilde());
    }

    #[test]
    fn empty_bindings_are_identity() {
        let x = mu(2, 2).mul(&ScalarCoeff::i()).add(&ScalarCoeff::rational(3, 4));
        assert_eq!(x.substitute(&BTreeMap::new()).unwrap(), x);
    }

    #[test]
    fn zero_mass_binding_is_rejected() {
        let x = ScalarCoeff::mass(1);
        let mut b = BTreeMap::new();
        b.insert(Symbol::Mass(1), ScalarCoeff::zero());
        assert!(matches!(
            x.substitute(&b),
            Err(WeylError::InvalidBinding(_))
        ));
    }

    #[test]
    fn reciprocal_and_division() {
        let x = mu(1, 2);
        let inv = x.recip().unwrap();
        assert!(x.mul(&inv).is_one());
        assert!(matches!(
            ScalarCoeff::zero().recip(),
            Err(WeylError::DivisionByZero)
        ));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = ScalarCoeff::i();
        assert_eq!(i.mul(&i), ScalarCoeff::integer(-1));
    }

    #[test]
    fn addition_over_common_denominator_reduces() {
        // m1/(m1+m2) * (m1+m2) = m1 exactly
        let m12 = total_mass(2);
        let x = mu(1, 2).mul(&ScalarCoeff::from_poly(m12));
        assert_eq!(x, ScalarCoeff::mass(1));
    }
}
