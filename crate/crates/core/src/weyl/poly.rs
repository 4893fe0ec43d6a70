//! Exact multivariate polynomials over Gaussian rationals.
//!
//! This is the commutative scalar ring underneath the operator algebra:
//! polynomials in the formal symbols (hbar, l_P, per-particle constants,
//! masses, gamma_t, alpha_t) with Complex<BigRational> coefficients.
//! Everything here is exact; no floating point.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex;
use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

/// A formal commuting symbol of the coefficient ring.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Symbol {
    /// Reduced Planck constant.
    Hbar,
    /// Planck length.
    PlanckLength,
    /// The mass-condition constant with c_theta * m = gamma_t.
    GammaTilde,
    /// The mass-condition constant with c_eta / m = alpha_t.
    AlphaTilde,
    /// Mass of particle n (1-based).
    Mass(u32),
    /// Coordinate-noncommutativity constant of particle n.
    CTheta(u32),
    /// Momentum-noncommutativity constant of particle n.
    CEta(u32),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Hbar => write!(f, "hbar"),
            Symbol::PlanckLength => write!(f, "l_P"),
            Symbol::GammaTilde => write!(f, "gamma_t"),
            Symbol::AlphaTilde => write!(f, "alpha_t"),
            Symbol::Mass(n) => write!(f, "m{n}"),
            Symbol::CTheta(n) => write!(f, "c_th{n}"),
            Symbol::CEta(n) => write!(f, "c_et{n}"),
        }
    }
}

/// Exact Gaussian rational a + b*i.
pub type GaussRat = Complex<BigRational>;

pub fn gr_zero() -> GaussRat {
    Complex::new(BigRational::zero(), BigRational::zero())
}

pub fn gr_one() -> GaussRat {
    Complex::new(BigRational::one(), BigRational::zero())
}

/// The imaginary unit.
pub fn gr_i() -> GaussRat {
    Complex::new(BigRational::zero(), BigRational::one())
}

pub fn gr_int(v: i64) -> GaussRat {
    Complex::new(BigRational::from(BigInt::from(v)), BigRational::zero())
}

/// p/q as a Gaussian rational. Panics on q == 0.
pub fn gr_rat(p: i64, q: i64) -> GaussRat {
    assert!(q != 0, "zero denominator");
    Complex::new(
        BigRational::new(BigInt::from(p), BigInt::from(q)),
        BigRational::zero(),
    )
}

pub fn gr_is_zero(c: &GaussRat) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Deterministic rendering of a Gaussian rational.
pub fn fmt_gauss(c: &GaussRat) -> String {
    if gr_is_zero(c) {
        return "0".into();
    }
    if c.im.is_zero() {
        return fmt_rat(&c.re);
    }
    let im = if c.im.is_one() {
        "i".to_string()
    } else if (-c.im.clone()).is_one() {
        "-i".to_string()
    } else {
        format!("{}*i", fmt_rat(&c.im))
    };
    if c.re.is_zero() {
        im
    } else if c.im.is_negative() {
        format!("({}{})", fmt_rat(&c.re), im)
    } else {
        format!("({}+{})", fmt_rat(&c.re), im)
    }
}

/// A power product of symbols: sorted, deduplicated, all exponents > 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Mono(Vec<(Symbol, u32)>);

impl Mono {
    pub fn unit() -> Self {
        Mono(Vec::new())
    }

    pub fn symbol(s: Symbol) -> Self {
        Mono(vec![(s, 1)])
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.0.iter().any(|(t, _)| *t == s)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Mono(out)
    }

    /// self / other, or None if other does not divide self.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut i = 0;
        for &(s, e) in &other.0 {
            loop {
                if i >= self.0.len() {
                    return None;
                }
                let (t, f) = self.0[i];
                if t < s {
                    out.push((t, f));
                    i += 1;
                } else if t == s {
                    if f < e {
                        return None;
                    }
                    if f > e {
                        out.push((t, f - e));
                    }
                    i += 1;
                    break;
                } else {
                    return None;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        Some(Mono(out))
    }

    /// Dense lexicographic comparison (a true monomial order, unlike the
    /// derived Ord used for map keys).
    pub fn cmp_lex(&self, other: &Mono) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(sa, ea)), Some(&(sb, eb))) => match sa.cmp(&sb) {
                    // `self` has a positive power of an earlier symbol.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (s, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with Gaussian-rational coefficients.
///
/// The term map is keyed by monomial with the derived (deterministic)
/// order, which makes iteration and display reproducible. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, GaussRat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(gr_one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !gr_is_zero(&c) {
            terms.insert(Mono::unit(), c);
        }
        MPoly { terms }
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::symbol(s), gr_one());
        MPoly { terms }
    }

    pub fn term(m: Mono, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !gr_is_zero(&c) {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(c) iff self is the constant polynomial c (including zero).
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(gr_zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_unit() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &GaussRat)> {
        self.terms.iter()
    }

    pub fn contains_symbol(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m.contains(s))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::total_degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Mono, c: GaussRat) {
        if gr_is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if gr_is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> MPoly {
        if gr_is_zero(c) {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Leading term under dense lex order (used only for division).
    fn leading_lex(&self) -> Option<(&Mono, &GaussRat)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| a.cmp_lex(b))
    }

    /// Exact polynomial division: Some(q) with self == q * d, else None.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        let (dm, dc) = d.leading_lex()?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading_lex().unwrap();
            let qm = rm.div(dm)?;
            let qc = rc.clone() / dc.clone();
            let qt = MPoly::term(qm, qc);
            rem = rem.sub(&qt.mul(d));
            quot = quot.add(&qt);
        }
        Some(quot)
    }

    /// Rescale so the dense-lex leading coefficient is 1.
    /// Returns (monic polynomial, removed scale) with self == scale * monic.
    pub fn monic_lex(&self) -> (MPoly, GaussRat) {
        match self.leading_lex() {
            None => (MPoly::zero(), gr_one()),
            Some((_, c)) => {
                let c = c.clone();
                let inv = gr_one() / c.clone();
                (self.scale(&inv), c)
            }
        }
    }

    /// Total order usable for sorting polynomials deterministically.
    pub fn canonical_cmp(&self, other: &MPoly) -> Ordering {
        let mut ia = self.terms.iter();
        let mut ib = other.terms.iter();
        loop {
            match (ia.next(), ib.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let o = ma.cmp(mb);
                    if o != Ordering::Equal {
                        return o;
                    }
                    let o = ca.re.cmp(&cb.re);
                    if o != Ordering::Equal {
                        return o;
                    }
                    let o = ca.im.cmp(&cb.im);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.im.is_zero() && c.re.is_negative();
            let cshow = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let cs = fmt_gauss(&cshow);
            if m.is_unit() {
                write!(f, "{cs}")?;
            } else if cs == "1" {
                write!(f, "{m}")?;
            } else if cs == "-1" {
                write!(f, "-{m}")?;
            } else {
                write!(f, "{cs}*{m}")?;
            }
        }
        Ok(())
    }
}
