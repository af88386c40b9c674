//! Exact scalar arithmetic: Gaussian rationals times Laurent monomials in
//! formal unit symbols (hbar, m, q, c, nu, u, beta, alpha, kappa).
//!
//! A [`Coefficient`] is a finite sum of such monomials. All algebra and
//! calculus coefficients in this crate reduce to this type, so every
//! identity check is exact: a residual is zero iff its coefficient map is
//! empty.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rat = Ratio<i128>;

/// Gaussian rational a + b i with exact rational parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        GaussRat::new(Rat::one(), Rat::zero())
    }

    pub fn i() -> Self {
        GaussRat::new(Rat::zero(), Rat::one())
    }

    pub fn from_int(n: i128) -> Self {
        GaussRat::new(Rat::from_integer(n), Rat::zero())
    }

    pub fn from_ratio(num: i128, den: i128) -> Self {
        GaussRat::new(Rat::new(num, den), Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re, -self.im)
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.re * self.re + self.im * self.im;
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        GaussRat::new(self.re / n, -self.im / n)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        let f = |r: Rat| *r.numer() as f64 / *r.denom() as f64;
        (f(self.re), f(self.im))
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        GaussRat::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.is_positive() {
                    write!(f, "({}+{}*i)", self.re, self.im)
                } else {
                    write!(f, "({}{}*i)", self.re, self.im)
                }
            }
        }
    }
}

/// Formal unit symbols carried by coefficients.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Symbol {
    Hbar,
    Mass,
    Charge,
    LightSpeed,
    Nu,
    U,
    Beta,
    Alpha,
    Kappa,
}

impl Symbol {
    pub fn name(&self) -> &'static str {
        match self {
            Symbol::Hbar => "hbar",
            Symbol::Mass => "m",
            Symbol::Charge => "q",
            Symbol::LightSpeed => "c",
            Symbol::Nu => "nu",
            Symbol::U => "u",
            Symbol::Beta => "beta",
            Symbol::Alpha => "alpha",
            Symbol::Kappa => "kappa",
        }
    }

    pub fn from_name(s: &str) -> Option<Symbol> {
        Some(match s {
            "hbar" => Symbol::Hbar,
            "m" => Symbol::Mass,
            "q" => Symbol::Charge,
            "c" => Symbol::LightSpeed,
            "nu" => Symbol::Nu,
            "u" => Symbol::U,
            "beta" => Symbol::Beta,
            "alpha" => Symbol::Alpha,
            "kappa" => Symbol::Kappa,
            _ => return None,
        })
    }
}

/// Laurent monomial in the symbols: map symbol -> nonzero integer exponent.
pub type Monomial = BTreeMap<Symbol, i32>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = a.clone();
    for (s, e) in b {
        let v = out.entry(*s).or_insert(0);
        *v += e;
        if *v == 0 {
            out.remove(s);
        }
    }
    out
}

/// A single exact scalar: Gaussian rational times a Laurent monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarCoefficient {
    pub gauss: GaussRat,
    pub powers: Monomial,
}

impl ScalarCoefficient {
    pub fn new(gauss: GaussRat, powers: Monomial) -> Self {
        ScalarCoefficient { gauss, powers }
    }

    pub fn one() -> Self {
        ScalarCoefficient::new(GaussRat::one(), Monomial::new())
    }

    pub fn symbol(s: Symbol) -> Self {
        ScalarCoefficient::new(GaussRat::one(), [(s, 1)].into_iter().collect())
    }

    pub fn symbol_pow(s: Symbol, e: i32) -> Self {
        if e == 0 {
            return ScalarCoefficient::one();
        }
        ScalarCoefficient::new(GaussRat::one(), [(s, e)].into_iter().collect())
    }
}

/// Exact scalar: a Laurent polynomial in the symbols with Gaussian-rational
/// coefficients. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Coefficient {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::default()
    }

    pub fn one() -> Self {
        Coefficient::from_gauss(GaussRat::one())
    }

    pub fn i() -> Self {
        Coefficient::from_gauss(GaussRat::i())
    }

    pub fn from_gauss(g: GaussRat) -> Self {
        let mut c = Coefficient::zero();
        c.add_monomial(Monomial::new(), g);
        c
    }

    pub fn from_int(n: i128) -> Self {
        Coefficient::from_gauss(GaussRat::from_int(n))
    }

    pub fn from_ratio(num: i128, den: i128) -> Self {
        Coefficient::from_gauss(GaussRat::from_ratio(num, den))
    }

    pub fn symbol(s: Symbol) -> Self {
        Coefficient::from(ScalarCoefficient::symbol(s))
    }

    pub fn symbol_pow(s: Symbol, e: i32) -> Self {
        Coefficient::from(ScalarCoefficient::symbol_pow(s, e))
    }

    /// i * hbar, the unit every commutator correction carries.
    pub fn i_hbar() -> Self {
        Coefficient::i() * Coefficient::symbol(Symbol::Hbar)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_monomial(&mut self, m: Monomial, g: GaussRat) {
        if g.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(g);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + g;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn monomials(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn num_monomials(&self) -> usize {
        self.terms.len()
    }

    /// Keep only monomials whose hbar exponent equals `order`.
    pub fn hbar_order(&self, order: i32) -> Coefficient {
        let mut out = Coefficient::zero();
        for (m, g) in &self.terms {
            if m.get(&Symbol::Hbar).copied().unwrap_or(0) == order {
                out.add_monomial(m.clone(), g.clone());
            }
        }
        out
    }

    /// Multiplicative inverse; defined only for a single-monomial scalar.
    pub fn inv(&self) -> Option<Coefficient> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, g) = self.terms.iter().next().unwrap();
        let inv_mono: Monomial = m.iter().map(|(s, e)| (*s, -e)).collect();
        let mut c = Coefficient::zero();
        c.add_monomial(inv_mono, g.inv());
        Some(c)
    }

    pub fn conj(&self) -> Coefficient {
        let mut out = Coefficient::zero();
        for (m, g) in &self.terms {
            out.add_monomial(m.clone(), g.conj());
        }
        out
    }

    /// Numeric evaluation with every symbol bound to a real value.
    pub fn eval(&self, bind: &dyn Fn(Symbol) -> f64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (m, g) in &self.terms {
            let (re, im) = g.to_f64_pair();
            let mut v = num_complex::Complex64::new(re, im);
            for (s, e) in m {
                v *= bind(*s).powi(*e);
            }
            acc += v;
        }
        acc
    }
}

impl From<ScalarCoefficient> for Coefficient {
    fn from(s: ScalarCoefficient) -> Self {
        let mut c = Coefficient::zero();
        c.add_monomial(s.powers, s.gauss);
        c
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: Coefficient) -> Coefficient {
        let mut out = self;
        for (m, g) in rhs.terms {
            out.add_monomial(m, g);
        }
        out
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: Coefficient) -> Coefficient {
        self + (-rhs)
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        let mut out = Coefficient::zero();
        for (m, g) in self.terms {
            out.add_monomial(m, -g);
        }
        out
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Coefficient) -> Coefficient {
        let mut out = Coefficient::zero();
        for (ma, ga) in &self.terms {
            for (mb, gb) in &rhs.terms {
                out.add_monomial(mono_mul(ma, mb), ga.clone() * gb.clone());
            }
        }
        out
    }
}

impl Mul<&Coefficient> for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        self.clone() * rhs.clone()
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, g) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", g)?;
            for (s, e) in m {
                if *e == 1 {
                    write!(f, "*{}", s.name())?;
                } else {
                    write!(f, "*{}^{}", s.name(), e)?;
                }
            }
        }
        Ok(())
    }
}
