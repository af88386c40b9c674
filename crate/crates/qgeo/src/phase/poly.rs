//! Commutative multivariate polynomials over the exact scalar ring, for
//! the classical phase-space geometry. Variables are the 2n phase-space
//! coordinates (x^1..x^n, p_1..p_n).

use crate::ncalg::NumericBindings;
use crate::scalar::Coefficient;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector keyed polynomial; no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    pub vars: usize,
    terms: BTreeMap<Vec<u32>, Coefficient>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Coefficient) -> Self {
        let mut p = Poly::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        let mut p = Poly::zero(vars);
        p.add_term(e, Coefficient::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Coefficient)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, expo: Vec<u32>, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        assert_eq!(expo.len(), self.vars);
        match self.terms.entry(expo) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Poly::zero(self.vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), c.clone() * v.clone());
        }
        out
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Poly::zero(self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(
                e2,
                c.clone() * Coefficient::from_int(e[i] as i128),
            );
        }
        out
    }

    pub fn eval(&self, point: &[f64], bind: &NumericBindings) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut v = c.eval(&|s| bind.get(s)).re;
            for (i, &p) in e.iter().enumerate() {
                v *= point[i].powi(p as i32);
            }
            acc += v;
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Poly::constant(self.vars, Coefficient::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars);
        let mut out = self;
        for (e, c) in rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (e, c) in self.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars);
        let mut out = Poly::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
