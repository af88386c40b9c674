//! Canonical normal-ordered elements of the two Heisenberg-type algebras.
//!
//! Normal order puts all position content (coordinates, potential and gauge
//! derivative atoms) to the left of all momenta, with momentum indices
//! nondecreasing. Moving a momentum right past a position atom emits an
//! -i hbar derivative correction; reordering momenta in the relativistic
//! algebra emits i hbar q F_ab corrections with F expanded in
//! gauge-potential atoms, so the Bianchi identity holds automatically.

use crate::scalar::{Coefficient, Symbol};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum NcalgError {
    #[error("operands built over different algebra specs")]
    MixedSpec,
    #[error("operation requires the {0} algebra")]
    WrongAlgebra(&'static str),
    #[error("generic atoms present; substitute a concrete potential first")]
    GenericAtoms,
}

/// Which Heisenberg-type algebra an element lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AlgebraKind {
    /// Spatial indices 1..=n, identity metric, generic potential V.
    NonRelativistic { dim: u8 },
    /// Spacetime indices 0..=spatial, eta = diag(-1, 1, ..), generic gauge
    /// potential A_a. `static_gauge` erases any gauge atom differentiated
    /// in the time direction.
    Relativistic { spatial: u8, static_gauge: bool },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AlgebraSpec {
    pub kind: AlgebraKind,
}

impl AlgebraSpec {
    pub fn nonrel(dim: u8) -> Self {
        assert!((1..=3).contains(&dim), "supported spatial dimensions: 1..3");
        AlgebraSpec {
            kind: AlgebraKind::NonRelativistic { dim },
        }
    }

    pub fn relativistic(spatial: u8) -> Self {
        assert!(
            spatial == 1 || spatial == 3,
            "supported relativistic dimensions: 1+1 and 1+3"
        );
        AlgebraSpec {
            kind: AlgebraKind::Relativistic {
                spatial,
                static_gauge: false,
            },
        }
    }

    pub fn relativistic_static(spatial: u8) -> Self {
        AlgebraSpec {
            kind: AlgebraKind::Relativistic {
                spatial,
                static_gauge: true,
            },
        }
    }

    pub fn is_relativistic(&self) -> bool {
        matches!(self.kind, AlgebraKind::Relativistic { .. })
    }

    pub fn is_static(&self) -> bool {
        matches!(
            self.kind,
            AlgebraKind::Relativistic {
                static_gauge: true,
                ..
            }
        )
    }

    /// All generator indices: 1..=n nonrelativistic, 0..=spatial relativistic.
    pub fn indices(&self) -> Vec<u8> {
        match self.kind {
            AlgebraKind::NonRelativistic { dim } => (1..=dim).collect(),
            AlgebraKind::Relativistic { spatial, .. } => (0..=spatial).collect(),
        }
    }

    /// Spatial indices only (same as `indices` in the nonrelativistic case).
    pub fn spatial_indices(&self) -> Vec<u8> {
        match self.kind {
            AlgebraKind::NonRelativistic { dim } => (1..=dim).collect(),
            AlgebraKind::Relativistic { spatial, .. } => (1..=spatial).collect(),
        }
    }

    /// Diagonal metric entry eta^{aa} (= eta_{aa}).
    pub fn eta(&self, a: u8) -> i128 {
        match self.kind {
            AlgebraKind::NonRelativistic { .. } => 1,
            AlgebraKind::Relativistic { .. } => {
                if a == 0 {
                    -1
                } else {
                    1
                }
            }
        }
    }
}

/// One commuting position factor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum PositionAtom {
    /// Coordinate x^a.
    Coordinate(u8),
    /// Partial derivative of the generic potential: V_{,I}. The empty
    /// multi-index is V itself. Indices sorted ascending.
    PotentialDeriv(Vec<u8>),
    /// Partial derivative of a gauge-potential component: A_{a,I}.
    GaugeDeriv(u8, Vec<u8>),
}

/// Result of differentiating a single atom.
enum AtomDeriv {
    Zero,
    One,
    Atom(PositionAtom),
}

impl PositionAtom {
    fn derivative(&self, a: u8, static_gauge: bool) -> AtomDeriv {
        match self {
            PositionAtom::Coordinate(b) => {
                if *b == a {
                    AtomDeriv::One
                } else {
                    AtomDeriv::Zero
                }
            }
            PositionAtom::PotentialDeriv(idx) => {
                let mut v = idx.clone();
                v.push(a);
                v.sort_unstable();
                AtomDeriv::Atom(PositionAtom::PotentialDeriv(v))
            }
            PositionAtom::GaugeDeriv(c, idx) => {
                if static_gauge && a == 0 {
                    return AtomDeriv::Zero;
                }
                let mut v = idx.clone();
                v.push(a);
                v.sort_unstable();
                AtomDeriv::Atom(PositionAtom::GaugeDeriv(*c, v))
            }
        }
    }

    fn is_generic(&self) -> bool {
        !matches!(self, PositionAtom::Coordinate(_))
    }
}

/// Commutative multiset of position atoms with positive integer powers.
pub type PositionPart = BTreeMap<PositionAtom, u32>;

/// Deduplication key of a normal-ordered term.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TermKey {
    pub position: PositionPart,
    /// Momentum indices in nondecreasing order.
    pub momenta: Vec<u8>,
}

impl TermKey {
    pub fn unit() -> Self {
        TermKey {
            position: PositionPart::new(),
            momenta: Vec::new(),
        }
    }

    pub fn has_generic_atoms(&self) -> bool {
        self.position.keys().any(|a| a.is_generic())
    }
}

/// A raw (possibly unordered) factor used by the normalizer.
#[derive(Clone, Debug)]
enum Factor {
    Pos(PositionAtom),
    Mom(u8),
}

/// Canonical element: finite sum of normal-ordered terms with exact
/// coefficients, deduplicated by (position, momenta).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    spec: AlgebraSpec,
    terms: BTreeMap<TermKey, Coefficient>,
}

impl AlgebraElement {
    pub fn zero(spec: AlgebraSpec) -> Self {
        AlgebraElement {
            spec,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(spec: AlgebraSpec) -> Self {
        AlgebraElement::from_coefficient(spec, Coefficient::one())
    }

    pub fn from_coefficient(spec: AlgebraSpec, c: Coefficient) -> Self {
        let mut e = AlgebraElement::zero(spec);
        e.add_term(TermKey::unit(), c);
        e
    }

    pub fn coordinate(spec: AlgebraSpec, a: u8) -> Self {
        let mut e = AlgebraElement::zero(spec);
        let mut pos = PositionPart::new();
        pos.insert(PositionAtom::Coordinate(a), 1);
        e.add_term(
            TermKey {
                position: pos,
                momenta: vec![],
            },
            Coefficient::one(),
        );
        e
    }

    pub fn momentum(spec: AlgebraSpec, a: u8) -> Self {
        let mut e = AlgebraElement::zero(spec);
        e.add_term(
            TermKey {
                position: PositionPart::new(),
                momenta: vec![a],
            },
            Coefficient::one(),
        );
        e
    }

    /// V_{,I} as an element (empty I is V itself).
    pub fn potential_deriv(spec: AlgebraSpec, mut idx: Vec<u8>) -> Self {
        idx.sort_unstable();
        let mut e = AlgebraElement::zero(spec);
        let mut pos = PositionPart::new();
        pos.insert(PositionAtom::PotentialDeriv(idx), 1);
        e.add_term(
            TermKey {
                position: pos,
                momenta: vec![],
            },
            Coefficient::one(),
        );
        e
    }

    /// A_{a,I} as an element. Zero in static mode when I touches time.
    pub fn gauge_deriv(spec: AlgebraSpec, a: u8, mut idx: Vec<u8>) -> Self {
        idx.sort_unstable();
        let mut e = AlgebraElement::zero(spec);
        if spec.is_static() && idx.contains(&0) {
            return e;
        }
        let mut pos = PositionPart::new();
        pos.insert(PositionAtom::GaugeDeriv(a, idx), 1);
        e.add_term(
            TermKey {
                position: pos,
                momenta: vec![],
            },
            Coefficient::one(),
        );
        e
    }

    /// F_{ab,I} expanded as A_{b,aI} - A_{a,bI}.
    pub fn field_strength(spec: AlgebraSpec, a: u8, b: u8, extra_idx: &[u8]) -> Self {
        let mut i1 = vec![a];
        i1.extend_from_slice(extra_idx);
        let mut i2 = vec![b];
        i2.extend_from_slice(extra_idx);
        AlgebraElement::gauge_deriv(spec, b, i1) - AlgebraElement::gauge_deriv(spec, a, i2)
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Coefficient)> {
        self.terms.iter()
    }

    pub fn has_generic_atoms(&self) -> bool {
        self.terms.keys().any(|k| k.has_generic_atoms())
    }

    pub(crate) fn add_term(&mut self, key: TermKey, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        if self.spec.is_static() {
            let dead = key.position.keys().any(|a| match a {
                PositionAtom::GaugeDeriv(_, idx) => idx.contains(&0),
                _ => false,
            });
            if dead {
                return;
            }
        }
        match self.terms.entry(key) {
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
        let mut out = AlgebraElement::zero(self.spec);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), c.clone() * v.clone());
        }
        out
    }

    /// Commutative partial derivative d/dx^a of the position content.
    /// Momenta pass through (normal-ordered coefficients do not depend on
    /// the ordering corrections here; this is the formal derivative used by
    /// the calculus relation tables and substitution).
    pub fn partial(&self, a: u8) -> Self {
        let mut out = AlgebraElement::zero(self.spec);
        let static_gauge = self.spec.is_static();
        for (k, c) in &self.terms {
            for (atom, pow) in &k.position {
                let mut rest = k.position.clone();
                if *pow == 1 {
                    rest.remove(atom);
                } else {
                    rest.insert(atom.clone(), pow - 1);
                }
                let factor = Coefficient::from_int(*pow as i128);
                match atom.derivative(a, static_gauge) {
                    AtomDeriv::Zero => {}
                    AtomDeriv::One => out.add_term(
                        TermKey {
                            position: rest,
                            momenta: k.momenta.clone(),
                        },
                        c.clone() * factor,
                    ),
                    AtomDeriv::Atom(d) => {
                        *rest.entry(d).or_insert(0) += 1;
                        out.add_term(
                            TermKey {
                                position: rest,
                                momenta: k.momenta.clone(),
                            },
                            c.clone() * factor,
                        );
                    }
                }
            }
        }
        out
    }

    /// Metric Laplacian eta^{ab} d_a d_b of the position content.
    pub fn laplacian(&self) -> Self {
        let mut out = AlgebraElement::zero(self.spec);
        for a in self.spec.indices() {
            let sign = Coefficient::from_int(self.spec.eta(a));
            out = out + self.partial(a).partial(a).scale(&sign);
        }
        out
    }

    /// Keep only the given hbar order of every coefficient.
    pub fn hbar_order(&self, order: i32) -> Self {
        let mut out = AlgebraElement::zero(self.spec);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.hbar_order(order));
        }
        out
    }

    pub fn checked_mul(&self, rhs: &AlgebraElement) -> Result<AlgebraElement, NcalgError> {
        if self.spec != rhs.spec {
            return Err(NcalgError::MixedSpec);
        }
        Ok(self * rhs)
    }

    pub fn commutator(&self, rhs: &AlgebraElement) -> AlgebraElement {
        self * rhs - rhs * self
    }

    pub fn pow(&self, n: u32) -> AlgebraElement {
        let mut out = AlgebraElement::one(self.spec);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    fn term_factors(key: &TermKey) -> Vec<Factor> {
        let mut fs = Vec::new();
        for (atom, pow) in &key.position {
            for _ in 0..*pow {
                fs.push(Factor::Pos(atom.clone()));
            }
        }
        for m in &key.momenta {
            fs.push(Factor::Mom(*m));
        }
        fs
    }

    /// Normalize a raw scalar-times-factor-sequence, accumulating into self.
    fn add_raw(&mut self, coeff: Coefficient, factors: Vec<Factor>) {
        let spec = self.spec;
        let mut work = vec![(coeff, factors)];
        while let Some((c, fs)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            let mut rewritten = false;
            for i in 0..fs.len().saturating_sub(1) {
                match (&fs[i], &fs[i + 1]) {
                    // p_a f = f p_a - i hbar f_{,a}
                    (Factor::Mom(a), Factor::Pos(atom)) => {
                        let a = *a;
                        let atom = atom.clone();
                        let mut swapped = fs.clone();
                        swapped.swap(i, i + 1);
                        work.push((c.clone(), swapped));
                        let corr = -Coefficient::i_hbar() * c.clone();
                        match atom.derivative(a, spec.is_static()) {
                            AtomDeriv::Zero => {}
                            AtomDeriv::One => {
                                let mut nf = fs[..i].to_vec();
                                nf.extend_from_slice(&fs[i + 2..]);
                                work.push((corr, nf));
                            }
                            AtomDeriv::Atom(d) => {
                                let mut nf = fs[..i].to_vec();
                                nf.push(Factor::Pos(d));
                                nf.extend_from_slice(&fs[i + 2..]);
                                work.push((corr, nf));
                            }
                        }
                        rewritten = true;
                    }
                    // p_a p_b = p_b p_a + i hbar q F_ab   (a > b)
                    (Factor::Mom(a), Factor::Mom(b)) if a > b => {
                        let (a, b) = (*a, *b);
                        let mut swapped = fs.clone();
                        swapped.swap(i, i + 1);
                        work.push((c.clone(), swapped));
                        if spec.is_relativistic() {
                            let ihq =
                                Coefficient::i_hbar() * Coefficient::symbol(Symbol::Charge);
                            // F_ab = A_{b,a} - A_{a,b}
                            for (comp, didx, sign) in [(b, a, 1i128), (a, b, -1i128)] {
                                if spec.is_static() && didx == 0 {
                                    continue;
                                }
                                let mut nf = fs[..i].to_vec();
                                nf.push(Factor::Pos(PositionAtom::GaugeDeriv(comp, vec![didx])));
                                nf.extend_from_slice(&fs[i + 2..]);
                                work.push((
                                    c.clone() * ihq.clone() * Coefficient::from_int(sign),
                                    nf,
                                ));
                            }
                        }
                        rewritten = true;
                    }
                    _ => {}
                }
                if rewritten {
                    break;
                }
            }
            if rewritten {
                continue;
            }
            let mut position = PositionPart::new();
            let mut momenta = Vec::new();
            for f in fs {
                match f {
                    Factor::Pos(a) => *position.entry(a).or_insert(0) += 1,
                    Factor::Mom(a) => momenta.push(a),
                }
            }
            self.add_term(TermKey { position, momenta }, c);
        }
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        assert_eq!(self.spec, rhs.spec, "mixed-spec operands");
        let mut out = self;
        for (k, c) in rhs.terms {
            out.add_term(k, c);
        }
        out
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: AlgebraElement) -> AlgebraElement {
        self + (-rhs)
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.spec);
        for (k, c) in self.terms {
            out.add_term(k, -c);
        }
        out
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.spec, rhs.spec, "mixed-spec operands");
        let mut out = AlgebraElement::zero(self.spec);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let mut fs = AlgebraElement::term_factors(ka);
                fs.extend(AlgebraElement::term_factors(kb));
                out.add_raw(ca.clone() * cb.clone(), fs);
            }
        }
        out
    }
}

impl Mul for AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: AlgebraElement) -> AlgebraElement {
        &self * &rhs
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            write!(f, "[{}]", c)?;
            for (atom, pow) in &k.position {
                match atom {
                    PositionAtom::Coordinate(a) => write!(f, " x{}", a)?,
                    PositionAtom::PotentialDeriv(idx) => write!(f, " V,{:?}", idx)?,
                    PositionAtom::GaugeDeriv(a, idx) => write!(f, " A{},{:?}", a, idx)?,
                }
                if *pow != 1 {
                    write!(f, "^{}", pow)?;
                }
            }
            for m in &k.momenta {
                write!(f, " p{}", m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Coefficient;

    fn nr1() -> AlgebraSpec {
        AlgebraSpec::nonrel(1)
    }

    #[test]
    fn defining_relation() {
        // x1 p1 - p1 x1 = i hbar
        let s = nr1();
        let x = AlgebraElement::coordinate(s, 1);
        let p = AlgebraElement::momentum(s, 1);
        let comm = x.commutator(&p);
        assert_eq!(comm, AlgebraElement::from_coefficient(s, Coefficient::i_hbar()));
    }

    #[test]
    fn coordinates_commute() {
        let s = AlgebraSpec::nonrel(2);
        let x1 = AlgebraElement::coordinate(s, 1);
        let x2 = AlgebraElement::coordinate(s, 2);
        assert!(x1.commutator(&x2).is_zero());
    }

    #[test]
    fn nonrel_momenta_commute() {
        let s = AlgebraSpec::nonrel(2);
        let p1 = AlgebraElement::momentum(s, 1);
        let p2 = AlgebraElement::momentum(s, 2);
        assert!(p1.commutator(&p2).is_zero());
    }

    #[test]
    fn relativistic_momentum_reorder() {
        // p2 p1 = p1 p2 - i hbar q (A[2|,1] - A[1|,2])
        let s = AlgebraSpec::relativistic(3);
        let p1 = AlgebraElement::momentum(s, 1);
        let p2 = AlgebraElement::momentum(s, 2);
        let lhs = &p2 * &p1;
        let f21 = AlgebraElement::field_strength(s, 2, 1, &[]);
        let expect = &p1 * &p2 + f21.scale(&Coefficient::i_hbar().mul(Coefficient::symbol(Symbol::Charge)));
        assert_eq!(lhs, expect);
    }

    #[test]
    fn potential_commutator_is_derivative() {
        // [V, p_i] = i hbar V_{,i}
        let s = nr1();
        let v = AlgebraElement::potential_deriv(s, vec![]);
        let p = AlgebraElement::momentum(s, 1);
        let comm = v.commutator(&p);
        let expect = AlgebraElement::potential_deriv(s, vec![1]).scale(&Coefficient::i_hbar());
        assert_eq!(comm, expect);
    }

    #[test]
    fn normalize_is_idempotent_on_products() {
        let s = AlgebraSpec::nonrel(2);
        let x1 = AlgebraElement::coordinate(s, 1);
        let p1 = AlgebraElement::momentum(s, 1);
        let p2 = AlgebraElement::momentum(s, 2);
        let e = &(&x1 * &p1) * &p2;
        // Multiplying by one re-runs the normalizer over every term.
        let renorm = &e * &AlgebraElement::one(s);
        assert_eq!(e, renorm);
    }

    #[test]
    fn static_mode_kills_time_derivatives() {
        let s = AlgebraSpec::relativistic_static(3);
        assert!(AlgebraElement::gauge_deriv(s, 1, vec![0]).is_zero());
        assert!(!AlgebraElement::gauge_deriv(s, 1, vec![2]).is_zero());
    }

    #[test]
    fn mixed_spec_rejected() {
        let a = AlgebraElement::coordinate(AlgebraSpec::nonrel(1), 1);
        let b = AlgebraElement::coordinate(AlgebraSpec::nonrel(2), 1);
        assert_eq!(a.checked_mul(&b), Err(NcalgError::MixedSpec));
    }
}
