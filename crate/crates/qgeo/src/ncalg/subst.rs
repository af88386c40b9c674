//! Substitution of concrete potentials and gauge fields for the generic
//! atoms, with derivative atoms resolved by symbolic differentiation of
//! the binding.

use super::element::{AlgebraElement, PositionAtom, TermKey};
use crate::scalar::Coefficient;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SubstError {
    #[error("binding for {0} is not a polynomial in the coordinates")]
    NotPolynomial(String),
    #[error("binding given over a different algebra spec")]
    MixedSpec,
}

/// Concrete bindings: V -> polynomial, A_a -> polynomial per component.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    pub potential: Option<AlgebraElement>,
    pub gauge: BTreeMap<u8, AlgebraElement>,
}

impl Bindings {
    pub fn potential(v: AlgebraElement) -> Result<Self, SubstError> {
        check_polynomial(&v, "V")?;
        Ok(Bindings {
            potential: Some(v),
            gauge: BTreeMap::new(),
        })
    }

    pub fn gauge(components: BTreeMap<u8, AlgebraElement>) -> Result<Self, SubstError> {
        for (a, e) in &components {
            check_polynomial(e, &format!("A_{}", a))?;
        }
        Ok(Bindings {
            potential: None,
            gauge: components,
        })
    }

    /// All gauge components bound to zero (degenerate flat algebra).
    pub fn zero_gauge(spec: crate::ncalg::AlgebraSpec) -> Self {
        let mut gauge = BTreeMap::new();
        for a in spec.indices() {
            gauge.insert(a, AlgebraElement::zero(spec));
        }
        Bindings {
            potential: None,
            gauge,
        }
    }
}

/// The binding must be a commutative polynomial in the coordinates:
/// no momenta, no generic atoms.
fn check_polynomial(e: &AlgebraElement, what: &str) -> Result<(), SubstError> {
    for (key, _) in e.terms() {
        if !key.momenta.is_empty() || key.has_generic_atoms() {
            return Err(SubstError::NotPolynomial(what.to_string()));
        }
    }
    Ok(())
}

impl AlgebraElement {
    /// Replace generic atoms by derivatives of their bindings and
    /// renormalize. Atoms without a binding stay generic.
    pub fn substitute(&self, b: &Bindings) -> Result<AlgebraElement, SubstError> {
        let spec = self.spec();
        if let Some(v) = &b.potential {
            if v.spec() != spec {
                return Err(SubstError::MixedSpec);
            }
        }
        for e in b.gauge.values() {
            if e.spec() != spec {
                return Err(SubstError::MixedSpec);
            }
        }
        let mut out = AlgebraElement::zero(spec);
        'terms: for (key, coeff) in self.terms() {
            let mut factor = AlgebraElement::from_coefficient(spec, coeff.clone());
            for (atom, pow) in &key.position {
                let replacement: Option<AlgebraElement> = match atom {
                    PositionAtom::Coordinate(_) => None,
                    PositionAtom::PotentialDeriv(idx) => {
                        b.potential.as_ref().map(|v| differentiate(v, idx))
                    }
                    PositionAtom::GaugeDeriv(a, idx) => {
                        b.gauge.get(a).map(|e| differentiate(e, idx))
                    }
                };
                match replacement {
                    None => {
                        let single = single_atom_element(spec, atom.clone());
                        for _ in 0..*pow {
                            factor = &factor * &single;
                        }
                    }
                    Some(r) => {
                        if r.is_zero() {
                            continue 'terms;
                        }
                        for _ in 0..*pow {
                            factor = &factor * &r;
                        }
                    }
                }
            }
            for m in &key.momenta {
                factor = &factor * &AlgebraElement::momentum(spec, *m);
            }
            out = out + factor;
        }
        Ok(out)
    }
}

fn differentiate(e: &AlgebraElement, idx: &[u8]) -> AlgebraElement {
    let mut out = e.clone();
    for a in idx {
        out = out.partial(*a);
    }
    out
}

fn single_atom_element(
    spec: crate::ncalg::AlgebraSpec,
    atom: PositionAtom,
) -> AlgebraElement {
    let mut e = AlgebraElement::zero(spec);
    let mut pos = crate::ncalg::PositionPart::new();
    pos.insert(atom, 1);
    e.add_term(
        TermKey {
            position: pos,
            momenta: vec![],
        },
        Coefficient::one(),
    );
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::AlgebraSpec;
    use crate::scalar::Symbol;

    /// V = (1/2) m nu^2 sum_i (x^i)^2
    pub fn sho_potential(spec: AlgebraSpec) -> AlgebraElement {
        let mut v = AlgebraElement::zero(spec);
        for i in spec.spatial_indices() {
            let x = AlgebraElement::coordinate(spec, i);
            v = v + (&x * &x);
        }
        v.scale(
            &(Coefficient::from_ratio(1, 2)
                * Coefficient::symbol(Symbol::Mass)
                * Coefficient::symbol_pow(Symbol::Nu, 2)),
        )
    }

    #[test]
    fn sho_second_derivative() {
        // V |-> (1/2) m nu^2 x^2 : V_{,11} -> m nu^2
        let spec = AlgebraSpec::nonrel(1);
        let b = Bindings::potential(sho_potential(spec)).unwrap();
        let v11 = AlgebraElement::potential_deriv(spec, vec![1, 1]);
        let got = v11.substitute(&b).unwrap();
        let expect = AlgebraElement::from_coefficient(
            spec,
            Coefficient::symbol(Symbol::Mass) * Coefficient::symbol_pow(Symbol::Nu, 2),
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn zero_potential_kills_atoms() {
        let spec = AlgebraSpec::nonrel(2);
        let b = Bindings::potential(AlgebraElement::zero(spec)).unwrap();
        let v = AlgebraElement::potential_deriv(spec, vec![]);
        assert!(v.substitute(&b).unwrap().is_zero());
    }

    #[test]
    fn constant_gauge_flattens_field() {
        let spec = AlgebraSpec::relativistic(3);
        let mut comps = BTreeMap::new();
        for a in spec.indices() {
            comps.insert(
                a,
                AlgebraElement::from_coefficient(spec, Coefficient::from_int(a as i128 + 1)),
            );
        }
        let b = Bindings::gauge(comps).unwrap();
        let f = AlgebraElement::field_strength(spec, 1, 2, &[]);
        assert!(f.substitute(&b).unwrap().is_zero());
    }

    #[test]
    fn momentum_binding_rejected() {
        let spec = AlgebraSpec::nonrel(1);
        let p = AlgebraElement::momentum(spec, 1);
        assert!(Bindings::potential(p).is_err());
    }
}
