//! Exterior derivative, wedge products and the Prop 5.3 quotient.

use super::spec::CalculusSpec;
use super::tensor::{normalize_raw, raw_term, FormGenerator, FormWord, JoinOp, TensorElement};
use crate::ncalg::{AlgebraElement, PositionAtom, TermKey};
use crate::scalar::{Coefficient, Symbol};

/// d of a single position atom:
/// d f = f_{,a} dx^a - (i hbar / 2m) eta^{ab} f_{,ab} theta'.
fn d_atom(spec: &CalculusSpec, atom: &PositionAtom) -> TensorElement {
    let s = spec.algebra;
    let f = match atom {
        PositionAtom::Coordinate(a) => AlgebraElement::coordinate(s, *a),
        PositionAtom::PotentialDeriv(i) => AlgebraElement::potential_deriv(s, i.clone()),
        PositionAtom::GaugeDeriv(a, i) => AlgebraElement::gauge_deriv(s, *a, i.clone()),
    };
    let mut t = TensorElement::zero();
    for a in s.indices() {
        t = t + TensorElement::from_parts(f.partial(a), &[FormGenerator::Dx(a)]);
    }
    let lap_coef = -(Coefficient::i_hbar()
        * Coefficient::from_ratio(1, 2)
        * Coefficient::symbol_pow(Symbol::Mass, -1));
    t + TensorElement::from_parts(f.laplacian().scale(&lap_coef), &[FormGenerator::ThetaPrime])
}

/// The extended exterior derivative on the algebra, term by term via the
/// Leibniz rule: d(x^a) = dx^a, d(p_a) = dp_a, and the function rule with
/// its theta' correction on position atoms.
pub fn d_algebra(e: &AlgebraElement, spec: &CalculusSpec) -> TensorElement {
    let s = spec.algebra;
    let mut out = TensorElement::zero();
    for (key, coeff) in e.terms() {
        // Expand the ordered factor list of the term.
        enum F {
            Pos(PositionAtom),
            Mom(u8),
        }
        let mut factors: Vec<F> = Vec::new();
        for (atom, pow) in &key.position {
            for _ in 0..*pow {
                factors.push(F::Pos(atom.clone()));
            }
        }
        for m in &key.momenta {
            factors.push(F::Mom(*m));
        }
        for j in 0..factors.len() {
            let dj: TensorElement = match &factors[j] {
                F::Pos(atom) => d_atom(spec, atom),
                F::Mom(a) => TensorElement::from_parts(
                    AlgebraElement::one(s),
                    &[FormGenerator::Dp(*a)],
                ),
            };
            if dj.is_zero() {
                continue;
            }
            let prefix = slice(spec, key, 0, j).scale(coeff);
            let suffix = slice(spec, key, j + 1, factors.len());
            for (w, c) in dj.terms() {
                let raw = raw_term(
                    &prefix * c,
                    vec![(AlgebraElement::one(s), w.factors[0])],
                    vec![],
                    suffix.clone(),
                );
                let mut part = TensorElement::zero();
                super::tensor::normalize_into(&mut part, raw, spec);
                out = out + part;
            }
        }
    }
    
    if spec.is_reduced() {
        quotient_reduce_raw(&out, spec)
    } else {
        out
    }
}

fn slice(spec: &CalculusSpec, key: &TermKey, from: usize, to: usize) -> AlgebraElement {
    let s = spec.algebra;
    let mut pos_list: Vec<PositionAtom> = Vec::new();
    for (atom, pow) in &key.position {
        for _ in 0..*pow {
            pos_list.push(atom.clone());
        }
    }
    let n_pos = pos_list.len();
    let mut e = AlgebraElement::one(s);
    for i in from..to {
        let f = if i < n_pos {
            match &pos_list[i] {
                PositionAtom::Coordinate(a) => AlgebraElement::coordinate(s, *a),
                PositionAtom::PotentialDeriv(idx) => {
                    AlgebraElement::potential_deriv(s, idx.clone())
                }
                PositionAtom::GaugeDeriv(a, idx) => {
                    AlgebraElement::gauge_deriv(s, *a, idx.clone())
                }
            }
        } else {
            AlgebraElement::momentum(s, key.momenta[i - n_pos])
        };
        e = &e * &f;
    }
    e
}

/// Antisymmetrized product of two 1-forms into canonical Omega^2
/// (nonrelativistic calculus only).
pub fn wedge(a: &TensorElement, b: &TensorElement, spec: &CalculusSpec) -> TensorElement {
    a.wedge_product(b, spec)
}

/// Wedge of arbitrary wedge-shaped tensors (used for Omega^1 ^ Omega^2).
pub fn wedge_full(a: &TensorElement, b: &TensorElement, spec: &CalculusSpec) -> TensorElement {
    a.wedge_product(b, spec)
}

/// d on a rank-1 tensor: d(c . gen) = d(c) ^ gen (generator forms are
/// closed, d theta' = 0). Nonrelativistic only.
pub fn d_form(t: &TensorElement, spec: &CalculusSpec) -> TensorElement {
    let mut out = TensorElement::zero();
    for (w, c) in t.terms() {
        assert_eq!(w.rank(), 1, "d_form expects a rank-1 tensor");
        let dc = d_algebra(c, spec);
        out = out + dc.wedge_product(&TensorElement::generator(spec.algebra, w.factors[0]), spec);
    }
    out
}

/// d on canonical Omega^2: d(c . b ^ d) = d(c) ^ b ^ d, landing in the
/// internal Omega^3 canonical form. Used to verify that the lifted
/// symplectic 2-form is closed.
pub fn d_form2(t: &TensorElement, spec: &CalculusSpec) -> TensorElement {
    let mut out = TensorElement::zero();
    for (w, c) in t.terms() {
        assert_eq!(w.rank(), 2, "d_form2 expects an Omega^2 tensor");
        assert!(w.joins.iter().all(|j| *j == JoinOp::Wedge));
        let dc = d_algebra(c, spec);
        let pair = {
            let mut tt = TensorElement::zero();
            tt.add_word(
                FormWord::wedge(&w.factors),
                AlgebraElement::one(spec.algebra),
            );
            tt
        };
        out = out + dc.wedge_product(&pair, spec);
    }
    out
}

/// Prop 5.3 images of the eliminated generators.
pub fn quotient_image(g: FormGenerator, spec: &CalculusSpec) -> Option<TensorElement> {
    let s = spec.algebra;
    match g {
        // dx^0 = -(p_0/m) theta'
        FormGenerator::Dx(0) => {
            let coef = -Coefficient::symbol_pow(Symbol::Mass, -1);
            Some(TensorElement::from_parts(
                AlgebraElement::momentum(s, 0).scale(&coef),
                &[FormGenerator::ThetaPrime],
            ))
        }
        // dp_0 = q F_{0i} dx^i - (i hbar q / 2m) F_{0i,i} theta'
        FormGenerator::Dp(0) => {
            let q = Coefficient::symbol(Symbol::Charge);
            let mut t = TensorElement::zero();
            for i in s.spatial_indices() {
                t = t + TensorElement::from_parts(
                    AlgebraElement::field_strength(s, 0, i, &[]).scale(&q),
                    &[FormGenerator::Dx(i)],
                );
            }
            let c2 = -(Coefficient::i_hbar()
                * q
                * Coefficient::from_ratio(1, 2)
                * Coefficient::symbol_pow(Symbol::Mass, -1));
            let mut theta = AlgebraElement::zero(s);
            for i in s.spatial_indices() {
                theta = theta + AlgebraElement::field_strength(s, 0, i, &[i]);
            }
            Some(t + TensorElement::from_parts(theta.scale(&c2), &[FormGenerator::ThetaPrime]))
        }
        _ => None,
    }
}

/// Substitute the Prop 5.3 images for dx^0 and dp_0 throughout and
/// renormalize into the reduced calculus.
pub fn quotient_reduce(t: &TensorElement, spec: &CalculusSpec) -> TensorElement {
    assert!(spec.is_reduced(), "quotient_reduce maps into the reduced calculus");
    quotient_reduce_raw(t, spec)
}

pub(crate) fn quotient_reduce_raw(t: &TensorElement, spec: &CalculusSpec) -> TensorElement {
    let needs = t
        .terms()
        .any(|(w, _)| w.contains(FormGenerator::Dx(0)) || w.contains(FormGenerator::Dp(0)));
    if !needs {
        return t.clone();
    }
    let s = spec.algebra;
    let mut out = TensorElement::zero();
    for (w, c) in t.terms() {
        let hit = w
            .factors
            .iter()
            .position(|g| *g == FormGenerator::Dx(0) || *g == FormGenerator::Dp(0));
        match hit {
            None => out.add_word(w.clone(), c.clone()),
            Some(j) => {
                let image = quotient_image(w.factors[j], spec).unwrap();
                for (iw, ic) in image.terms() {
                    let mut parts: Vec<(AlgebraElement, FormGenerator)> = Vec::new();
                    for (k, g) in w.factors.iter().enumerate() {
                        if k == j {
                            parts.push((ic.clone(), iw.factors[0]));
                        } else {
                            parts.push((AlgebraElement::one(s), *g));
                        }
                    }
                    let raw = raw_term(
                        c.clone(),
                        parts,
                        w.joins.clone(),
                        AlgebraElement::one(s),
                    );
                    out = out + normalize_raw(raw, spec);
                }
            }
        }
    }
    // Images introduce no eliminated generators, but coefficients moving
    // left can in principle re-expose them through relation entries.
    quotient_reduce_raw(&out, spec)
}
