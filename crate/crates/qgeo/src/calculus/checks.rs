//! Consistency suites for the first-order calculi.

use super::diff::{d_algebra, quotient_image, quotient_reduce_raw};
use super::spec::CalculusSpec;
use super::tensor::{FormGenerator, TensorElement};
use crate::ncalg::AlgebraElement;
use crate::report::{Identity, Report};
use crate::scalar::Coefficient;

/// d applied to every algebra relation must reproduce the form relations,
/// and the bimodule brackets must satisfy the Leibniz-Jacobi identity
/// [[dg, a], b] - [[dg, b], a] - [dg, [a, b]] = 0.
pub fn check_first_order_consistency(spec: &CalculusSpec) -> Report {
    let mut identities = Vec::new();
    let gens = spec.algebra_generators();
    let s = spec.algebra;

    // (i) d[g1, g2] = [dg1, g2] + [g1, dg2]
    for g1 in &gens {
        for g2 in &gens {
            let e1 = g1.element(s);
            let e2 = g2.element(s);
            let lhs = d_algebra(&e1.commutator(&e2), spec);
            let rhs = spec.relation(g1.differential(), *g2)
                - spec.relation(g2.differential(), *g1);
            identities.push(Identity::new(
                format!("dcompat/{},{}", g1.label(), g2.label()),
                lhs,
                rhs,
            ));
        }
    }

    // theta' = (m / i hbar) [x^i, dx^i] for any fixed spatial i; this pins
    // the sign of the central extension, which the antisymmetric
    // identities below cannot see.
    let m_over_ih = Coefficient::symbol(crate::scalar::Symbol::Mass)
        * Coefficient::i_hbar().inv().expect("monomial");
    for i in spec.algebra.spatial_indices() {
        let dx = TensorElement::generator(s, FormGenerator::Dx(i));
        let x = AlgebraElement::coordinate(s, i);
        let lhs = (dx.left_mul(&x) - dx.right_mul(&x, spec)).scale(&m_over_ih);
        let rhs = TensorElement::generator(s, FormGenerator::ThetaPrime);
        identities.push(Identity::new(format!("thetadef/x{}", i), lhs, rhs));
    }

    // (ii) Leibniz-Jacobi for every generator form against generator pairs.
    for form in spec.form_generators() {
        let dg = TensorElement::generator(s, form);
        for a in &gens {
            for b in &gens {
                let ea = a.element(s);
                let eb = b.element(s);
                let lhs = dg
                    .commutator_alg(&ea, spec)
                    .commutator_alg(&eb, spec)
                    - dg.commutator_alg(&eb, spec).commutator_alg(&ea, spec);
                let rhs = dg.commutator_alg(&ea.commutator(&eb), spec);
                identities.push(Identity::new(
                    format!("jacobi/{},{},{}", form.label(), a.label(), b.label()),
                    lhs,
                    rhs,
                ));
            }
        }
    }

    Report::from_identities(spec, identities)
}

/// Prop 5.3: the commutation relations of the eliminated generators are
/// implied by their images in the quotient.
pub fn check_quotient_consistency(spec: &CalculusSpec) -> Report {
    assert!(spec.is_reduced(), "quotient checks need the reduced calculus");
    let full = CalculusSpec {
        algebra: spec.algebra,
        variant: super::spec::CalculusVariant::Rel,
        flipped: spec.flipped.clone(),
    };
    let s = spec.algebra;
    let mut identities = Vec::new();

    for eliminated in [FormGenerator::Dx(0), FormGenerator::Dp(0)] {
        let image = quotient_image(eliminated, spec).unwrap();
        for g in full.algebra_generators() {
            // [image, g] computed in the quotient ...
            let lhs = image.commutator_alg(&g.element(s), spec);
            // ... equals the reduction of the full-calculus relation.
            let rhs = quotient_reduce_raw(&full.relation(eliminated, g), spec);
            identities.push(Identity::new(
                format!("quotient/[{},{}]", eliminated.label(), g.label()),
                lhs,
                rhs,
            ));
        }
    }

    Report::from_identities(spec, identities)
}

/// Lemma 5.4 style check: `e` commutes with every generator of the reduced
/// algebra, every generator form commutes with `e`, and d(e) reduces to 0.
pub fn central_closed_check(e: &AlgebraElement, spec: &CalculusSpec) -> Report {
    assert!(spec.is_reduced(), "centrality is checked in the reduced calculus");
    let s = spec.algebra;
    let mut identities = Vec::new();

    for g in spec.algebra_generators() {
        identities.push(Identity::vanishing(
            format!("central/[e,{}]", g.label()),
            TensorElement::from_algebra(e.commutator(&g.element(s))),
        ));
    }
    for form in spec.form_generators() {
        let t = TensorElement::generator(s, form);
        identities.push(Identity::vanishing(
            format!("central/[{},e]", form.label()),
            t.commutator_alg(e, spec),
        ));
    }
    identities.push(Identity::vanishing("closed/de", d_algebra(e, spec)));

    Report::from_identities(spec, identities)
}
