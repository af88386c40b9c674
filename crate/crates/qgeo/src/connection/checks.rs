//! Identity suites for connections: bimodule certification, geodesic
//! velocity conditions, invariant structures, torsion/curvature and the
//! Prop 5.3 descent.

use super::structures::{
    build_hamiltonian, derive_sigma, kg_connection, kg_vector_field, Connection, MetricG,
    SigmaTable, VectorField,
};
use crate::calculus::{
    d_algebra, d_form2, quotient_image, quotient_reduce, CalculusSpec, CalculusVariant,
    FormGenerator, JoinOp, TensorElement,
};
use crate::ncalg::AlgebraElement;
use crate::report::{Identity, Report};
use crate::scalar::{Coefficient, Symbol};

/// X applied to both sides of every calculus relation agrees, i.e. X is a
/// bimodule map.
pub fn check_vector_field_bimodule(x: &VectorField, spec: &CalculusSpec) -> Report {
    let s = spec.algebra;
    let mut identities = Vec::new();
    for form in spec.form_generators() {
        let t = TensorElement::generator(s, form);
        for g in spec.algebra_generators() {
            let ge = g.element(s);
            let lhs = x.apply_rank1(&t.commutator_alg(&ge, spec));
            let rhs = x.table[&form].commutator(&ge);
            identities.push(Identity::new(
                format!("xbimodule/[{},{}]", form.label(), g.label()),
                TensorElement::from_algebra(lhs),
                TensorElement::from_algebra(rhs),
            ));
        }
    }
    Report::from_identities(spec, identities)
}

/// For every generator pair and every algebra generator g:
/// sigma([pair, g]) = [sigma(pair), g]. Mechanizes the Appendix A ledger.
pub fn check_sigma_bimodule(sigma: &SigmaTable, spec: &CalculusSpec) -> Report {
    let s = spec.algebra;
    let mut identities = Vec::new();
    for alpha in spec.form_generators() {
        for omega in spec.form_generators() {
            let pair = TensorElement::generator(s, alpha)
                .tensor_product(&TensorElement::generator(s, omega), spec);
            for g in spec.algebra_generators() {
                let ge = g.element(s);
                let lhs = sigma.apply_rank2(&pair.commutator_alg(&ge, spec));
                let rhs = sigma.entry(alpha, omega).commutator_alg(&ge, spec);
                identities.push(Identity::new(
                    format!(
                        "sigmabimodule/[{},{},{}]",
                        alpha.label(),
                        omega.label(),
                        g.label()
                    ),
                    lhs,
                    rhs,
                ));
            }
        }
    }
    Report::from_identities(spec, identities)
}

/// The two geodesic velocity conditions:
/// (X (x) X)(sigma - id) = 0 and
/// (X (x) X) nabla d a = [X(d a), h] / (i hbar).
pub fn geodesic_velocity_check(
    x: &VectorField,
    nabla: &Connection,
    spec: &CalculusSpec,
) -> Report {
    let s = spec.algebra;
    let sigma = derive_sigma(nabla, spec).expect("sigma derivable");
    let h = build_hamiltonian(spec);
    let inv_ih = Coefficient::i_hbar().inv().expect("monomial");
    let mut identities = Vec::new();

    for alpha in spec.form_generators() {
        for omega in spec.form_generators() {
            let pair = TensorElement::generator(s, alpha)
                .tensor_product(&TensorElement::generator(s, omega), spec);
            let lhs = x.xx(sigma.entry(alpha, omega), spec) - x.xx(&pair, spec);
            identities.push(Identity::vanishing(
                format!("auto/sigma-id/{},{}", alpha.label(), omega.label()),
                TensorElement::from_algebra(lhs),
            ));
        }
    }

    for form in spec.form_generators() {
        let lhs = x.xx(&nabla.table[&form], spec);
        let rhs = x.table[&form].commutator(&h).scale(&inv_ih);
        identities.push(Identity::new(
            format!("auto/parallel/{}", form.label()),
            TensorElement::from_algebra(lhs),
            TensorElement::from_algebra(rhs),
        ));
    }

    Report::from_identities(spec, identities)
}

/// The central 1-forms of Prop 4.3.
pub fn invariant_one_forms(spec: &CalculusSpec) -> Vec<(String, TensorElement)> {
    let s = spec.algebra;
    let inv_m = Coefficient::symbol_pow(Symbol::Mass, -1);
    let mut forms = Vec::new();
    for i in s.indices() {
        let omega_i = TensorElement::generator(s, FormGenerator::Dp(i))
            + TensorElement::from_parts(
                AlgebraElement::potential_deriv(s, vec![i]),
                &[FormGenerator::ThetaPrime],
            );
        forms.push((format!("omega{}", i), omega_i));
        let eta_i = TensorElement::generator(s, FormGenerator::Dx(i))
            + TensorElement::from_parts(
                AlgebraElement::momentum(s, i).scale(&-inv_m.clone()),
                &[FormGenerator::ThetaPrime],
            );
        forms.push((format!("eta{}", i), eta_i));
    }
    forms
}

/// Prop 4.3: centrality, X-annihilation and covariant constancy of
/// omega_i, eta^i and G, plus G = omega_i (x) eta^i - eta^i (x) omega_i.
pub fn invariant_structure_check(
    x: &VectorField,
    nabla: &Connection,
    metric: &MetricG,
    spec: &CalculusSpec,
) -> Report {
    let s = spec.algebra;
    let sigma = derive_sigma(nabla, spec).expect("sigma derivable");
    let mut identities = Vec::new();
    let forms = invariant_one_forms(spec);

    for (name, f) in &forms {
        for g in spec.algebra_generators() {
            identities.push(Identity::vanishing(
                format!("central/[{},{}]", name, g.label()),
                f.commutator_alg(&g.element(s), spec),
            ));
        }
        identities.push(Identity::vanishing(
            format!("annihilated/X({})", name),
            TensorElement::from_algebra(x.apply_rank1(f)),
        ));
        identities.push(Identity::vanishing(
            format!("parallel/nabla({})", name),
            nabla.apply_rank1(f, spec),
        ));
    }
    identities.push(Identity::vanishing(
        "parallel/nabla(theta')",
        nabla.table[&FormGenerator::ThetaPrime].clone(),
    ));

    for g in spec.algebra_generators() {
        identities.push(Identity::vanishing(
            format!("central/[G,{}]", g.label()),
            metric.tensor.commutator_alg(&g.element(s), spec),
        ));
    }
    identities.push(Identity::vanishing(
        "kernel/(X(x)id)G",
        x.apply_first(&metric.tensor),
    ));
    identities.push(Identity::vanishing(
        "kernel/(id(x)X)G",
        x.apply_second(&metric.tensor, spec),
    ));
    identities.push(Identity::vanishing(
        "parallel/nablaG",
        nabla.apply_rank2(&metric.tensor, &sigma, spec),
    ));

    // G = omega_i (x) eta^i - eta^i (x) omega_i
    let mut built = TensorElement::zero();
    for i in s.indices() {
        let omega_i = &forms
            .iter()
            .find(|(n, _)| n == &format!("omega{}", i))
            .unwrap()
            .1;
        let eta_i = &forms
            .iter()
            .find(|(n, _)| n == &format!("eta{}", i))
            .unwrap()
            .1;
        built = built + omega_i.tensor_product(eta_i, spec) - eta_i.tensor_product(omega_i, spec);
    }
    identities.push(Identity::new(
        "algebraic/G=omega^eta-eta^omega",
        built,
        metric.tensor.clone(),
    ));

    Report::from_identities(spec, identities)
}

/// Torsion of the right connection: T = wedge compose nabla + d, per
/// generator (d of a generator form vanishes).
pub fn torsion(nabla: &Connection, spec: &CalculusSpec) -> Vec<(FormGenerator, TensorElement)> {
    assert!(
        spec.variant == CalculusVariant::NonRel,
        "torsion needs Omega^2, defined for the nonrelativistic calculus"
    );
    spec.form_generators()
        .into_iter()
        .map(|gen| {
            let n = &nabla.table[&gen];
            let t = if n.is_zero() {
                TensorElement::zero()
            } else {
                n.set_join(0, JoinOp::Wedge, spec)
            };
            (gen, t)
        })
        .collect()
}

/// Curvature of the right connection: R = (id (x) d + nabla wedge id) nabla.
pub fn curvature(nabla: &Connection, spec: &CalculusSpec) -> Vec<(FormGenerator, TensorElement)> {
    assert!(
        spec.variant == CalculusVariant::NonRel,
        "curvature needs Omega^2, defined for the nonrelativistic calculus"
    );
    let s = spec.algebra;
    spec.form_generators()
        .into_iter()
        .map(|gen| {
            let mut r = TensorElement::zero();
            for (w, a) in nabla.table[&gen].right_normal_parts(spec) {
                let (alpha, beta) = (w.factors[0], w.factors[1]);
                // (id (x) d): alpha (x) d(beta . a) = -alpha (x) (beta ^ da)
                let da = d_algebra(&a, spec);
                let alpha_t = TensorElement::generator(s, alpha);
                let beta_t = TensorElement::generator(s, beta);
                let beta_da = beta_t.wedge_product(&da, spec);
                r = r - alpha_t.tensor_product(&beta_da, spec);
                // (nabla wedge id): (nabla alpha ^ beta) . a
                let na = &nabla.table[&alpha];
                if !na.is_zero() {
                    let wedged = na
                        .tensor_product(&beta_t, spec)
                        .set_join(1, JoinOp::Wedge, spec);
                    r = r + wedged.right_mul(&a, spec);
                }
            }
            (gen, r)
        })
        .collect()
}

/// Cor 4.4: omega-tilde = wedge(G) equals
/// -2(dx^i ^ dp_i + dh ^ theta'), is closed, and is covariantly constant.
pub fn omega_tilde_check(
    nabla: &Connection,
    metric: &MetricG,
    spec: &CalculusSpec,
) -> Report {
    let s = spec.algebra;
    let sigma = derive_sigma(nabla, spec).expect("sigma derivable");
    let mut identities = Vec::new();

    let omega_tilde = metric.tensor.set_join(0, JoinOp::Wedge, spec);

    // Expected form.
    let h = build_hamiltonian(spec);
    let dh = d_algebra(&h, spec);
    let theta = TensorElement::generator(s, FormGenerator::ThetaPrime);
    let mut expected = TensorElement::zero();
    for i in s.indices() {
        expected = expected
            + TensorElement::generator(s, FormGenerator::Dx(i))
                .wedge_product(&TensorElement::generator(s, FormGenerator::Dp(i)), spec);
    }
    expected = expected + dh.wedge_product(&theta, spec);
    expected = expected.scale(&Coefficient::from_int(-2));
    identities.push(Identity::new(
        "omegatilde/wedgeG",
        omega_tilde.clone(),
        expected,
    ));

    identities.push(Identity::vanishing(
        "omegatilde/closed",
        d_form2(&omega_tilde, spec),
    ));

    // Covariant constancy: nabla on Omega^2 through the rank-3 lift.
    let mut nabla_omega2 = TensorElement::zero();
    for (w, a) in omega_tilde.right_normal_parts(spec) {
        let (beta, delta) = (w.factors[0], w.factors[1]);
        let beta_t = TensorElement::generator(s, beta);
        let mut lift = TensorElement::zero();
        for (nw, nc) in nabla.table[&beta].terms() {
            let braided = sigma.entry(nw.factors[1], delta);
            let first = TensorElement::from_parts(nc.clone(), &[nw.factors[0]]);
            lift = lift + first.tensor_product(braided, spec);
        }
        lift = lift + beta_t.tensor_product(&nabla.table[&delta], spec);
        let wedged = lift.set_join(0, JoinOp::Wedge, spec);
        let pair = beta_t.wedge_product(&TensorElement::generator(s, delta), spec);
        nabla_omega2 = nabla_omega2
            + wedged.right_mul(&a, spec)
            + pair.tensor_product(&d_algebra(&a, spec), spec);
    }
    identities.push(Identity::vanishing("omegatilde/parallel", nabla_omega2));

    Report::from_identities(spec, identities)
}

/// Prop 5.3 descent: the full-calculus nabla and X of the eliminated
/// generators agree with nabla and X of their images in the quotient.
pub fn descent_check(spec: &CalculusSpec) -> Report {
    assert!(spec.is_reduced(), "descent lands in the reduced calculus");
    let full_spec = CalculusSpec {
        algebra: spec.algebra,
        variant: CalculusVariant::Rel,
        flipped: spec.flipped.clone(),
    };
    let nabla_full = kg_connection(&full_spec, None);
    let nabla_red = kg_connection(spec, None);
    let x_full = kg_vector_field(&full_spec, None);
    let x_red = kg_vector_field(spec, None);
    let mut identities = Vec::new();

    for eliminated in [FormGenerator::Dx(0), FormGenerator::Dp(0)] {
        let image = quotient_image(eliminated, spec).unwrap();
        identities.push(Identity::new(
            format!("descent/nabla({})", eliminated.label()),
            quotient_reduce(&nabla_full.table[&eliminated], spec),
            nabla_red.apply_rank1(&image, spec),
        ));
        identities.push(Identity::new(
            format!("descent/X({})", eliminated.label()),
            TensorElement::from_algebra(x_full.table[&eliminated].clone()),
            TensorElement::from_algebra(x_red.apply_rank1(&image)),
        ));
    }

    Report::from_identities(spec, identities)
}
