//! Spot checks of the symbolic machinery against hand-verifiable values:
//! the exterior derivative with its theta' correction, the Prop 5.3
//! quotient images, the SHO specializations of the connection tables, the
//! torsion values and the lifted symplectic form.

use qgeo::calculus::{
    d_algebra, d_form2, quotient_image, quotient_reduce, wedge, CalculusSpec, FormGenerator,
    JoinOp, TensorElement,
};
use qgeo::connection::{
    build_hamiltonian, derive_sigma, heisenberg_connection, heisenberg_metric,
    heisenberg_vector_field, torsion,
};
use qgeo::ncalg::{AlgebraElement, AlgebraSpec, Bindings};
use qgeo::scalar::{Coefficient, Symbol};

fn sho_bindings(spec: AlgebraSpec) -> Bindings {
    let mut v = AlgebraElement::zero(spec);
    for i in spec.spatial_indices() {
        let x = AlgebraElement::coordinate(spec, i);
        v = v + (&x * &x);
    }
    Bindings::potential(v.scale(
        &(Coefficient::from_ratio(1, 2)
            * Coefficient::symbol(Symbol::Mass)
            * Coefficient::symbol_pow(Symbol::Nu, 2)),
    ))
    .unwrap()
}

#[test]
fn d_of_coordinate_is_its_differential() {
    let spec = CalculusSpec::nonrel(1);
    let x = AlgebraElement::coordinate(spec.algebra, 1);
    assert_eq!(
        d_algebra(&x, &spec),
        TensorElement::generator(spec.algebra, FormGenerator::Dx(1))
    );
}

#[test]
fn d_of_x_squared_carries_theta_correction() {
    // d(x^2) = 2 x dx - (i hbar / m) theta' at n = 1
    let spec = CalculusSpec::nonrel(1);
    let s = spec.algebra;
    let x = AlgebraElement::coordinate(s, 1);
    let got = d_algebra(&(&x * &x), &spec);
    let expect = TensorElement::from_parts(
        x.scale(&Coefficient::from_int(2)),
        &[FormGenerator::Dx(1)],
    ) + TensorElement::from_parts(
        AlgebraElement::from_coefficient(
            s,
            -(Coefficient::i_hbar() * Coefficient::symbol_pow(Symbol::Mass, -1)),
        ),
        &[FormGenerator::ThetaPrime],
    );
    assert_eq!(got, expect);
}

#[test]
fn d_of_hamiltonian_left_normalizes() {
    // dh = (dx^i) V_i + (p_i/m) dp_i; left-normalized the first term is
    // V_i dx^i - (i hbar/m) V_ii theta'.
    let spec = CalculusSpec::nonrel(2);
    let s = spec.algebra;
    let h = build_hamiltonian(&spec);
    let got = d_algebra(&h, &spec);
    let mut expect = TensorElement::zero();
    let inv_m = Coefficient::symbol_pow(Symbol::Mass, -1);
    for i in s.indices() {
        expect = expect + TensorElement::from_parts(
            AlgebraElement::potential_deriv(s, vec![i]),
            &[FormGenerator::Dx(i)],
        );
        expect = expect + TensorElement::from_parts(
            AlgebraElement::momentum(s, i).scale(&inv_m),
            &[FormGenerator::Dp(i)],
        );
        expect = expect + TensorElement::from_parts(
            AlgebraElement::potential_deriv(s, vec![i, i])
                .scale(&-(Coefficient::i_hbar() * inv_m.clone())),
            &[FormGenerator::ThetaPrime],
        );
    }
    assert_eq!(got, expect);
}

#[test]
fn quotient_images_match() {
    let spec = CalculusSpec::reduced(3, false);
    let s = spec.algebra;
    // dx^0 -> -(p_0/m) theta'
    let dx0 = quotient_image(FormGenerator::Dx(0), &spec).unwrap();
    let expect = TensorElement::from_parts(
        AlgebraElement::momentum(s, 0).scale(&-Coefficient::symbol_pow(Symbol::Mass, -1)),
        &[FormGenerator::ThetaPrime],
    );
    assert_eq!(dx0, expect);
    // theta' is untouched by the quotient
    let theta = TensorElement::generator(s, FormGenerator::ThetaPrime);
    assert_eq!(quotient_reduce(&theta, &spec), theta);
}

#[test]
fn sho_connection_specializes() {
    // SHO: nabla(dp_i) = -m nu^2 theta' (x) dx^i
    let spec = CalculusSpec::nonrel(2);
    let s = spec.algebra;
    let b = sho_bindings(s);
    let nabla = heisenberg_connection(&spec, None);
    for i in s.indices() {
        let got = nabla.table[&FormGenerator::Dp(i)].substitute(&b).unwrap();
        let expect = TensorElement::from_parts(
            AlgebraElement::from_coefficient(
                s,
                -(Coefficient::symbol(Symbol::Mass) * Coefficient::symbol_pow(Symbol::Nu, 2)),
            ),
            &[FormGenerator::ThetaPrime, FormGenerator::Dx(i)],
        );
        assert_eq!(got, expect, "i = {}", i);
    }
}

#[test]
fn sho_sigma_specializes() {
    // sigma(dx^i (x) dp_j) = dp_j (x) dx^i + i hbar nu^2 delta_ij theta'^2
    let spec = CalculusSpec::nonrel(2);
    let s = spec.algebra;
    let b = sho_bindings(s);
    let nabla = heisenberg_connection(&spec, None);
    let sigma = derive_sigma(&nabla, &spec).unwrap();
    for i in s.indices() {
        for j in s.indices() {
            let got = sigma
                .entry(FormGenerator::Dx(i), FormGenerator::Dp(j))
                .substitute(&b)
                .unwrap();
            let mut expect = TensorElement::from_parts(
                AlgebraElement::one(s),
                &[FormGenerator::Dp(j), FormGenerator::Dx(i)],
            );
            if i == j {
                expect = expect + TensorElement::from_parts(
                    AlgebraElement::from_coefficient(
                        s,
                        Coefficient::i_hbar() * Coefficient::symbol_pow(Symbol::Nu, 2),
                    ),
                    &[FormGenerator::ThetaPrime, FormGenerator::ThetaPrime],
                );
            }
            assert_eq!(got, expect, "(i,j) = ({},{})", i, j);
        }
    }
}

#[test]
fn sho_metric_theta_theta_term() {
    // at n = 1 the theta' (x) theta' coefficient of G is i hbar nu^2
    let spec = CalculusSpec::nonrel(1);
    let s = spec.algebra;
    let b = sho_bindings(s);
    let g = heisenberg_metric(&spec, None).tensor.substitute(&b).unwrap();
    let word_coeff = g
        .terms()
        .find(|(w, _)| {
            w.factors == [FormGenerator::ThetaPrime, FormGenerator::ThetaPrime]
        })
        .map(|(_, c)| c.clone())
        .unwrap();
    let expect = AlgebraElement::from_coefficient(
        s,
        Coefficient::i_hbar() * Coefficient::symbol_pow(Symbol::Nu, 2),
    );
    assert_eq!(word_coeff, expect);
}

#[test]
fn torsion_values() {
    // T(theta') = 0, T(dx^i) = -(1/m) dp_i ^ theta',
    // T(dp_i) = V_{,ji} dx^j ^ theta'
    let spec = CalculusSpec::nonrel(2);
    let s = spec.algebra;
    let nabla = heisenberg_connection(&spec, None);
    for (gen, t) in torsion(&nabla, &spec) {
        match gen {
            FormGenerator::ThetaPrime => assert!(t.is_zero()),
            FormGenerator::Dx(i) => {
                let mut expect = TensorElement::zero();
                expect.add_word(
                    qgeo::calculus::FormWord {
                        factors: vec![FormGenerator::Dp(i), FormGenerator::ThetaPrime],
                        joins: vec![JoinOp::Wedge],
                    },
                    AlgebraElement::from_coefficient(
                        s,
                        -Coefficient::symbol_pow(Symbol::Mass, -1),
                    ),
                );
                assert_eq!(t, expect);
            }
            FormGenerator::Dp(i) => {
                let mut expect = TensorElement::zero();
                for j in s.indices() {
                    expect.add_word(
                        qgeo::calculus::FormWord {
                            factors: vec![FormGenerator::Dx(j), FormGenerator::ThetaPrime],
                            joins: vec![JoinOp::Wedge],
                        },
                        AlgebraElement::potential_deriv(s, vec![j, i]),
                    );
                }
                assert_eq!(t, expect);
            }
        }
    }
}

#[test]
fn omega_tilde_with_zero_potential() {
    // V -> 0: wedge(G) = -2(dx^i ^ dp_i + (p_i/m) dp_i ^ theta')
    let spec = CalculusSpec::nonrel(2);
    let s = spec.algebra;
    let b = Bindings::potential(AlgebraElement::zero(s)).unwrap();
    let g = heisenberg_metric(&spec, None);
    let omega_tilde = g.tensor.set_join(0, JoinOp::Wedge, &spec).substitute(&b).unwrap();
    let mut expect = TensorElement::zero();
    let inv_m = Coefficient::symbol_pow(Symbol::Mass, -1);
    for i in s.indices() {
        expect = expect + TensorElement::generator(s, FormGenerator::Dx(i)).wedge_product(
            &TensorElement::generator(s, FormGenerator::Dp(i)),
            &spec,
        );
        let p_dp = TensorElement::from_parts(
            AlgebraElement::momentum(s, i).scale(&inv_m),
            &[FormGenerator::Dp(i)],
        );
        expect = expect + p_dp.wedge_product(
            &TensorElement::generator(s, FormGenerator::ThetaPrime),
            &spec,
        );
    }
    assert_eq!(omega_tilde, expect.scale(&Coefficient::from_int(-2)));
}

#[test]
fn wedge_antisymmetry_and_corrections() {
    let spec = CalculusSpec::nonrel(2);
    let s = spec.algebra;
    let dx1 = TensorElement::generator(s, FormGenerator::Dx(1));
    assert!(wedge(&dx1, &dx1, &spec).is_zero());
    // dp_i ^ dp_j + dp_j ^ dp_i = i hbar V_{,ijk} dx^k ^ theta'
    let dp1 = TensorElement::generator(s, FormGenerator::Dp(1));
    let dp2 = TensorElement::generator(s, FormGenerator::Dp(2));
    let anti = wedge(&dp1, &dp2, &spec) + wedge(&dp2, &dp1, &spec);
    let mut expect = TensorElement::zero();
    for k in s.indices() {
        let dxk = TensorElement::from_parts(
            AlgebraElement::potential_deriv(s, vec![1, 2, k]).scale(&Coefficient::i_hbar()),
            &[FormGenerator::Dx(k)],
        );
        expect = expect + dxk.wedge_product(
            &TensorElement::generator(s, FormGenerator::ThetaPrime),
            &spec,
        );
    }
    assert_eq!(anti, expect);
    // theta' ^ theta' = 0
    let theta = TensorElement::generator(s, FormGenerator::ThetaPrime);
    assert!(wedge(&theta, &theta, &spec).is_zero());
}

#[test]
fn d_form2_kills_omega_tilde() {
    let spec = CalculusSpec::nonrel(2);
    let g = heisenberg_metric(&spec, None);
    let omega_tilde = g.tensor.set_join(0, JoinOp::Wedge, &spec);
    assert!(d_form2(&omega_tilde, &spec).is_zero());
}

#[test]
fn vector_field_kills_invariant_forms() {
    let spec = CalculusSpec::nonrel(3);
    let x = heisenberg_vector_field(&spec, None);
    for (_, f) in qgeo::connection::invariant_one_forms(&spec) {
        assert!(x.apply_rank1(&f).is_zero());
    }
}

#[test]
fn relativistic_flat_gauge_connection_vanishes() {
    // A_a constant: every table entry of the relativistic connection dies.
    let spec = CalculusSpec::relativistic(3);
    let s = spec.algebra;
    let b = Bindings::zero_gauge(s);
    let nabla = qgeo::connection::kg_connection(&spec, None);
    for (gen, t) in &nabla.table {
        assert!(
            t.substitute(&b).unwrap().is_zero(),
            "nabla({}) should vanish at F = 0",
            gen.label()
        );
    }
    let xf = qgeo::connection::kg_vector_field(&spec, None);
    // X(dx^a) = eta^{aa} p_a / m survives, X(dp_c) dies.
    for a in s.indices() {
        assert!(!xf.table[&FormGenerator::Dx(a)].is_zero());
        assert!(xf.table[&FormGenerator::Dp(a)]
            .substitute(&b)
            .unwrap()
            .is_zero());
    }
}

#[test]
fn coefficient_pushes_preserve_the_element() {
    // Contract a rank-1 tensor with the geodesic field from both the
    // left-canonical and the right-normalized presentation; the results
    // must agree symbolically and as grid operators after a concrete
    // quadratic substitution.
    let spec = CalculusSpec::nonrel(1);
    let s = spec.algebra;
    let x = heisenberg_vector_field(&spec, None);
    let h = build_hamiltonian(&spec);
    let nabla = heisenberg_connection(&spec, None);
    let p2 = &AlgebraElement::momentum(s, 1) * &AlgebraElement::momentum(s, 1);
    let candidates = vec![
        d_algebra(&h, &spec),
        d_algebra(&p2, &spec),
        d_algebra(&h, &spec).right_mul(&AlgebraElement::coordinate(s, 1), &spec),
    ];
    let _ = &nabla;
    let b = sho_bindings(s);
    let rep = qgeo::ncalg::GridRepresentation::new(
        128,
        10.0,
        qgeo::ncalg::NumericBindings::default(),
    );
    for t in candidates {
        let left = x.apply_rank1(&t);
        let mut right = AlgebraElement::zero(s);
        for (w, a) in t.right_normal_parts(&spec) {
            right = right + &x.table[&w.factors[0]].clone() * &a;
        }
        assert_eq!(left, right);
        let ml = rep.represent(&left.substitute(&b).unwrap()).unwrap();
        let mut diff = ml;
        let mr = rep.represent(&right.substitute(&b).unwrap()).unwrap();
        diff.add_scaled(&mr, num_complex::Complex64::new(-1.0, 0.0));
        assert!(qgeo::ncalg::oracle_norm(&rep, &diff) <= 1e-8);
    }
}
