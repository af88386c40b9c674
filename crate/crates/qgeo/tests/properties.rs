//! Property tests for the normal-ordering engine and the graded calculus:
//! idempotent normalization, associativity, Jacobi, the classical limit,
//! the Leibniz rule, d^2 = 0 and theta' centrality on randomized elements.

use proptest::prelude::*;
use qgeo::calculus::{d_algebra, d_form, CalculusSpec, FormGenerator, TensorElement};
use qgeo::ncalg::{AlgebraElement, AlgebraSpec};
use qgeo::scalar::Coefficient;

#[derive(Clone, Debug)]
enum Atom {
    X(u8),
    P(u8),
    Potential(Vec<u8>),
    Gauge(u8, Vec<u8>),
    Scalar(i128, i128),
}

fn atom_strategy(spec: AlgebraSpec) -> impl Strategy<Value = Atom> {
    let idx = spec.indices();
    let lo = *idx.first().unwrap();
    let hi = *idx.last().unwrap();
    let relativistic = spec.is_relativistic();
    prop_oneof![
        (lo..=hi).prop_map(Atom::X),
        (lo..=hi).prop_map(Atom::P),
        prop::collection::vec(lo..=hi, 0..2).prop_map(move |v| {
            if relativistic {
                Atom::Gauge(lo, v)
            } else {
                Atom::Potential(v)
            }
        }),
        ((-3i128..=3), (1i128..=3)).prop_map(|(n, d)| Atom::Scalar(n, d)),
    ]
}

fn build(spec: AlgebraSpec, atoms: Vec<Atom>) -> AlgebraElement {
    let mut e = AlgebraElement::one(spec);
    for a in atoms {
        let f = match a {
            Atom::X(i) => AlgebraElement::coordinate(spec, i),
            Atom::P(i) => AlgebraElement::momentum(spec, i),
            Atom::Potential(idx) => AlgebraElement::potential_deriv(spec, idx),
            Atom::Gauge(c, idx) => AlgebraElement::gauge_deriv(spec, c, idx),
            Atom::Scalar(n, d) => {
                AlgebraElement::from_coefficient(spec, Coefficient::from_ratio(n, d))
            }
        };
        e = &e * &f;
    }
    e
}

fn element_strategy(spec: AlgebraSpec) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec(prop::collection::vec(atom_strategy(spec), 0..4), 1..3)
        .prop_map(move |terms| {
            let mut e = AlgebraElement::zero(spec);
            for t in terms {
                e = e + build(spec, t);
            }
            e
        })
}

/// Drop every term with more than `cap` momentum factors.
fn cap_momentum_degree(e: &AlgebraElement, cap: usize) -> AlgebraElement {
    let mut out = AlgebraElement::zero(e.spec());
    for (key, coeff) in e.terms() {
        if key.momenta.len() <= cap {
            let mut single = AlgebraElement::one(e.spec());
            for (atom, pow) in &key.position {
                let f = match atom {
                    qgeo::ncalg::PositionAtom::Coordinate(a) => {
                        AlgebraElement::coordinate(e.spec(), *a)
                    }
                    qgeo::ncalg::PositionAtom::PotentialDeriv(i) => {
                        AlgebraElement::potential_deriv(e.spec(), i.clone())
                    }
                    qgeo::ncalg::PositionAtom::GaugeDeriv(a, i) => {
                        AlgebraElement::gauge_deriv(e.spec(), *a, i.clone())
                    }
                };
                for _ in 0..*pow {
                    single = &single * &f;
                }
            }
            for m in &key.momenta {
                single = &single * &AlgebraElement::momentum(e.spec(), *m);
            }
            out = out + single.scale(coeff);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    // normalize(normalize(e)) = normalize(e): multiplying by one re-runs
    // the full normalizer over every term.
    #[test]
    fn normalization_idempotent_nonrel(e in element_strategy(AlgebraSpec::nonrel(2))) {
        let renorm = &e * &AlgebraElement::one(e.spec());
        prop_assert_eq!(e, renorm);
    }

    #[test]
    fn normalization_idempotent_rel(e in element_strategy(AlgebraSpec::relativistic(1))) {
        let renorm = &e * &AlgebraElement::one(e.spec());
        prop_assert_eq!(e, renorm);
    }

    #[test]
    fn associativity_nonrel(
        a in element_strategy(AlgebraSpec::nonrel(2)),
        b in element_strategy(AlgebraSpec::nonrel(2)),
        c in element_strategy(AlgebraSpec::nonrel(2)),
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn associativity_rel(
        a in element_strategy(AlgebraSpec::relativistic(1)),
        b in element_strategy(AlgebraSpec::relativistic(1)),
        c in element_strategy(AlgebraSpec::relativistic(1)),
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    // At hbar order zero the product is commutative.
    #[test]
    fn classical_limit_commutes(
        a in element_strategy(AlgebraSpec::relativistic(1)),
        b in element_strategy(AlgebraSpec::relativistic(1)),
    ) {
        prop_assert_eq!((&a * &b).hbar_order(0), (&b * &a).hbar_order(0));
    }

    #[test]
    fn jacobi_random_rel(
        a in element_strategy(AlgebraSpec::relativistic(1)),
        b in element_strategy(AlgebraSpec::relativistic(1)),
        c in element_strategy(AlgebraSpec::relativistic(1)),
    ) {
        let s = a.commutator(&b).commutator(&c)
            + b.commutator(&c).commutator(&a)
            + c.commutator(&a).commutator(&b);
        prop_assert!(s.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    // d(ab) = d(a) b + a d(b) in each calculus.
    #[test]
    fn leibniz_nonrel(
        a in element_strategy(AlgebraSpec::nonrel(2)),
        b in element_strategy(AlgebraSpec::nonrel(2)),
    ) {
        let spec = CalculusSpec::nonrel(2);
        let lhs = d_algebra(&(&a * &b), &spec);
        let rhs = d_algebra(&a, &spec).right_mul(&b, &spec)
            + d_algebra(&b, &spec).left_mul(&a);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_rel(
        a in element_strategy(AlgebraSpec::relativistic(1)),
        b in element_strategy(AlgebraSpec::relativistic(1)),
    ) {
        let spec = CalculusSpec::relativistic(1);
        let lhs = d_algebra(&(&a * &b), &spec);
        let rhs = d_algebra(&a, &spec).right_mul(&b, &spec)
            + d_algebra(&b, &spec).left_mul(&a);
        prop_assert_eq!(lhs, rhs);
    }

    // d^2 = 0 on the nonrelativistic calculus. The degree-2 relations
    // {dp_i, dp_j} = i hbar V_{,ijk} dx^k theta' close into a two-sided
    // ideal only up to terms carrying 4th-and-higher potential
    // derivatives; at momentum degree <= 2 (where dh, the torsion, the
    // curvature and the lifted symplectic form all live) the normal form
    // is unambiguous and d^2 vanishes identically for generic V.
    #[test]
    fn d_squared_zero_quadratic_momentum(e in element_strategy(AlgebraSpec::nonrel(2))) {
        let spec = CalculusSpec::nonrel(2);
        let capped = cap_momentum_degree(&e, 2);
        let dd = d_form(&d_algebra(&capped, &spec), &spec);
        prop_assert!(dd.is_zero());
    }

    // Beyond momentum degree 2 the residual consists purely of 4th-and-
    // higher V-derivative atoms, so any potential of degree <= 3 clears it.
    #[test]
    fn d_squared_zero_cubic_potential(e in element_strategy(AlgebraSpec::nonrel(2))) {
        let spec = CalculusSpec::nonrel(2);
        let s = spec.algebra;
        let x1 = qgeo::ncalg::AlgebraElement::coordinate(s, 1);
        let x2 = qgeo::ncalg::AlgebraElement::coordinate(s, 2);
        let v = &(&x1 * &x1) * &x2 + (&x2 * &x2).scale(&Coefficient::from_ratio(3, 2));
        let b = qgeo::ncalg::Bindings::potential(v).unwrap();
        let dd = d_form(&d_algebra(&e, &spec), &spec);
        prop_assert!(dd.substitute(&b).unwrap().is_zero());
    }

    // Pushing coefficients left is idempotent on canonical tensors.
    #[test]
    fn push_left_idempotent(
        a in element_strategy(AlgebraSpec::nonrel(2)),
        b in element_strategy(AlgebraSpec::nonrel(2)),
    ) {
        let spec = CalculusSpec::nonrel(2);
        let t = d_algebra(&a, &spec).tensor_product(&d_algebra(&b, &spec), &spec);
        prop_assert_eq!(t.renormalize(&spec), t);
    }
}

// The exhaustive generator-level facts: Jacobi on generator triples
// (the relativistic case runs the Bianchi identity through A-expansion)
// and theta' centrality.
#[test]
fn jacobi_generator_triples() {
    for spec in [AlgebraSpec::nonrel(3), AlgebraSpec::relativistic(3)] {
        let mut gens = Vec::new();
        for i in spec.indices() {
            gens.push(AlgebraElement::coordinate(spec, i));
            gens.push(AlgebraElement::momentum(spec, i));
        }
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let s = a.commutator(b).commutator(c)
                        + b.commutator(c).commutator(a)
                        + c.commutator(a).commutator(b);
                    assert!(s.is_zero());
                }
            }
        }
    }
}

#[test]
fn theta_prime_is_central() {
    for spec in [
        CalculusSpec::nonrel(3),
        CalculusSpec::relativistic(3),
        CalculusSpec::reduced(3, false),
    ] {
        let theta = TensorElement::generator(spec.algebra, FormGenerator::ThetaPrime);
        for g in spec.algebra_generators() {
            assert!(theta
                .commutator_alg(&g.element(spec.algebra), &spec)
                .is_zero());
        }
    }
}

// Setting theta' -> 0 in the nonrelativistic calculus leaves commuting
// differentials: every relation entry is a pure theta' term.
#[test]
fn theta_zero_projection_commutes() {
    let spec = CalculusSpec::nonrel(3);
    for form in spec.form_generators() {
        for g in spec.algebra_generators() {
            assert!(spec.relation(form, g).project_theta_zero().is_zero());
        }
    }
}
