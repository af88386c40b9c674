//! Vector fields, connections, braidings and the generalized metric for
//! both calculi, as literal generator-indexed tables.

use crate::calculus::{d_algebra, CalculusSpec, FormGenerator, TensorElement};
use crate::ncalg::{AlgebraElement, AlgebraSpec};
use crate::scalar::{Coefficient, Symbol};
use std::collections::BTreeMap;
use thiserror::Error;

/// Left-and-right vector field given by its values on generator forms.
#[derive(Clone, Debug)]
pub struct VectorField {
    pub table: BTreeMap<FormGenerator, AlgebraElement>,
}

impl VectorField {
    pub fn apply_rank1(&self, t: &TensorElement) -> AlgebraElement {
        let mut out: Option<AlgebraElement> = None;
        for (w, c) in t.terms() {
            assert_eq!(w.rank(), 1, "vector fields act on 1-forms");
            let x = self
                .table
                .get(&w.factors[0])
                .expect("vector field covers all generators");
            let v = c * x;
            out = Some(match out {
                None => v,
                Some(acc) => acc + v,
            });
        }
        out.unwrap_or_else(|| {
            let spec = self
                .table
                .values()
                .next()
                .expect("nonempty table")
                .spec();
            AlgebraElement::zero(spec)
        })
    }

    /// (id (x) X) on a rank-2 tensor.
    pub fn apply_second(&self, t: &TensorElement, spec: &CalculusSpec) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, c) in t.terms() {
            assert_eq!(w.rank(), 2);
            let x = self.table.get(&w.factors[1]).expect("covered");
            let first =
                TensorElement::from_parts(c.clone(), &[w.factors[0]]);
            out = out + first.right_mul(x, spec);
        }
        out
    }

    /// (X (x) id) on a rank-2 tensor.
    pub fn apply_first(&self, t: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, c) in t.terms() {
            assert_eq!(w.rank(), 2);
            let x = self.table.get(&w.factors[0]).expect("covered");
            out = out + TensorElement::from_parts(c * x, &[w.factors[1]]);
        }
        out
    }

    /// (X (x) X) with the product taken in the algebra.
    pub fn xx(&self, t: &TensorElement, spec: &CalculusSpec) -> AlgebraElement {
        self.apply_rank1(&self.apply_second(t, spec))
    }
}

/// Right bimodule connection given by its values on generator forms; the
/// extension to all of Omega^1 is by the right Leibniz rule.
#[derive(Clone, Debug)]
pub struct Connection {
    pub table: BTreeMap<FormGenerator, TensorElement>,
}

impl Connection {
    /// nabla on an arbitrary rank-1 tensor:
    /// nabla(gen . a) = nabla(gen) . a + gen (x) d a.
    pub fn apply_rank1(&self, t: &TensorElement, spec: &CalculusSpec) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, a) in t.right_normal_parts(spec) {
            assert_eq!(w.rank(), 1);
            let gen = w.factors[0];
            let base = self.table.get(&gen).expect("covered").right_mul(&a, spec);
            let gen_t = TensorElement::generator(spec.algebra, gen);
            out = out + base + gen_t.tensor_product(&d_algebra(&a, spec), spec);
        }
        out
    }

    /// Tensor-product right connection on rank-2 tensors:
    /// (id (x) sigma)(nabla (x) id) + id (x) nabla, extended by the right
    /// Leibniz rule.
    pub fn apply_rank2(
        &self,
        t: &TensorElement,
        sigma: &SigmaTable,
        spec: &CalculusSpec,
    ) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, a) in t.right_normal_parts(spec) {
            assert_eq!(w.rank(), 2);
            let (g1, g2) = (w.factors[0], w.factors[1]);
            let mut base = TensorElement::zero();
            // (id (x) sigma)(nabla g1 (x) g2)
            for (nw, nc) in self.table.get(&g1).expect("covered").terms() {
                let braided = sigma.entry(nw.factors[1], g2);
                let first = TensorElement::from_parts(nc.clone(), &[nw.factors[0]]);
                base = base + first.tensor_product(braided, spec);
            }
            // g1 (x) nabla g2
            let g1_t = TensorElement::generator(spec.algebra, g1);
            base = base + g1_t.tensor_product(self.table.get(&g2).expect("covered"), spec);
            let pair = {
                let mut p = TensorElement::generator(spec.algebra, g1);
                p = p.tensor_product(&TensorElement::generator(spec.algebra, g2), spec);
                p
            };
            out = out
                + base.right_mul(&a, spec)
                + pair.tensor_product(&d_algebra(&a, spec), spec);
        }
        out
    }
}

/// The braiding sigma on generator pairs, derived from a connection.
#[derive(Clone, Debug)]
pub struct SigmaTable {
    pub table: BTreeMap<(FormGenerator, FormGenerator), TensorElement>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SigmaError {
    #[error("sigma entry for ({0}, {1}) is not a rank-2 tensor over generator pairs")]
    NotSolvable(String, String),
}

impl SigmaTable {
    pub fn entry(&self, a: FormGenerator, b: FormGenerator) -> &TensorElement {
        self.table.get(&(a, b)).expect("sigma covers all pairs")
    }

    /// Left-module extension to canonical rank-2 tensors.
    pub fn apply_rank2(&self, t: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, c) in t.terms() {
            assert_eq!(w.rank(), 2, "sigma acts on rank-2 tensors");
            out = out + self.entry(w.factors[0], w.factors[1]).left_mul(c);
        }
        out
    }
}

/// The generalized quantum metric, kept with its defining pieces so that
/// single pieces can be sign-flipped in mutation tests.
#[derive(Clone, Debug)]
pub struct MetricG {
    pub tensor: TensorElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricPiece {
    DpDx,
    DxDp,
    ThetaDh,
    DhTheta,
    ThetaTheta,
}

/// Sign flips applied to single entries of the built-in tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    NablaEntry(FormGenerator),
    XEntry(FormGenerator),
    Metric(MetricPiece),
    /// Relativistic connection pieces of nabla(dp_c) (Thm 5.2 notation).
    Nc,
    XiC,
    EtaC,
}

fn maybe_flip_t(t: TensorElement, flip: bool) -> TensorElement {
    if flip {
        -t
    } else {
        t
    }
}

fn maybe_flip_e(e: AlgebraElement, flip: bool) -> AlgebraElement {
    if flip {
        -e
    } else {
        e
    }
}

/// X(dx^i) = p_i/m, X(dp_i) = -V_{,i}, X(theta') = 1.
pub fn heisenberg_vector_field(spec: &CalculusSpec, mutation: Option<Mutation>) -> VectorField {
    let s = spec.algebra;
    let inv_m = Coefficient::symbol_pow(Symbol::Mass, -1);
    let mut table = BTreeMap::new();
    for i in s.indices() {
        table.insert(
            FormGenerator::Dx(i),
            maybe_flip_e(
                AlgebraElement::momentum(s, i).scale(&inv_m),
                mutation == Some(Mutation::XEntry(FormGenerator::Dx(i))),
            ),
        );
        table.insert(
            FormGenerator::Dp(i),
            maybe_flip_e(
                -AlgebraElement::potential_deriv(s, vec![i]),
                mutation == Some(Mutation::XEntry(FormGenerator::Dp(i))),
            ),
        );
    }
    table.insert(FormGenerator::ThetaPrime, AlgebraElement::one(s));
    VectorField { table }
}

/// X(dx^a) = (1/m) eta^{ab} p_b,
/// X(dp_c) = (q/2m) eta^{ab} (2 F_{ca} p_b - i hbar F_{cb,a}),
/// X(theta') = 1.
pub fn kg_vector_field(spec: &CalculusSpec, mutation: Option<Mutation>) -> VectorField {
    let s = spec.algebra;
    let inv_m = Coefficient::symbol_pow(Symbol::Mass, -1);
    let q_2m = Coefficient::symbol(Symbol::Charge)
        * Coefficient::from_ratio(1, 2)
        * inv_m.clone();
    let idx = if spec.is_reduced() {
        s.spatial_indices()
    } else {
        s.indices()
    };
    let mut table = BTreeMap::new();
    for a in &idx {
        let eta = Coefficient::from_int(s.eta(*a));
        table.insert(
            FormGenerator::Dx(*a),
            maybe_flip_e(
                AlgebraElement::momentum(s, *a).scale(&(inv_m.clone() * eta)),
                mutation == Some(Mutation::XEntry(FormGenerator::Dx(*a))),
            ),
        );
    }
    for c in &idx {
        let mut v = AlgebraElement::zero(s);
        for a in s.indices() {
            // eta^{ab} diagonal: b = a
            let eta = Coefficient::from_int(s.eta(a));
            let f = AlgebraElement::field_strength(s, *c, a, &[]);
            let p = AlgebraElement::momentum(s, a);
            v = v + (&f * &p).scale(&(Coefficient::from_int(2) * q_2m.clone() * eta.clone()));
            let fd = AlgebraElement::field_strength(s, *c, a, &[a]);
            v = v + fd.scale(&(-(Coefficient::i_hbar() * q_2m.clone() * eta)));
        }
        table.insert(
            FormGenerator::Dp(*c),
            maybe_flip_e(v, mutation == Some(Mutation::XEntry(FormGenerator::Dp(*c)))),
        );
    }
    table.insert(FormGenerator::ThetaPrime, AlgebraElement::one(s));
    VectorField { table }
}

/// nabla(theta') = 0, nabla(dx^i) = (1/m) theta' (x) dp_i,
/// nabla(dp_i) = -V_{,ij} theta' (x) dx^j
///               + (i hbar / 2m) V_{,ijj} theta' (x) theta'.
pub fn heisenberg_connection(spec: &CalculusSpec, mutation: Option<Mutation>) -> Connection {
    let s = spec.algebra;
    let inv_m = Coefficient::symbol_pow(Symbol::Mass, -1);
    let mut table = BTreeMap::new();
    for i in s.indices() {
        table.insert(
            FormGenerator::Dx(i),
            maybe_flip_t(
                TensorElement::from_parts(
                    AlgebraElement::from_coefficient(s, inv_m.clone()),
                    &[FormGenerator::ThetaPrime, FormGenerator::Dp(i)],
                ),
                mutation == Some(Mutation::NablaEntry(FormGenerator::Dx(i))),
            ),
        );
        let mut t = TensorElement::zero();
        for j in s.indices() {
            t = t + TensorElement::from_parts(
                -AlgebraElement::potential_deriv(s, vec![i, j]),
                &[FormGenerator::ThetaPrime, FormGenerator::Dx(j)],
            );
        }
        let mut lap = AlgebraElement::zero(s);
        for j in s.indices() {
            lap = lap + AlgebraElement::potential_deriv(s, vec![i, j, j]);
        }
        t = t + TensorElement::from_parts(
            lap.scale(&(Coefficient::i_hbar() * Coefficient::from_ratio(1, 2) * inv_m.clone())),
            &[FormGenerator::ThetaPrime, FormGenerator::ThetaPrime],
        );
        table.insert(
            FormGenerator::Dp(i),
            maybe_flip_t(t, mutation == Some(Mutation::NablaEntry(FormGenerator::Dp(i)))),
        );
    }
    table.insert(FormGenerator::ThetaPrime, TensorElement::zero());
    Connection { table }
}

/// xi_c = -(i hbar q / 2m) eta^{nm} F_{ac,nm} dx^a (Thm 5.2).
pub fn kg_xi(s: AlgebraSpec, c: u8) -> TensorElement {
    let coef = -(Coefficient::i_hbar()
        * Coefficient::symbol(Symbol::Charge)
        * Coefficient::from_ratio(1, 2)
        * Coefficient::symbol_pow(Symbol::Mass, -1));
    let mut t = TensorElement::zero();
    for a in s.indices() {
        let mut e = AlgebraElement::zero(s);
        for n in s.indices() {
            let eta = Coefficient::from_int(s.eta(n));
            e = e + AlgebraElement::field_strength(s, a, c, &[n, n]).scale(&eta);
        }
        t = t + TensorElement::from_parts(e.scale(&coef), &[FormGenerator::Dx(a)]);
    }
    t
}

/// eta_c = -(i hbar q / 2m) eta^{nm} F_{nc,ma} dx^a
///         - (q^2 / m) eta^{eb} F_{ec} F_{ab} dx^a (Thm 5.2).
pub fn kg_eta(s: AlgebraSpec, c: u8) -> TensorElement {
    let ih_q_2m = Coefficient::i_hbar()
        * Coefficient::symbol(Symbol::Charge)
        * Coefficient::from_ratio(1, 2)
        * Coefficient::symbol_pow(Symbol::Mass, -1);
    let qq_m = Coefficient::symbol_pow(Symbol::Charge, 2)
        * Coefficient::symbol_pow(Symbol::Mass, -1);
    let mut t = TensorElement::zero();
    for a in s.indices() {
        let mut e = AlgebraElement::zero(s);
        for n in s.indices() {
            let eta = Coefficient::from_int(s.eta(n));
            e = e + AlgebraElement::field_strength(s, n, c, &[n, a]).scale(&(-(ih_q_2m.clone() * eta))); // eta^{nm}: m = n
        }
        for b in s.indices() {
            // eta^{eb} diagonal: e = b
            let eta = Coefficient::from_int(s.eta(b));
            let fec = AlgebraElement::field_strength(s, b, c, &[]);
            let fab = AlgebraElement::field_strength(s, a, b, &[]);
            e = e + (&fec * &fab).scale(&(-(qq_m.clone() * eta)));
        }
        t = t + TensorElement::from_parts(e, &[FormGenerator::Dx(a)]);
    }
    t
}

/// N_c = -(i hbar q^2 / 2m^2) eta^{nm} eta^{ab}
///         (2 F_{an} F_{mc,b} + F_{bn,a} F_{mc})
///       + (hbar^2 q / 4m^2) eta^{nm} eta^{ab} F_{bc,anm} (Thm 5.2).
pub fn kg_n(s: AlgebraSpec, c: u8) -> AlgebraElement {
    let ihqq_2mm = Coefficient::i_hbar()
        * Coefficient::symbol_pow(Symbol::Charge, 2)
        * Coefficient::from_ratio(1, 2)
        * Coefficient::symbol_pow(Symbol::Mass, -2);
    let hh_q_4mm = Coefficient::symbol_pow(Symbol::Hbar, 2)
        * Coefficient::symbol(Symbol::Charge)
        * Coefficient::from_ratio(1, 4)
        * Coefficient::symbol_pow(Symbol::Mass, -2);
    let mut e = AlgebraElement::zero(s);
    for n in s.indices() {
        let eta_n = Coefficient::from_int(s.eta(n));
        for a in s.indices() {
            let eta_a = Coefficient::from_int(s.eta(a));
            let sign = eta_n.clone() * eta_a.clone();
            // 2 F_{an} F_{nc,a}  (m = n, b = a by diagonality)
            let f1 = AlgebraElement::field_strength(s, a, n, &[]);
            let f2 = AlgebraElement::field_strength(s, n, c, &[a]);
            e = e + (&f1 * &f2)
                .scale(&(-(Coefficient::from_int(2) * ihqq_2mm.clone() * sign.clone())));
            // F_{an,a} F_{nc}
            let f3 = AlgebraElement::field_strength(s, a, n, &[a]);
            let f4 = AlgebraElement::field_strength(s, n, c, &[]);
            e = e + (&f3 * &f4).scale(&(-(ihqq_2mm.clone() * sign.clone())));
            // F_{ac,ann}
            let f5 = AlgebraElement::field_strength(s, a, c, &[a, n, n]);
            e = e + f5.scale(&(hh_q_4mm.clone() * sign));
        }
    }
    e
}

/// The Thm 5.2 connection: nabla(theta') = 0,
/// nabla(dx^d) = -(q/m) eta^{cd} F_{ac} theta' (x) dx^a
///               + (i hbar q / 2m^2) eta^{ab} eta^{cd} F_{bc,a}
///                 theta' (x) theta',
/// nabla(dp_c) = -q F_{dc,e} dx^d (x) dx^e - xi_c (x) theta'
///               - theta' (x) eta_c + N_c theta' (x) theta'.
pub fn kg_connection(spec: &CalculusSpec, mutation: Option<Mutation>) -> Connection {
    let s = spec.algebra;
    let q = Coefficient::symbol(Symbol::Charge);
    let inv_m = Coefficient::symbol_pow(Symbol::Mass, -1);
    let idx = if spec.is_reduced() {
        s.spatial_indices()
    } else {
        s.indices()
    };
    let mut table = BTreeMap::new();
    for d in &idx {
        let eta_d = Coefficient::from_int(s.eta(*d));
        let mut t = TensorElement::zero();
        for a in s.indices() {
            // eta^{cd}: c = d
            let f = AlgebraElement::field_strength(s, a, *d, &[]);
            t = t + TensorElement::from_parts(
                f.scale(&(-(q.clone() * inv_m.clone() * eta_d.clone()))),
                &[FormGenerator::ThetaPrime, FormGenerator::Dx(a)],
            );
        }
        let mut e = AlgebraElement::zero(s);
        for a in s.indices() {
            let eta_a = Coefficient::from_int(s.eta(a));
            e = e + AlgebraElement::field_strength(s, a, *d, &[a]).scale(&eta_a);
        }
        t = t + TensorElement::from_parts(
            e.scale(
                &(Coefficient::i_hbar()
                    * q.clone()
                    * Coefficient::from_ratio(1, 2)
                    * Coefficient::symbol_pow(Symbol::Mass, -2)
                    * eta_d.clone()),
            ),
            &[FormGenerator::ThetaPrime, FormGenerator::ThetaPrime],
        );
        let t = if spec.is_reduced() {
            crate::calculus::quotient_reduce(&t, spec)
        } else {
            t
        };
        table.insert(
            FormGenerator::Dx(*d),
            maybe_flip_t(t, mutation == Some(Mutation::NablaEntry(FormGenerator::Dx(*d)))),
        );
    }
    for c in &idx {
        let mut t = TensorElement::zero();
        for d in s.indices() {
            for e_idx in s.indices() {
                let f = AlgebraElement::field_strength(s, d, *c, &[e_idx]);
                t = t + TensorElement::from_parts(
                    f.scale(&-q.clone()),
                    &[FormGenerator::Dx(d), FormGenerator::Dx(e_idx)],
                );
            }
        }
        let theta = TensorElement::generator(s, FormGenerator::ThetaPrime);
        let xi = maybe_flip_t(kg_xi(s, *c), mutation == Some(Mutation::XiC));
        let eta_c = maybe_flip_t(kg_eta(s, *c), mutation == Some(Mutation::EtaC));
        let n_c = maybe_flip_e(kg_n(s, *c), mutation == Some(Mutation::Nc));
        t = t - xi.tensor_product(&theta, spec);
        t = t - theta.tensor_product(&eta_c, spec);
        t = t + TensorElement::from_parts(
            n_c,
            &[FormGenerator::ThetaPrime, FormGenerator::ThetaPrime],
        );
        let t = if spec.is_reduced() {
            crate::calculus::quotient_reduce(&t, spec)
        } else {
            t
        };
        table.insert(
            FormGenerator::Dp(*c),
            maybe_flip_t(t, mutation == Some(Mutation::NablaEntry(FormGenerator::Dp(*c)))),
        );
    }
    table.insert(FormGenerator::ThetaPrime, TensorElement::zero());
    Connection { table }
}

/// h = p^2/2m + V (nonrelativistic) or eta^{ab} p_a p_b / 2m.
pub fn build_hamiltonian(spec: &CalculusSpec) -> AlgebraElement {
    let s = spec.algebra;
    let half_inv_m =
        Coefficient::from_ratio(1, 2) * Coefficient::symbol_pow(Symbol::Mass, -1);
    let mut h = AlgebraElement::zero(s);
    for a in s.indices() {
        let p = AlgebraElement::momentum(s, a);
        let eta = Coefficient::from_int(s.eta(a));
        h = h + (&p * &p).scale(&(half_inv_m.clone() * eta));
    }
    if !s.is_relativistic() {
        h = h + AlgebraElement::potential_deriv(s, vec![]);
    }
    h
}

/// Derive sigma from the connection:
/// sigma(dg (x) w) = nabla([g, w]) + [nabla w, g] + w (x) dg,
/// with the flip on theta' (x) w pairs.
pub fn derive_sigma(
    nabla: &Connection,
    spec: &CalculusSpec,
) -> Result<SigmaTable, SigmaError> {
    let s = spec.algebra;
    let mut table = BTreeMap::new();
    for alpha in spec.form_generators() {
        for omega in spec.form_generators() {
            let omega_t = TensorElement::generator(s, omega);
            let entry = if alpha == FormGenerator::ThetaPrime {
                omega_t.tensor_product(
                    &TensorElement::generator(s, FormGenerator::ThetaPrime),
                    spec,
                )
            } else {
                let g = match alpha {
                    FormGenerator::Dx(a) => AlgebraElement::coordinate(s, a),
                    FormGenerator::Dp(a) => AlgebraElement::momentum(s, a),
                    FormGenerator::ThetaPrime => unreachable!(),
                };
                // [g, omega] = -[omega, g]
                let g_omega = -omega_t.commutator_alg(&g, spec);
                let part1 = nabla.apply_rank1(&g_omega, spec);
                let part2 = nabla
                    .table
                    .get(&omega)
                    .expect("covered")
                    .commutator_alg(&g, spec);
                let part3 = omega_t.tensor_product(&TensorElement::generator(s, alpha), spec);
                part1 + part2 + part3
            };
            for (w, _) in entry.terms() {
                if w.rank() != 2 {
                    return Err(SigmaError::NotSolvable(alpha.label(), omega.label()));
                }
            }
            table.insert((alpha, omega), entry);
        }
    }
    Ok(SigmaTable { table })
}

/// The closed-form braiding of Prop 4.2: flips, with
/// sigma(dx^i (x) dp_j) = dp_j (x) dx^i + (i hbar/m) V_{,ji}
///                        theta' (x) theta'
/// and the opposite correction on dp (x) dx.
pub fn sigma_expected(spec: &CalculusSpec) -> SigmaTable {
    let s = spec.algebra;
    let ih_m = Coefficient::i_hbar() * Coefficient::symbol_pow(Symbol::Mass, -1);
    let mut table = BTreeMap::new();
    for alpha in spec.form_generators() {
        for omega in spec.form_generators() {
            let mut t = TensorElement::from_parts(
                AlgebraElement::one(s),
                &[omega, alpha],
            );
            match (alpha, omega) {
                (FormGenerator::Dx(i), FormGenerator::Dp(j)) => {
                    t = t + TensorElement::from_parts(
                        AlgebraElement::potential_deriv(s, vec![j, i]).scale(&ih_m),
                        &[FormGenerator::ThetaPrime, FormGenerator::ThetaPrime],
                    );
                }
                (FormGenerator::Dp(i), FormGenerator::Dx(j)) => {
                    t = t + TensorElement::from_parts(
                        AlgebraElement::potential_deriv(s, vec![i, j]).scale(&-ih_m.clone()),
                        &[FormGenerator::ThetaPrime, FormGenerator::ThetaPrime],
                    );
                }
                _ => {}
            }
            table.insert((alpha, omega), t);
        }
    }
    SigmaTable { table }
}

/// The closed-form braiding of Thm 5.2.
pub fn kg_sigma_expected(spec: &CalculusSpec) -> SigmaTable {
    let s = spec.algebra;
    let q = Coefficient::symbol(Symbol::Charge);
    let ih = Coefficient::i_hbar();
    let inv_m = Coefficient::symbol_pow(Symbol::Mass, -1);
    let inv_mm = Coefficient::symbol_pow(Symbol::Mass, -2);
    let theta = FormGenerator::ThetaPrime;
    let mut table = BTreeMap::new();
    for alpha in spec.form_generators() {
        for omega in spec.form_generators() {
            let flip = TensorElement::from_parts(AlgebraElement::one(s), &[omega, alpha]);
            let t = match (alpha, omega) {
                // sigma(dx^e (x) dx^d) = dx^d (x) dx^e
                //   + (i hbar q / m^2) eta^{cd} eta^{ae} F_{ac} theta'^2
                (FormGenerator::Dx(e), FormGenerator::Dx(d)) => {
                    let sign = Coefficient::from_int(s.eta(d) * s.eta(e));
                    flip + TensorElement::from_parts(
                        AlgebraElement::field_strength(s, e, d, &[])
                            .scale(&(ih.clone() * q.clone() * inv_mm.clone() * sign)),
                        &[theta, theta],
                    )
                }
                // sigma(dp_e (x) dx^d) = dx^d (x) dp_e + (i hbar q/m) eta^{dc}
                //   theta' (x) (-F_{ae,c} dx^a - (q/m) eta^{ab} F_{ac} F_{be} theta'
                //               + (i hbar / 2m) eta^{ab} F_{ae,cb} theta')
                (FormGenerator::Dp(e), FormGenerator::Dx(d)) => {
                    let eta_d = Coefficient::from_int(s.eta(d));
                    let lead = ih.clone() * q.clone() * inv_m.clone() * eta_d;
                    let mut inner = TensorElement::zero();
                    for a in s.indices() {
                        inner = inner + TensorElement::from_parts(
                            AlgebraElement::field_strength(s, a, e, &[d])
                                .scale(&-Coefficient::one()),
                            &[FormGenerator::Dx(a)],
                        );
                    }
                    let mut th = AlgebraElement::zero(s);
                    for a in s.indices() {
                        let eta_a = Coefficient::from_int(s.eta(a));
                        let f1 = AlgebraElement::field_strength(s, a, d, &[]);
                        let f2 = AlgebraElement::field_strength(s, a, e, &[]);
                        th = th + (&f1 * &f2).scale(&(-(q.clone() * inv_m.clone() * eta_a.clone())));
                        th = th + AlgebraElement::field_strength(s, a, e, &[a, d]).scale(
                            &(ih.clone() * Coefficient::from_ratio(1, 2) * inv_m.clone() * eta_a),
                        );
                    }
                    inner = inner + TensorElement::from_parts(th, &[theta]);
                    let theta_t = TensorElement::generator(s, theta);
                    flip + theta_t.tensor_product(&inner.scale(&lead), spec)
                }
                // sigma(dx^a (x) dp_c) = dp_c (x) dx^a
                //   + (i hbar q / m) eta^{ea} F_{dc,e} dx^d (x) theta'
                //   - ((i hbar q^2/m^2) eta^{bn} eta^{ra} F_{nc} F_{rb}
                //      - (hbar^2 q / 2m^2) eta^{ar} eta^{nb} F_{bc,nr}) theta'^2
                (FormGenerator::Dx(a), FormGenerator::Dp(c)) => {
                    let eta_a = Coefficient::from_int(s.eta(a));
                    let mut t = flip;
                    for d in s.indices() {
                        t = t + TensorElement::from_parts(
                            AlgebraElement::field_strength(s, d, c, &[a])
                                .scale(&(ih.clone() * q.clone() * inv_m.clone() * eta_a.clone())),
                            &[FormGenerator::Dx(d), theta],
                        );
                    }
                    let mut th = AlgebraElement::zero(s);
                    for b in s.indices() {
                        let eta_b = Coefficient::from_int(s.eta(b));
                        let f1 = AlgebraElement::field_strength(s, b, c, &[]);
                        let f2 = AlgebraElement::field_strength(s, a, b, &[]);
                        th = th + (&f1 * &f2).scale(&(-(ih.clone()
                            * Coefficient::symbol_pow(Symbol::Charge, 2)
                            * inv_mm.clone()
                            * eta_b.clone()
                            * eta_a.clone())));
                        th = th + AlgebraElement::field_strength(s, b, c, &[b, a]).scale(
                            &(Coefficient::symbol_pow(Symbol::Hbar, 2)
                                * q.clone()
                                * Coefficient::from_ratio(1, 2)
                                * inv_mm.clone()
                                * eta_b
                                * eta_a.clone()),
                        );
                    }
                    t + TensorElement::from_parts(th, &[theta, theta])
                }
                // sigma(dp_e (x) dp_d) = dp_d (x) dp_e
                //   + (i hbar q^2/m) eta^{rp} (F_{rd} F_{ae,p} theta' (x) dx^a
                //                              - F_{re} F_{ad,p} dx^a (x) theta')
                //   + (i hbar q^3/m^2) eta^{rp} eta^{ba} F_{pe} F_{ad} F_{rb} theta'^2
                //   + (hbar^2 q^2/2m^2) eta^{rp} eta^{ab}
                //     (F_{pd} F_{be,ar} - F_{pd,ar} F_{be}) theta'^2
                (FormGenerator::Dp(e), FormGenerator::Dp(d)) => {
                    let mut t = flip;
                    let ihqq_m = ih.clone()
                        * Coefficient::symbol_pow(Symbol::Charge, 2)
                        * inv_m.clone();
                    for r in s.indices() {
                        let eta_r = Coefficient::from_int(s.eta(r));
                        for a in s.indices() {
                            let f1 = AlgebraElement::field_strength(s, r, d, &[]);
                            let f2 = AlgebraElement::field_strength(s, a, e, &[r]);
                            t = t + TensorElement::from_parts(
                                (&f1 * &f2).scale(&(ihqq_m.clone() * eta_r.clone())),
                                &[theta, FormGenerator::Dx(a)],
                            );
                            let f3 = AlgebraElement::field_strength(s, r, e, &[]);
                            let f4 = AlgebraElement::field_strength(s, a, d, &[r]);
                            t = t + TensorElement::from_parts(
                                (&f3 * &f4).scale(&(-(ihqq_m.clone() * eta_r.clone()))),
                                &[FormGenerator::Dx(a), theta],
                            );
                        }
                    }
                    let mut th = AlgebraElement::zero(s);
                    let ihqqq_mm = ih.clone()
                        * Coefficient::symbol_pow(Symbol::Charge, 3)
                        * inv_mm.clone();
                    let hhqq_2mm = Coefficient::symbol_pow(Symbol::Hbar, 2)
                        * Coefficient::symbol_pow(Symbol::Charge, 2)
                        * Coefficient::from_ratio(1, 2)
                        * inv_mm.clone();
                    for r in s.indices() {
                        let eta_r = Coefficient::from_int(s.eta(r));
                        for b in s.indices() {
                            let eta_b = Coefficient::from_int(s.eta(b));
                            let sign = eta_r.clone() * eta_b.clone();
                            // eta^{rp}: p = r; eta^{ba}: a = b
                            let f1 = AlgebraElement::field_strength(s, r, e, &[]);
                            let f2 = AlgebraElement::field_strength(s, b, d, &[]);
                            let f3 = AlgebraElement::field_strength(s, r, b, &[]);
                            th = th + (&(&f1 * &f2) * &f3).scale(&(ihqqq_mm.clone() * sign.clone()));
                            let g1 = AlgebraElement::field_strength(s, r, d, &[]);
                            let g2 = AlgebraElement::field_strength(s, b, e, &[b, r]);
                            th = th + (&g1 * &g2).scale(&(hhqq_2mm.clone() * sign.clone()));
                            let g3 = AlgebraElement::field_strength(s, r, d, &[b, r]);
                            let g4 = AlgebraElement::field_strength(s, b, e, &[]);
                            th = th + (&g3 * &g4).scale(&(-(hhqq_2mm.clone() * sign)));
                        }
                    }
                    t + TensorElement::from_parts(th, &[theta, theta])
                }
                // flip when one factor is theta'
                _ => flip,
            };
            table.insert((alpha, omega), t);
        }
    }
    SigmaTable { table }
}

/// The Prop 4.3 metric
/// G = dp_i (x) dx^i - dx^i (x) dp_i + theta' (x) dh - dh (x) theta'
///     + (i hbar / m) (sum_i V_{,ii}) theta' (x) theta'.
pub fn heisenberg_metric(spec: &CalculusSpec, mutation: Option<Mutation>) -> MetricG {
    let s = spec.algebra;
    let h = build_hamiltonian(spec);
    let dh = d_algebra(&h, spec);
    let theta = TensorElement::generator(s, FormGenerator::ThetaPrime);
    let flip = |piece: MetricPiece| mutation == Some(Mutation::Metric(piece));

    let mut pdx = TensorElement::zero();
    let mut xdp = TensorElement::zero();
    for i in s.indices() {
        pdx = pdx + TensorElement::from_parts(
            AlgebraElement::one(s),
            &[FormGenerator::Dp(i), FormGenerator::Dx(i)],
        );
        xdp = xdp + TensorElement::from_parts(
            AlgebraElement::one(s),
            &[FormGenerator::Dx(i), FormGenerator::Dp(i)],
        );
    }
    let mut lap = AlgebraElement::zero(s);
    for i in s.indices() {
        lap = lap + AlgebraElement::potential_deriv(s, vec![i, i]);
    }
    let theta_theta = TensorElement::from_parts(
        lap.scale(&(Coefficient::i_hbar() * Coefficient::symbol_pow(Symbol::Mass, -1))),
        &[FormGenerator::ThetaPrime, FormGenerator::ThetaPrime],
    );

    let tensor = maybe_flip_t(pdx, flip(MetricPiece::DpDx))
        - maybe_flip_t(xdp, flip(MetricPiece::DxDp))
        + maybe_flip_t(theta.tensor_product(&dh, spec), flip(MetricPiece::ThetaDh))
        - maybe_flip_t(dh.tensor_product(&theta, spec), flip(MetricPiece::DhTheta))
        + maybe_flip_t(theta_theta, flip(MetricPiece::ThetaTheta));
    MetricG { tensor }
}
