//! The relation tables defining the three calculi and the atomic
//! form-algebra commutators every rewrite is built from.

use super::tensor::{FormGenerator, TensorElement};
use crate::ncalg::{AlgebraElement, AlgebraSpec, PositionAtom};
use crate::scalar::{Coefficient, Symbol};
use std::collections::BTreeSet;

/// Algebra generator, for addressing relation-table entries.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum AlgGen {
    X(u8),
    P(u8),
}

impl AlgGen {
    pub fn element(&self, spec: AlgebraSpec) -> AlgebraElement {
        match self {
            AlgGen::X(a) => AlgebraElement::coordinate(spec, *a),
            AlgGen::P(a) => AlgebraElement::momentum(spec, *a),
        }
    }

    pub fn differential(&self) -> FormGenerator {
        match self {
            AlgGen::X(a) => FormGenerator::Dx(*a),
            AlgGen::P(a) => FormGenerator::Dp(*a),
        }
    }

    pub fn label(&self) -> String {
        match self {
            AlgGen::X(a) => format!("x{}", a),
            AlgGen::P(a) => format!("p{}", a),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CalculusVariant {
    /// Prop 4.1 calculus on the nonrelativistic Heisenberg algebra.
    NonRel,
    /// Prop 5.1 electromagnetic calculus on the relativistic algebra.
    Rel,
    /// Prop 5.3 quotient with dx^0 and dp_0 eliminated.
    RelReduced,
}

/// One of the three calculi. `flipped` records deliberately sign-flipped
/// relation entries (mutation testing); empty in normal use.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CalculusSpec {
    pub algebra: AlgebraSpec,
    pub variant: CalculusVariant,
    pub flipped: BTreeSet<(FormGenerator, AlgGen)>,
}

impl CalculusSpec {
    pub fn nonrel(dim: u8) -> Self {
        CalculusSpec {
            algebra: AlgebraSpec::nonrel(dim),
            variant: CalculusVariant::NonRel,
            flipped: BTreeSet::new(),
        }
    }

    pub fn relativistic(spatial: u8) -> Self {
        CalculusSpec {
            algebra: AlgebraSpec::relativistic(spatial),
            variant: CalculusVariant::Rel,
            flipped: BTreeSet::new(),
        }
    }

    pub fn reduced(spatial: u8, static_gauge: bool) -> Self {
        CalculusSpec {
            algebra: if static_gauge {
                AlgebraSpec::relativistic_static(spatial)
            } else {
                AlgebraSpec::relativistic(spatial)
            },
            variant: CalculusVariant::RelReduced,
            flipped: BTreeSet::new(),
        }
    }

    pub fn flip_relation(&mut self, gen: FormGenerator, alg: AlgGen) {
        self.flipped.insert((gen, alg));
    }

    pub fn is_relativistic(&self) -> bool {
        self.algebra.is_relativistic()
    }

    pub fn is_reduced(&self) -> bool {
        self.variant == CalculusVariant::RelReduced
    }

    /// Generator 1-forms of this calculus in canonical order.
    pub fn form_generators(&self) -> Vec<FormGenerator> {
        let idx = match self.variant {
            CalculusVariant::RelReduced => self.algebra.spatial_indices(),
            _ => self.algebra.indices(),
        };
        let mut v: Vec<FormGenerator> = idx.iter().map(|a| FormGenerator::Dx(*a)).collect();
        v.extend(idx.iter().map(|a| FormGenerator::Dp(*a)));
        v.push(FormGenerator::ThetaPrime);
        v
    }

    /// Algebra generators (the reduced calculus keeps the full algebra, but
    /// its identity suites run over the generators that act on it).
    pub fn algebra_generators(&self) -> Vec<AlgGen> {
        let idx = match self.variant {
            CalculusVariant::RelReduced => self.algebra.spatial_indices(),
            _ => self.algebra.indices(),
        };
        let mut v: Vec<AlgGen> = idx.iter().map(|a| AlgGen::X(*a)).collect();
        v.extend(idx.iter().map(|a| AlgGen::P(*a)));
        v
    }

    /// The commutator [gen, g] of a generator form with an algebra
    /// generator, as a canonical rank-1 tensor. This is the relation table;
    /// entries listed in `flipped` come out negated.
    pub fn relation(&self, gen: FormGenerator, g: AlgGen) -> TensorElement {
        let mut t = self.relation_unflipped(gen, g);
        if self.flipped.contains(&(gen, g)) {
            t = -t;
        }
        if self.is_reduced() {
            t = super::diff::quotient_reduce_raw(&t, self);
        }
        t
    }

    fn relation_unflipped(&self, gen: FormGenerator, g: AlgGen) -> TensorElement {
        let s = self.algebra;
        let ih = Coefficient::i_hbar();
        let inv_m = Coefficient::symbol_pow(Symbol::Mass, -1);
        match self.variant {
            CalculusVariant::NonRel => match (gen, g) {
                // [dx^i, x^j] = -(i hbar / m) delta_ij theta'
                (FormGenerator::Dx(i), AlgGen::X(j)) => {
                    if i == j {
                        TensorElement::from_parts(
                            AlgebraElement::from_coefficient(s, -(ih * inv_m)),
                            &[FormGenerator::ThetaPrime],
                        )
                    } else {
                        TensorElement::zero()
                    }
                }
                // [dp_i, p_j] = -i hbar V_{,ij} theta'
                (FormGenerator::Dp(i), AlgGen::P(j)) => TensorElement::from_parts(
                    AlgebraElement::potential_deriv(s, vec![i, j]).scale(&-ih),
                    &[FormGenerator::ThetaPrime],
                ),
                (FormGenerator::Dx(_), AlgGen::P(_)) | (FormGenerator::Dp(_), AlgGen::X(_)) => {
                    TensorElement::zero()
                }
                (FormGenerator::ThetaPrime, _) => TensorElement::zero(),
            },
            CalculusVariant::Rel | CalculusVariant::RelReduced => match (gen, g) {
                // [dx^a, x^b] = -(i hbar / m) eta^{ab} theta'
                (FormGenerator::Dx(a), AlgGen::X(b)) => {
                    if a == b {
                        let eta = Coefficient::from_int(s.eta(a));
                        TensorElement::from_parts(
                            AlgebraElement::from_coefficient(s, -(ih * inv_m * eta)),
                            &[FormGenerator::ThetaPrime],
                        )
                    } else {
                        TensorElement::zero()
                    }
                }
                // [dx^a, p_c] = (i hbar q / m) eta^{ab} F_{bc} theta' = [dp_c, x^a]
                (FormGenerator::Dx(a), AlgGen::P(c)) => self.f_theta_relation(a, c),
                (FormGenerator::Dp(c), AlgGen::X(a)) => self.f_theta_relation(a, c),
                // [dp_c, p_d] = -i hbar q F_{ac,d} dx^a
                //               - (hbar^2 q / 2m) eta^{ab} F_{bc,ad} theta'
                //               - (i hbar q^2 / m) eta^{ab} F_{ac} F_{bd} theta'
                (FormGenerator::Dp(c), AlgGen::P(d)) => {
                    let q = Coefficient::symbol(Symbol::Charge);
                    let mut t = TensorElement::zero();
                    for a in s.indices() {
                        let f = AlgebraElement::field_strength(s, a, c, &[d]);
                        t = t + TensorElement::from_parts(
                            f.scale(&(-(ih.clone() * q.clone()))),
                            &[FormGenerator::Dx(a)],
                        );
                    }
                    let hh_q_2m = Coefficient::symbol_pow(Symbol::Hbar, 2)
                        * q.clone()
                        * Coefficient::from_ratio(1, 2)
                        * inv_m.clone();
                    let ihqq_m = ih.clone()
                        * q.clone()
                        * q.clone()
                        * inv_m.clone();
                    let mut theta_coef = AlgebraElement::zero(s);
                    for a in s.indices() {
                        // diagonal eta: b = a
                        let eta = Coefficient::from_int(s.eta(a));
                        let fdd = AlgebraElement::field_strength(s, a, c, &[a, d]);
                        theta_coef = theta_coef + fdd.scale(&(-(hh_q_2m.clone() * eta.clone())));
                        let fac = AlgebraElement::field_strength(s, a, c, &[]);
                        let fbd = AlgebraElement::field_strength(s, a, d, &[]);
                        theta_coef =
                            theta_coef + (&fac * &fbd).scale(&(-(ihqq_m.clone() * eta)));
                    }
                    t + TensorElement::from_parts(theta_coef, &[FormGenerator::ThetaPrime])
                }
                (FormGenerator::ThetaPrime, _) => TensorElement::zero(),
            },
        }
    }

    /// (i hbar q / m) eta^{ab} F_{bc} theta' with the eta sum collapsed.
    fn f_theta_relation(&self, a: u8, c: u8) -> TensorElement {
        let s = self.algebra;
        let coef = Coefficient::i_hbar()
            * Coefficient::symbol(Symbol::Charge)
            * Coefficient::symbol_pow(Symbol::Mass, -1)
            * Coefficient::from_int(s.eta(a));
        TensorElement::from_parts(
            AlgebraElement::field_strength(s, a, c, &[]).scale(&coef),
            &[FormGenerator::ThetaPrime],
        )
    }

    /// The commutator [gen, f] for a single position atom f, from the
    /// function rule of the calculus. Coordinates route through `relation`
    /// so that deliberate sign flips are visible to the rewriting engine.
    pub fn atom_commutator(&self, gen: FormGenerator, atom: &PositionAtom) -> TensorElement {
        if let PositionAtom::Coordinate(b) = atom {
            return self.relation(gen, AlgGen::X(*b));
        }
        let s = self.algebra;
        let f = single_atom(s, atom.clone());
        let ih = Coefficient::i_hbar();
        let inv_m = Coefficient::symbol_pow(Symbol::Mass, -1);
        match gen {
            FormGenerator::ThetaPrime => TensorElement::zero(),
            // [dx^a, f] = -(i hbar / m) eta^{ab} f_{,b} theta'
            FormGenerator::Dx(a) => {
                let eta = Coefficient::from_int(s.eta(a));
                let coef = -(ih * inv_m * eta);
                TensorElement::from_parts(f.partial(a).scale(&coef), &[FormGenerator::ThetaPrime])
            }
            FormGenerator::Dp(c) => {
                if !s.is_relativistic() {
                    return TensorElement::zero();
                }
                // [dp_c, f] = (i hbar q / m) eta^{ab} F_{bc} f_{,a} theta'
                let q = Coefficient::symbol(Symbol::Charge);
                let mut coef = AlgebraElement::zero(s);
                for a in s.indices() {
                    let eta = Coefficient::from_int(s.eta(a));
                    let fbc = AlgebraElement::field_strength(s, a, c, &[]);
                    coef = coef
                        + (&fbc * &f.partial(a)).scale(&(ih.clone() * q.clone() * inv_m.clone() * eta));
                }
                TensorElement::from_parts(coef, &[FormGenerator::ThetaPrime])
            }
        }
    }

    /// The commutator [gen, p_a] used by the rewriting engine.
    pub fn momentum_commutator(&self, gen: FormGenerator, a: u8) -> TensorElement {
        self.relation(gen, AlgGen::P(a))
    }

    /// Dimension label used in reports.
    pub fn dimension(&self) -> u8 {
        match self.algebra.kind {
            crate::ncalg::AlgebraKind::NonRelativistic { dim } => dim,
            crate::ncalg::AlgebraKind::Relativistic { spatial, .. } => spatial + 1,
        }
    }

    pub fn calculus_label(&self) -> &'static str {
        match self.variant {
            CalculusVariant::NonRel => "nonrel",
            CalculusVariant::Rel => "rel",
            CalculusVariant::RelReduced => "rel-reduced",
        }
    }
}

fn single_atom(spec: AlgebraSpec, atom: PositionAtom) -> AlgebraElement {
    match atom {
        PositionAtom::Coordinate(a) => AlgebraElement::coordinate(spec, a),
        PositionAtom::PotentialDeriv(i) => AlgebraElement::potential_deriv(spec, i),
        PositionAtom::GaugeDeriv(a, i) => AlgebraElement::gauge_deriv(spec, a, i),
    }
}
