//! Graded tensors over the algebra: sums of (coefficient) x (form word)
//! with all algebra coefficients pushed to the far left.
//!
//! A form word is a sequence of generator 1-forms joined by tensor or wedge
//! products; wedge runs are kept strictly ascending in the fixed order
//! dx^a < dp_a < theta' (index ascending within each class), with the
//! anticommutator corrections of the calculus applied on reordering.

use super::spec::CalculusSpec;
use crate::ncalg::{AlgebraElement, AlgebraSpec, TermKey};
use crate::scalar::Coefficient;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Generator 1-forms. The derived order is the canonical basis order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum FormGenerator {
    Dx(u8),
    Dp(u8),
    ThetaPrime,
}

impl FormGenerator {
    pub fn label(&self) -> String {
        match self {
            FormGenerator::Dx(a) => format!("dx{}", a),
            FormGenerator::Dp(a) => format!("dp{}", a),
            FormGenerator::ThetaPrime => "theta'".to_string(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum JoinOp {
    Tensor,
    Wedge,
}

/// Ordered product of generator forms. `joins[i]` sits between
/// `factors[i]` and `factors[i+1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct FormWord {
    pub factors: Vec<FormGenerator>,
    pub joins: Vec<JoinOp>,
}

impl FormWord {
    pub fn scalar() -> Self {
        FormWord {
            factors: vec![],
            joins: vec![],
        }
    }

    pub fn tensor(gens: &[FormGenerator]) -> Self {
        FormWord {
            factors: gens.to_vec(),
            joins: vec![JoinOp::Tensor; gens.len().saturating_sub(1)],
        }
    }

    pub fn wedge(gens: &[FormGenerator]) -> Self {
        FormWord {
            factors: gens.to_vec(),
            joins: vec![JoinOp::Wedge; gens.len().saturating_sub(1)],
        }
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn contains(&self, g: FormGenerator) -> bool {
        self.factors.contains(&g)
    }
}

impl fmt::Display for FormWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, g) in self.factors.iter().enumerate() {
            if i > 0 {
                match self.joins[i - 1] {
                    JoinOp::Tensor => write!(f, " (x) ")?,
                    JoinOp::Wedge => write!(f, " ^ ")?,
                }
            }
            write!(f, "{}", g.label())?;
        }
        Ok(())
    }
}

/// Canonical graded tensor: word -> left coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorElement {
    terms: BTreeMap<FormWord, AlgebraElement>,
}

/// Intermediate term for the rewriting engine: the value is
/// `slots[0].0 * slots[0].1 * slots[1].0 * ... * tail`.
#[derive(Clone, Debug)]
pub(crate) struct RawTerm {
    slots: Vec<(AlgebraElement, FormGenerator)>,
    joins: Vec<JoinOp>,
    tail: AlgebraElement,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total residual size: number of algebra terms across all words.
    pub fn residual_terms(&self) -> usize {
        self.terms.values().map(|e| e.num_terms()).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormWord, &AlgebraElement)> {
        self.terms.iter()
    }

    pub fn from_algebra(e: AlgebraElement) -> Self {
        let mut t = TensorElement::zero();
        t.add_word(FormWord::scalar(), e);
        t
    }

    /// coefficient * (g1 (x) g2 (x) ...), assumed already canonical.
    pub fn from_parts(coeff: AlgebraElement, gens: &[FormGenerator]) -> Self {
        let mut t = TensorElement::zero();
        t.add_word(FormWord::tensor(gens), coeff);
        t
    }

    pub fn generator(spec: AlgebraSpec, g: FormGenerator) -> Self {
        TensorElement::from_parts(AlgebraElement::one(spec), &[g])
    }

    pub fn add_word(&mut self, word: FormWord, coeff: AlgebraElement) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + coeff;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = TensorElement::zero();
        for (w, e) in &self.terms {
            out.add_word(w.clone(), e.scale(c));
        }
        out
    }

    /// Multiply every coefficient by `a` from the left (no rewriting needed).
    pub fn left_mul(&self, a: &AlgebraElement) -> Self {
        let mut out = TensorElement::zero();
        for (w, e) in &self.terms {
            out.add_word(w.clone(), a * e);
        }
        out
    }

    /// Multiply by `a` from the right and renormalize.
    pub fn right_mul(&self, a: &AlgebraElement, spec: &CalculusSpec) -> Self {
        let mut out = TensorElement::zero();
        for (w, e) in &self.terms {
            if w.factors.is_empty() {
                out.add_word(FormWord::scalar(), e * a);
                continue;
            }
            let raw = RawTerm {
                slots: word_slots(e.clone(), w, spec.algebra),
                joins: w.joins.clone(),
                tail: a.clone(),
            };
            normalize_into(&mut out, raw, spec);
        }
        out
    }

    /// Commutator with an algebra element.
    pub fn commutator_alg(&self, a: &AlgebraElement, spec: &CalculusSpec) -> Self {
        self.right_mul(a, spec) - self.left_mul(a)
    }

    /// Tensor product of two canonical tensors.
    pub fn tensor_product(&self, rhs: &TensorElement, spec: &CalculusSpec) -> Self {
        self.join_product(rhs, JoinOp::Tensor, spec)
    }

    /// Wedge product of two canonical wedge-shaped tensors
    /// (nonrelativistic calculus only).
    pub fn wedge_product(&self, rhs: &TensorElement, spec: &CalculusSpec) -> Self {
        assert!(
            !spec.is_relativistic(),
            "the relativistic calculus carries no Omega^2"
        );
        self.join_product(rhs, JoinOp::Wedge, spec)
    }

    fn join_product(&self, rhs: &TensorElement, op: JoinOp, spec: &CalculusSpec) -> Self {
        let mut out = TensorElement::zero();
        for (w1, e1) in &self.terms {
            for (w2, e2) in &rhs.terms {
                if w1.factors.is_empty() || w2.factors.is_empty() {
                    // Scalar factor on either side.
                    let word = if w1.factors.is_empty() {
                        w2.clone()
                    } else {
                        w1.clone()
                    };
                    let raw = if w1.factors.is_empty() {
                        RawTerm {
                            slots: word_slots(e1 * e2, &word, spec.algebra),
                            joins: word.joins.clone(),
                            tail: AlgebraElement::one(spec.algebra),
                        }
                    } else {
                        RawTerm {
                            slots: word_slots(e1.clone(), &word, spec.algebra),
                            joins: word.joins.clone(),
                            tail: e2.clone(),
                        }
                    };
                    normalize_into(&mut out, raw, spec);
                    continue;
                }
                let mut slots = word_slots(e1.clone(), w1, spec.algebra);
                let mut joins = w1.joins.clone();
                joins.push(op);
                let rhs_slots = word_slots(e2.clone(), w2, spec.algebra);
                slots.extend(rhs_slots);
                joins.extend(w2.joins.iter().copied());
                let raw = RawTerm {
                    slots,
                    joins,
                    tail: AlgebraElement::one(spec.algebra),
                };
                normalize_into(&mut out, raw, spec);
            }
        }
        out
    }

    /// Re-run the full normalization (idempotent on canonical input).
    pub fn renormalize(&self, spec: &CalculusSpec) -> Self {
        let mut out = TensorElement::zero();
        for (w, e) in &self.terms {
            let raw = RawTerm {
                slots: word_slots(e.clone(), w, spec.algebra),
                joins: w.joins.clone(),
                tail: AlgebraElement::one(spec.algebra),
            };
            normalize_into(&mut out, raw, spec);
        }
        out
    }

    /// Replace one join operation in every word and renormalize (used to
    /// apply the wedge map to tensor products, e.g. torsion's
    /// wedge-compose-nabla).
    pub fn set_join(&self, pos: usize, op: JoinOp, spec: &CalculusSpec) -> Self {
        let mut out = TensorElement::zero();
        for (w, e) in &self.terms {
            assert!(pos < w.joins.len());
            let mut joins = w.joins.clone();
            joins[pos] = op;
            let raw = RawTerm {
                slots: word_slots(e.clone(), w, spec.algebra),
                joins,
                tail: AlgebraElement::one(spec.algebra),
            };
            normalize_into(&mut out, raw, spec);
        }
        out
    }

    /// Substitute concrete potential/gauge bindings into every coefficient.
    pub fn substitute(
        &self,
        b: &crate::ncalg::Bindings,
    ) -> Result<Self, crate::ncalg::SubstError> {
        let mut out = TensorElement::zero();
        for (w, e) in &self.terms {
            out.add_word(w.clone(), e.substitute(b)?);
        }
        Ok(out)
    }

    /// Drop every word containing theta' (the theta' = 0 projection).
    pub fn project_theta_zero(&self) -> Self {
        let mut out = TensorElement::zero();
        for (w, e) in &self.terms {
            if !w.contains(FormGenerator::ThetaPrime) {
                out.add_word(w.clone(), e.clone());
            }
        }
        out
    }

    /// Keep only the given hbar order of every coefficient.
    pub fn hbar_order(&self, order: i32) -> Self {
        let mut out = TensorElement::zero();
        for (w, e) in &self.terms {
            out.add_word(w.clone(), e.hbar_order(order));
        }
        out
    }

    /// Rewrite with every coefficient moved to the far right:
    /// returns (word, right-coefficient) pairs. Used to apply right
    /// Leibniz rules.
    pub fn right_normal_parts(&self, spec: &CalculusSpec) -> Vec<(FormWord, AlgebraElement)> {
        let mut out: BTreeMap<FormWord, AlgebraElement> = BTreeMap::new();
        let mut work: Vec<RawTerm> = Vec::new();
        for (w, e) in &self.terms {
            let raw = RawTerm {
                slots: word_slots(e.clone(), w, spec.algebra),
                joins: w.joins.clone(),
                tail: AlgebraElement::one(spec.algebra),
            };
            work.push(raw);
        }
        while let Some(r) = work.pop() {
            if r.tail.is_zero() {
                continue;
            }
            // Find the leftmost slot with a non-unit pre; move it right.
            let mut acted = false;
            for i in 0..r.slots.len() {
                if is_one(&r.slots[i].0) {
                    continue;
                }
                let pre = r.slots[i].0.clone();
                let gen = r.slots[i].1;
                for (key, coeff) in pre.terms() {
                    // c f . g = g . c f - [g, c f]
                    let t_elem = single_term(spec.algebra, key, coeff);
                    let mut keep = r.clone();
                    keep.slots[i].0 = AlgebraElement::one(spec.algebra);
                    if i + 1 < keep.slots.len() {
                        let merged = &t_elem * &keep.slots[i + 1].0;
                        keep.slots[i + 1].0 = merged;
                    } else {
                        keep.tail = &t_elem * &keep.tail;
                    }
                    work.push(keep);
                    for (lead, gamma, trail) in comm_gen_term(spec, gen, key) {
                        // subtract lead gamma trail (coefficient included)
                        let mut corr = r.clone();
                        corr.slots[i] = (lead.scale(&-coeff.clone()), gamma);
                        if i + 1 < corr.slots.len() {
                            let merged = &trail * &corr.slots[i + 1].0;
                            corr.slots[i + 1].0 = merged;
                        } else {
                            corr.tail = &trail * &corr.tail;
                        }
                        work.push(corr);
                    }
                }
                acted = true;
                break;
            }
            if acted {
                continue;
            }
            // All pres are one: record (word, tail).
            let word = FormWord {
                factors: r.slots.iter().map(|s| s.1).collect(),
                joins: r.joins.clone(),
            };
            match out.entry(word) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(r.tail);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let v = e.get().clone() + r.tail;
                    if v.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = v;
                    }
                }
            }
        }
        out.into_iter().filter(|(_, e)| !e.is_zero()).collect()
    }
}

impl Add for TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: TensorElement) -> TensorElement {
        let mut out = self;
        for (w, e) in rhs.terms {
            out.add_word(w, e);
        }
        out
    }
}

impl Sub for TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: TensorElement) -> TensorElement {
        self + (-rhs)
    }
}

impl Neg for TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, e) in self.terms {
            out.add_word(w, -e);
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, e) in &self.terms {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "({})  {}", e, w)?;
        }
        Ok(())
    }
}

fn is_one(e: &AlgebraElement) -> bool {
    let mut it = e.terms();
    match it.next() {
        Some((k, c)) => {
            it.next().is_none() && *k == TermKey::unit() && *c == Coefficient::one()
        }
        None => false,
    }
}

fn word_slots(
    lead: AlgebraElement,
    w: &FormWord,
    spec: AlgebraSpec,
) -> Vec<(AlgebraElement, FormGenerator)> {
    let mut slots = Vec::with_capacity(w.factors.len());
    for (i, g) in w.factors.iter().enumerate() {
        if i == 0 {
            slots.push((lead.clone(), *g));
        } else {
            slots.push((AlgebraElement::one(spec), *g));
        }
    }
    slots
}

/// Build the canonical element for one normal-ordered term.
fn single_term(spec: AlgebraSpec, key: &TermKey, coeff: &Coefficient) -> AlgebraElement {
    let mut e = AlgebraElement::zero(spec);
    e.add_term(key.clone(), coeff.clone());
    e
}

/// [gen, f1 f2 .. fk] for one normal-ordered term (coefficient excluded),
/// by the Leibniz rule over the factors. Each piece comes back as
/// (lead, gamma, trail) with the correction generator gamma between the
/// untouched prefix and suffix of the term.
fn comm_gen_term(
    spec: &CalculusSpec,
    gen: FormGenerator,
    key: &TermKey,
) -> Vec<(AlgebraElement, FormGenerator, AlgebraElement)> {
    if gen == FormGenerator::ThetaPrime {
        return vec![];
    }
    let alg = spec.algebra;
    // Expand the term into its ordered factor list.
    enum F {
        Pos(crate::ncalg::PositionAtom),
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

    let mut out = Vec::new();
    for j in 0..factors.len() {
        let inner: TensorElement = match &factors[j] {
            F::Pos(atom) => spec.atom_commutator(gen, atom),
            F::Mom(a) => spec.momentum_commutator(gen, *a),
        };
        if inner.is_zero() {
            continue;
        }
        let prefix = slice_element(alg, key, 0, j);
        let suffix = slice_element(alg, key, j + 1, factors.len());
        for (w, c) in inner.terms() {
            debug_assert_eq!(w.rank(), 1, "relation entries are rank-1");
            out.push((&prefix * c, w.factors[0], suffix.clone()));
        }
    }
    out
}

/// Contiguous factor slice of a normal-ordered term as a canonical element.
fn slice_element(spec: AlgebraSpec, key: &TermKey, from: usize, to: usize) -> AlgebraElement {
    let mut pos_list: Vec<crate::ncalg::PositionAtom> = Vec::new();
    for (atom, pow) in &key.position {
        for _ in 0..*pow {
            pos_list.push(atom.clone());
        }
    }
    let n_pos = pos_list.len();
    let mut position = crate::ncalg::PositionPart::new();
    let mut momenta = Vec::new();
    for i in from..to {
        if i < n_pos {
            *position.entry(pos_list[i].clone()).or_insert(0) += 1;
        } else {
            momenta.push(key.momenta[i - n_pos]);
        }
    }
    let mut e = AlgebraElement::zero(spec);
    e.add_term(TermKey { position, momenta }, Coefficient::one());
    e
}

/// Core left-normalizer: rewrite `raw` until every coefficient is at the
/// far left and wedge runs are canonically ordered, accumulating into `out`.
pub(crate) fn normalize_into(out: &mut TensorElement, raw: RawTerm, spec: &CalculusSpec) {
    let mut work: Vec<RawTerm> = vec![raw];
    while let Some(r) = work.pop() {
        if r.tail.is_zero() || r.slots.iter().any(|(p, _)| p.is_zero()) {
            continue;
        }
        if r.slots.is_empty() {
            out.add_word(FormWord::scalar(), r.tail);
            continue;
        }
        // Step 1: absorb a non-unit tail through the last generator.
        if !is_one(&r.tail) {
            let k = r.slots.len() - 1;
            let gen = r.slots[k].1;
            for (key, coeff) in r.tail.terms() {
                let t_elem = single_term(spec.algebra, key, coeff);
                let mut a = r.clone();
                let merged = &a.slots[k].0 * &t_elem;
                a.slots[k].0 = merged;
                a.tail = AlgebraElement::one(spec.algebra);
                work.push(a);
                for (lead, gamma, trail) in comm_gen_term(spec, gen, key) {
                    let mut b = r.clone();
                    b.slots[k] = ((&r.slots[k].0 * &lead).scale(coeff), gamma);
                    b.tail = trail;
                    work.push(b);
                }
            }
            continue;
        }
        // Step 2: move interior coefficients left (rightmost first).
        if let Some(i) = (1..r.slots.len()).rev().find(|i| !is_one(&r.slots[*i].0)) {
            let pre = r.slots[i].0.clone();
            let gen_left = r.slots[i - 1].1;
            for (key, coeff) in pre.terms() {
                let t_elem = single_term(spec.algebra, key, coeff);
                let mut a = r.clone();
                a.slots[i].0 = AlgebraElement::one(spec.algebra);
                let merged = &a.slots[i - 1].0 * &t_elem;
                a.slots[i - 1].0 = merged;
                work.push(a);
                for (lead, gamma, trail) in comm_gen_term(spec, gen_left, key) {
                    let mut b = r.clone();
                    b.slots[i].0 = trail;
                    b.slots[i - 1] = ((&r.slots[i - 1].0 * &lead).scale(coeff), gamma);
                    work.push(b);
                }
            }
            continue;
        }
        // Step 3: canonicalize wedge runs.
        let mut acted = false;
        for j in 0..r.joins.len() {
            if r.joins[j] != JoinOp::Wedge {
                continue;
            }
            let g1 = r.slots[j].1;
            let g2 = r.slots[j + 1].1;
            if g1 < g2 {
                continue;
            }
            debug_assert!(
                !spec.is_relativistic(),
                "wedge words arise only in the nonrelativistic calculus"
            );
            if g1 == g2 {
                // g ^ g = (1/2){g, g}: nonzero only for dp_i ^ dp_i.
                if let FormGenerator::Dp(i) = g1 {
                    push_wedge_correction(
                        &mut work,
                        &r,
                        j,
                        i,
                        i,
                        Coefficient::i_hbar() * Coefficient::from_ratio(1, 2),
                        spec,
                    );
                }
            } else {
                // g1 ^ g2 = -g2 ^ g1 + {g1, g2}
                let mut swapped = r.clone();
                swapped.slots[j].1 = g2;
                swapped.slots[j + 1].1 = g1;
                swapped.slots[j].0 = swapped.slots[j].0.scale(&-Coefficient::one());
                work.push(swapped);
                if let (FormGenerator::Dp(i1), FormGenerator::Dp(i2)) = (g1, g2) {
                    push_wedge_correction(
                        &mut work,
                        &r,
                        j,
                        i1,
                        i2,
                        Coefficient::i_hbar(),
                        spec,
                    );
                }
            }
            acted = true;
            break;
        }
        if acted {
            continue;
        }
        // Canonical.
        let word = FormWord {
            factors: r.slots.iter().map(|s| s.1).collect(),
            joins: r.joins.clone(),
        };
        out.add_word(word, r.slots[0].0.clone());
    }
}

/// Splice {dp_i, dp_j} = i hbar V_{,ijk} dx^k ^ theta' in place of the
/// wedge pair at position j (scale carries the 1/2 for the equal case).
fn push_wedge_correction(
    work: &mut Vec<RawTerm>,
    r: &RawTerm,
    j: usize,
    i1: u8,
    i2: u8,
    scale: Coefficient,
    spec: &CalculusSpec,
) {
    for k in spec.algebra.indices() {
        let v = AlgebraElement::potential_deriv(spec.algebra, vec![i1, i2, k]).scale(&scale);
        let mut b = r.clone();
        b.slots[j] = (&r.slots[j].0 * &v, FormGenerator::Dx(k));
        b.slots[j + 1] = (
            AlgebraElement::one(spec.algebra),
            FormGenerator::ThetaPrime,
        );
        work.push(b);
    }
}

/// Build a raw term for the normalizer from canonical pieces; exposed to
/// sibling modules (diff, connection) that construct products directly.
pub(crate) fn raw_term(
    lead: AlgebraElement,
    parts: Vec<(AlgebraElement, FormGenerator)>,
    joins: Vec<JoinOp>,
    tail: AlgebraElement,
) -> RawTerm {
    let mut slots = parts;
    if let Some(first) = slots.first_mut() {
        first.0 = &lead * &first.0;
    }
    RawTerm { slots, joins, tail }
}

pub(crate) fn normalize_raw(raw: RawTerm, spec: &CalculusSpec) -> TensorElement {
    let mut out = TensorElement::zero();
    normalize_into(&mut out, raw, spec);
    out
}

impl std::iter::Sum for TensorElement {
    fn sum<I: Iterator<Item = TensorElement>>(iter: I) -> TensorElement {
        iter.fold(TensorElement::zero(), |a, b| a + b)
    }
}
