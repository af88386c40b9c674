//! Numeric cross-check of symbolic identities: both sides of an identity
//! are substituted with a concrete potential and represented on the grid,
//! and their difference is measured on the smooth test battery. This path
//! multiplies matrices instead of rewriting symbols, so it is independent
//! of the normal-ordering engine it checks.

use crate::ncalg::{oracle_norm, Bindings, GridRepresentation, NcalgError, SubstError};
use crate::report::Identity;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum OracleError {
    #[error("substitution failed: {0}")]
    Subst(#[from] SubstError),
    #[error("representation failed: {0}")]
    Represent(#[from] NcalgError),
}

/// Worst battery residual of lhs - rhs across all form words of the
/// identity, after substituting `bindings`.
pub fn matrix_residual(
    identity: &Identity,
    bindings: &Bindings,
    rep: &GridRepresentation,
) -> Result<f64, OracleError> {
    let lhs = identity.lhs.substitute(bindings)?;
    let rhs = identity.rhs.substitute(bindings)?;
    let mut words = BTreeSet::new();
    for (w, _) in lhs.terms() {
        words.insert(w.clone());
    }
    for (w, _) in rhs.terms() {
        words.insert(w.clone());
    }
    let mut worst: f64 = 0.0;
    for w in words {
        let spec = rep_spec(&lhs, &rhs);
        let zero = crate::ncalg::AlgebraElement::zero(spec);
        let cl = lhs
            .terms()
            .find(|(ww, _)| **ww == w)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| zero.clone());
        let cr = rhs
            .terms()
            .find(|(ww, _)| **ww == w)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| zero.clone());
        let ml = rep.represent(&cl)?;
        let mut diff = ml;
        let mr = rep.represent(&cr)?;
        diff.add_scaled(&mr, num_complex::Complex64::new(-1.0, 0.0));
        worst = worst.max(oracle_norm(rep, &diff));
    }
    Ok(worst)
}

fn rep_spec(
    lhs: &crate::calculus::TensorElement,
    rhs: &crate::calculus::TensorElement,
) -> crate::ncalg::AlgebraSpec {
    lhs.terms()
        .map(|(_, c)| c.spec())
        .chain(rhs.terms().map(|(_, c)| c.spec()))
        .next()
        .unwrap_or_else(|| crate::ncalg::AlgebraSpec::nonrel(1))
}

/// Worst residual over every identity of a report.
pub fn report_matrix_residual(
    identities: &[Identity],
    bindings: &Bindings,
    rep: &GridRepresentation,
) -> Result<f64, OracleError> {
    let mut worst: f64 = 0.0;
    for id in identities {
        worst = worst.max(matrix_residual(id, bindings, rep)?);
    }
    Ok(worst)
}

/// Battery residual of M(a) M(b) - M(a * b): the symbolic product against
/// the numeric matrix product. Nonzero whenever the normal-ordering engine
/// and the Schroedinger representation disagree.
pub fn homomorphism_residual(
    a: &crate::ncalg::AlgebraElement,
    b: &crate::ncalg::AlgebraElement,
    rep: &GridRepresentation,
) -> Result<f64, OracleError> {
    let ma = rep.represent(a)?;
    let mb = rep.represent(b)?;
    let mut numeric = ma.matmul(&mb);
    let symbolic = rep.represent(&(a * b))?;
    numeric.add_scaled(&symbolic, num_complex::Complex64::new(-1.0, 0.0));
    Ok(oracle_norm(rep, &numeric))
}

/// Worst homomorphism residual over every ordered pair drawn from the
/// given elements: exercises all the commutation corrections numerically.
pub fn homomorphism_battery(
    elements: &[crate::ncalg::AlgebraElement],
    rep: &GridRepresentation,
) -> Result<f64, OracleError> {
    let mut worst: f64 = 0.0;
    for a in elements {
        for b in elements {
            worst = worst.max(homomorphism_residual(a, b, rep)?);
        }
    }
    Ok(worst)
}
