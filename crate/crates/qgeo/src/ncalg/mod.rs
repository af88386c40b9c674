//! Exact normal-ordering engine for the nonrelativistic Heisenberg algebra
//! ([x^i, p_j] = i hbar delta, generic potential V) and the electromagnetic
//! relativistic Heisenberg algebra ([p_a, p_b] = i hbar q F_ab with
//! F_ab = A_{b,a} - A_{a,b}, generic gauge potential A_a).

mod element;
mod parse;
mod represent;
mod subst;

pub use element::{
    AlgebraElement, AlgebraKind, AlgebraSpec, NcalgError, PositionAtom, PositionPart, TermKey,
};
pub use parse::{parse_expression, ParseError};
pub use represent::{oracle_norm, CMatrix, GridRepresentation, NumericBindings};
pub use subst::{Bindings, SubstError};
