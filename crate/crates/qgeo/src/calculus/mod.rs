//! Graded differential structure over the normal-ordering engine: Omega^1,
//! Omega^2 (and just enough Omega^3 to see that the symplectic 2-form is
//! closed), the extended exterior derivative with its theta' correction,
//! relation tables for the three calculi, and their consistency suites.

mod checks;
mod diff;
mod spec;
mod tensor;

pub use checks::{
    central_closed_check, check_first_order_consistency, check_quotient_consistency,
};
pub use diff::{d_algebra, d_form, d_form2, quotient_image, quotient_reduce, wedge, wedge_full};
pub use spec::{AlgGen, CalculusSpec, CalculusVariant};
pub use tensor::{FormGenerator, FormWord, JoinOp, TensorElement};
