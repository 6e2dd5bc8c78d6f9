//! Hayes' relation R_{l,Q}, the group G_{l,Q}, its characters and their
//! L-polynomials.

mod character;
mod class;
mod group;
mod lfunc;
mod snf;
mod sums;

pub use character::HayesCharacter;
pub use class::{HayesClass, HayesModulus};
pub use group::{HayesGroup, DEFAULT_GROUP_BUDGET};
pub use lfunc::{
    char_sum_exponent_report, classify_modulus, ensure_exact, ensure_residuals, euler_inverse_check,
    l_polynomial, log_deriv_check, max_residual, principal_check, principal_series, rh_check,
    CharSumRow, ExactRow, LPolynomial, Residual, RootClass, RootEntry, RootReport, CHECK_TOL,
    ROOT_TOL, VANISH_TOL,
};
pub use snf::{smith, Smith};
pub use sums::ClassSums;
