//! Function-field arithmetic over F_q[t] and Möbius correlation sums.

pub mod correlations;
pub mod enumerate;
pub mod error;
pub mod factor;
pub mod field;
pub mod hayes;
pub mod histogram;
pub mod laurent;
pub mod moments;
pub mod poly;
pub mod quadform;
pub mod roots;
pub mod sieve;

pub use error::{Budget, Error, Result};
pub use field::{FieldCtx, FieldSpec, Fq};
pub use poly::Poly;
