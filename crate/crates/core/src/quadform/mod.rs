//! Quadratic and bilinear forms over F_q^n: ranks, Gauss sums, isotropic
//! vectors, Hankel matrices and the rank statistics of `M_{a,b}`.

mod gauss;
mod hankel;
mod isotropic;
pub mod kernel;
mod matrix;
mod rank_stats;

pub use gauss::{gauss_mean, weyl_check, GaussReport, QuadPhase, WeylReport};
pub use hankel::{dilation_matrix, hankel_matrix, hankel_pair_identity, m_ab, verify_hankel_form, PairForm};
pub use isotropic::{isotropic_bound, isotropic_count, IsotropicReport};
pub use matrix::FqMatrix;
pub use rank_stats::{rank_stats, RankMode, RankStats};
