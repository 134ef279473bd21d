//! Exact rational arithmetic, sparse polynomials, term orders, Gröbner bases
//! and dense linear algebra.

pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod order;
pub mod poly;
pub mod ring;

pub use groebner::{gb_buchberger, normal_form, s_polynomial, GroebnerBasis};
pub use ideal::{
    affine_dimension, ideal_membership, ideals_equal, radical_membership, radical_membership_all, standard_monomials, staircase,
    QuotientBasis, DEFAULT_MAX_STANDARD,
};
pub use linalg::{rank_kernel, solve_affine, MatrixQ};
pub use order::{OrderKind, TermOrder};
pub use poly::Poly;
pub use ring::{q, qf, Monomial, Ring, Q};
