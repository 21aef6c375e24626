//! Exact coefficient arithmetic, sparse multivariate polynomials, and dense
//! linear algebra over the rationals and prime fields.

mod matrix;
mod poly;
mod scalar;

pub use matrix::{DenseMatrix, FpRank};
pub use poly::{
    binary_forms_gcd_degree, gcd_univariate, ideal_hilbert_function, monomials_of_degree, Monomial,
    MultiPoly,
};
pub use scalar::{fp, Domain, Scalar};
