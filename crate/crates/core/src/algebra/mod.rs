//! Exact polynomial arithmetic with a ℤ-weight grading refined by the
//! exponent multigrading.

mod field;
mod monomial;
mod polynomial;
mod weighting;

pub use field::Field;
pub use monomial::{count_monomials, weight_of_monomial, ExponentBox, Monomial, MonomialDisplay};
pub use polynomial::{homogeneity, GradedPolynomial, Homogeneity, Polynomial, PolynomialDisplay};
pub use weighting::{Block, Weighting};

pub(crate) use weighting::check_permutation;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("length mismatch: expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("not a permutation")]
    NotAPermutation,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown coefficient field `{0}` (expected Q or GF:<prime>)")]
    UnknownField(String),
}
