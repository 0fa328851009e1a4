//! Exact algebra substrate: fields, polynomials, Gröbner bases, group algebras and matrices.

pub mod groebner;
pub mod group;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod scalar;

pub use groebner::{buchberger, ideal_equal, normal_form, IdealBasis};
pub use group::{FiniteAbelianGroup, GroupAlgebra, GroupAlgebraElement, GroupElement};
pub use matrix::{ring_matrix_product, RingMatrix};
pub use poly::{Monomial, PolyRing, Polynomial, TermOrder};
pub use ring::{CommutativeRing, QuotientRing};
pub use scalar::{Field, Scalar};
