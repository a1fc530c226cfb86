//! Exact arithmetic: prime fields, polynomials, graded rings, Gröbner bases
//! and the ideal/module operations built on them.

pub mod field;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod ring;

pub use field::PrimeField;
pub use groebner::{GroebnerBasis, ModVec};
pub use matrix::GradedMatrix;
pub use monomial::Monomial;
pub use poly::Poly;
pub use ring::{GradedRing, RingRef};
