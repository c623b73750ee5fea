//! Independent verification paths: exact characteristic polynomials over
//! the rationals, polynomial root extraction, and a Jacobi eigensolver that
//! shares no code with [`crate::spectrum`].

pub mod charpoly;
pub mod jacobi;
pub mod poly;
pub mod roots;

pub use charpoly::{char_poly_exact, RationalMatrix, MAX_CHAR_POLY_ORDER};
pub use jacobi::jacobi_eigen;
pub use poly::RationalPolynomial;
pub use roots::{real_roots, verify_root_multiset, Root};
