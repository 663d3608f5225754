//! Exact scalar fields, sparse multivariate polynomials, and binary forms.

pub mod binary;
pub mod field;
pub mod parse;
pub mod poly;
pub mod univariate;

pub use binary::{restrict_to_line, BinaryForm, BinaryFormProfile};
pub use field::{next_prime, Field, FieldKind, PrimeField, QuadraticExtension, Rationals};
pub use parse::{parse_poly, parse_poly_in};
pub use poly::{binomial, monomials_of_degree, Exponents, MultiPoly};
pub use univariate::UniPoly;
