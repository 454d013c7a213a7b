//! Polynomials over the localization of `k[x_1..x_n]` at the origin.

pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod reduce;
pub mod standard_basis;
pub mod vector;

pub use monomial::{LocalOrder, Monomial};
pub use parse::parse_poly;
pub use polynomial::{ArithOp, Poly, Term};
pub use reduce::{mora_normal_form, normal_form, weak_normal_form, TAIL_DEGREE_BOUND};
pub use standard_basis::{ideal_syzygies, relations, standard_basis, std_basis, syzygies};
pub use vector::{LeadTerm, Vector};
