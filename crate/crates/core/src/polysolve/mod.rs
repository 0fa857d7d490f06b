//! Exact solving of zero-dimensional polynomial systems over cyclotomic fields.

pub mod groebner;
pub mod parse;
pub mod poly;
pub mod quotient;
pub mod roots;
pub mod zeros;

pub use groebner::{buchberger, normal_form};
pub use parse::{parse_poly, parse_scalar};
pub use poly::{default_vars, Monomial, MonomialOrder, MultiPoly};
pub use quotient::QuotientAlgebra;
pub use zeros::{find_zeros, jacobian_is_invertible, section_degrees, ZeroDatum, ZeroSet};
