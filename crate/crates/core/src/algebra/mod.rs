//! Exact coefficients and the graded noncommutative path algebra.

mod coeff;
mod parse;
mod poly;

pub use coeff::{Coefficient, Ring};
pub use parse::parse_poly;
pub(crate) use poly::convert_coefficient;
pub use poly::{leibniz_d, word_boundary, GenId, GenTable, NcPoly, ObjId, Word};
