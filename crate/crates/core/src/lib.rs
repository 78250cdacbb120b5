//! Exact symbolic engine for semifree dg categories, together with the
//! plumbing → wrapped Fukaya presentation pipeline.

pub mod algebra;
pub mod analysis;
pub mod constructions;
pub mod dgcat;
pub mod error;
pub mod fukaya;
pub mod plumbing;
pub mod reduce;
pub mod twisted;

pub use algebra::{Coefficient, GenId, GenTable, NcPoly, ObjId, Ring, Word};
pub use dgcat::{CatBuilder, DgFunctor, RewriteSystem, SemifreeDgCat};
pub use error::{DgError, Result};
