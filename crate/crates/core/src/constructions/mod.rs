//! Localization, colimits, homotopy colimits and tensor products.

mod colimit;
mod hocolim;
mod localize;
mod relational;
mod tensor;

pub use colimit::{colimit, extension_map, is_extension, PushoutResult, PushoutSpan};
pub use hocolim::{hocolim, hocolim_functor, HocolimOptions, HocolimResult, Origin};
pub use localize::{localization_names, localize, localize_morphisms};
pub use relational::RelationalDgCat;
pub use tensor::tensor;

