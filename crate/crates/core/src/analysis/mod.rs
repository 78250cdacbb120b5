//! Truncated cohomology, presentation comparison and reports.

mod cohomology;
mod compare;
mod linalg;
mod report;

pub use cohomology::{functor_rank_compat, truncated_cohomology, CompatEntry, CompatReport, RankRow, RankTable};
pub use compare::{presentation_equal, EqualityReport, Renaming};
pub use linalg::rank;
