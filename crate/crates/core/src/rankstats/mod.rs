//! Comparison statistics between two ranking scores: linear and rank
//! correlation, concordance, partial correlation, rank displacement and
//! principal components.

pub mod concordance;
pub mod correlation;
pub mod displacement;
pub mod pca;
pub mod ranks;
mod report;

pub use concordance::kendall_w;
pub use correlation::{partial_correlation, partial_from_pairwise, pearson, spearman, Correlation};
pub use displacement::{rank_displacement, Displacement};
pub use pca::{pca, varimax, CorrelationMatrix, PcaResult};
pub use ranks::{average_ranks, descending_ranks};
pub use report::{compare, ComparisonReport};
