//! Institution-level citation networks, PageRank reputation scores and the
//! statistics used to compare them with indicator-based rankings.
//!
//! The pipeline runs in stages, each usable on its own:
//!
//! 1. [`ingest`] parses JSON Lines publication records, applies a subject's
//!    publication threshold and aggregates cross-citations among the
//!    retained institutions into a [`CitationNetwork`].
//! 2. [`citegraph`] reports in-degree, degree centrality and its empirical
//!    distribution.
//! 3. [`pagerank`] computes the stationary scores of the damped citation
//!    walk.
//! 4. [`scoring`] compresses raw indicators, forms weighted composite
//!    scores and puts PageRank on the same 0–100 scale.
//! 5. [`rankstats`] compares two scores: Pearson, Spearman, Kendall's W,
//!    partial correlations, rank displacement and PCA with varimax.
//!
//! [`synthnet`] generates seeded synthetic networks, including citation
//! cartels, for property testing.

pub mod citegraph;
pub mod error;
pub mod fmt;
pub mod ingest;
pub mod pagerank;
pub mod profile;
pub mod rankstats;
pub mod scoring;
pub mod synthnet;

pub use citegraph::{CitationNetwork, DegreeReport, NetworkSummary};
pub use error::{Error, Result};
pub use pagerank::{DanglingPolicy, PageRankConfig, PageRankResult};
pub use profile::{Indicator, SubjectProfile};
pub use rankstats::{ComparisonReport, PcaResult};
pub use scoring::ScoreTable;
pub use synthnet::{CartelSpec, SynthConfig};
