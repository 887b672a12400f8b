//! Lexicon- and rule-based opinion mining over comment corpora.
//!
//! The pipeline: [`corpus`] loads comments, [`preprocess`] cleans them,
//! [`engines`] scores each kept comment with three independent scorers,
//! [`analytics`] labels the scores and aggregates them, and [`report`]
//! writes the results (with SVG charts from [`plot`]).

pub mod analytics;
pub mod config;
pub mod corpus;
pub mod engines;
pub mod error;
pub mod lexicon;
pub mod plot;
pub mod preprocess;
pub mod report;

pub use error::Error;
