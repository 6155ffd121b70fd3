//! File formats, corpus generation and the `fintop` command line.

pub mod app;
pub mod corpus;
pub mod instance;
pub mod report;

pub use app::run;
