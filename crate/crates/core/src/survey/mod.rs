//! Batch engines: full scans, table reproduction, growth fits and the
//! exhaustive small-graph search.

pub mod enumerate;
pub mod growth;
pub mod scan;
pub mod search;
pub mod tables;

pub use enumerate::{enumerate_connected, pair_slots, MAX_ORDER, MIN_ORDER};
pub use growth::growth_fit;
pub use scan::{scan_graph, ScanReport};
pub use search::{
    conjecture_search, search_order, CheckpointLog, SearchError, SearchRecord, SurveyReport,
};
pub use tables::{reproduce_tables, TablesReport};
