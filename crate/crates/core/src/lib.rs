//! Edge derivatives of normalized-Laplacian eigenvalues and of Kemeny's
//! constant for small undirected graphs.
//!
//! The main entry points:
//!
//! | Item | Purpose |
//! |------|---------|
//! | [`graph::Graph`], [`families`] | dense weighted graphs and named generators |
//! | [`spectral::derivative_table`] | `dλ` for every eigenvalue group and `dK`, for every vertex pair |
//! | [`spectral::kemeny`] | Kemeny's constant from the spectrum |
//! | [`verify`] | finite-difference and mean-first-passage cross-checks |
//! | [`theorems::check_table`] | structural identities every table must satisfy |
//! | [`survey`] | exhaustive searches over small graphs and table reproduction |
//!
//! ```
//! use spectral_edge::{families, spectral};
//!
//! let g = families::cricket();
//! let table = spectral::derivative_table(&g).unwrap();
//! let row = table.row(0, 1).unwrap();
//! let i = table.group_near(1.5, 1e-9).unwrap();
//! assert!((row.d_lambda[i] - 0.25).abs() < 1e-12);
//! ```

// `!(x <= tol)` is used on purpose so that NaN fails every check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod spectral;
pub mod survey;
pub mod theorems;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{EdgeSet, Graph, PairKind, VertexPair};
