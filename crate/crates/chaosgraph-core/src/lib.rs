//! Graph/hypergraph spectra and CLT diagnostics for homogeneous sums.
//!
//! The crate builds the structured families behind quadratic and higher
//! order chaoses (Cartesian products, rook variants, grids, fractional
//! products, random supports), computes normalized-Laplacian spectra and
//! edge expansions, evaluates candidate box reductions, and runs exact and
//! Monte Carlo fourth-moment diagnostics.
//!
//! Everything is deterministic: randomized operations take an explicit
//! 64-bit seed and are reproducible bit for bit on a fixed build.

pub mod combdim;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod homsum;
pub mod hypergraph;
pub mod io;
mod phi_search;
pub mod reducibility;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Graph, Partition};
pub use homsum::HomogeneousSum;
pub use hypergraph::WeightedHypergraph;
pub use phi_search::{exact_limit_for, PhiMode, EXACT_LIMIT_BASE};
pub use spectral::{MatrixKind, SpectralReport};
