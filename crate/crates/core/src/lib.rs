//! Clique-constrained graphs from random line systems of the affine plane.
//!
//! The construction pipeline:
//!
//! 1. [`plane`]: AG(2, q) for a prime `q`, minus one parallel class.
//! 2. [`hypergraph`]: keep each line independently at random.
//! 3. [`dangerous`]: census of the small complete configurations that can
//!    carry a `K_(s+2)`.
//! 4. [`spartite`]: replace each kept line by a random complete s-partite
//!    graph; prune dangerous sets, sparsify edges.
//! 5. [`clique`]: exact clique search used to certify the results.
//! 6. [`lll`]: log-domain evaluation of the Local Lemma conditions behind the
//!    edge-sparsified variant.
//! 7. [`pipeline`]: end-to-end runs with JSON/CSV reports, and [`artifact`]
//!    for saving and loading intermediate structures.

pub mod artifact;
pub mod clique;
pub mod dangerous;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod hypergraph;
pub mod lll;
pub mod pipeline;
pub mod plane;
pub mod primes;
pub mod report;
pub mod rng;
pub mod spartite;

pub use clique::{find_clique, CliqueWitness, CoverEstimate};
pub use dangerous::{enumerate_dangerous, DangerousKind, DangerousSet};
pub use error::{Error, Result};
pub use graph::Graph;
pub use hypergraph::{HReport, Hypergraph};
pub use plane::{AffinePlane, ClassId, Line, LineSystem, Point, TruncatedPlane};
pub use spartite::PartiteLineGraph;
