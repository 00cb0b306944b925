//! Uniform set systems of bounded VC-dimension.
//!
//! The crate covers four layers:
//!
//! * [`subset`] and [`system`]: bitmask subsets of `[n]`, traces, shattering,
//!   VC-dimension, shadows, and the text/JSON file formats ([`io`]).
//! * [`poly`], [`matrix`] and [`cert`]: exact multilinear polynomials, exact
//!   integer rank/determinant, and the linear-independence certificates that
//!   bound `|F|` by its `d`-shadow.
//! * [`kk`]: Kruskal–Katona shadow lower bounds, fractional and exact.
//! * [`construct`], [`structure`] and [`search`]: extremal constructions,
//!   structural verifiers, the impossibility audit, and branch-and-bound
//!   search for maximum families.
//!
//! [`suite`] holds the seeded random suites shared by the CLI and the
//! acceptance tests.

pub mod cert;
pub mod construct;
mod error;
pub mod io;
pub mod kk;
pub mod matrix;
pub mod poly;
pub mod search;
pub mod structure;
pub mod subset;
pub mod suite;
pub mod system;

pub use error::{Error, Result};
pub use subset::{binomial, GroundSet, Subset};
pub use system::SetSystem;

/// Version string embedded in JSON outputs.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
