//! Nearby squarefree polynomials.
//!
//! Given `f` in GF(2)[x] of degree `n`, [`approx::squarefree_approx`] builds a
//! squarefree `g` of the same degree whose Hamming distance to `f` grows only
//! polylogarithmically in `n`, and returns a certificate recording every
//! stage bound. [`zarith`] lifts that result to Z[x] and builds explicit
//! k-free obstructions, and [`oracle`] computes exact nearest-squarefree
//! distances by exhaustive search at small degree.

pub mod approx;
pub mod cli;
pub mod error;
pub mod gf2poly;
pub mod irreducibles;
pub mod oracle;
pub mod zarith;

pub use approx::{squarefree_approx, ApproxCertificate, ApproxParams, Approximator};
pub use error::{Error, Result};
pub use gf2poly::{Degree, PolyF2, SplitPair};
pub use irreducibles::IrreducibleTable;
pub use oracle::{nearest_squarefree, OracleResult, ScanReport};
pub use zarith::{KFreeWitness, PolyZ};
