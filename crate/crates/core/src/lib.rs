//! Exact geometry of lattice simplices that contain exactly one interior
//! lattice point.
//!
//! Every quantity (barycentric coordinates, normalized volumes, inequality
//! slacks, determinants) is computed with arbitrary-precision integers and
//! rationals. Nothing in this crate touches floating point.
//!
//! Module map:
//!
//! * [`exact`]: big rationals, dense matrices, Bareiss determinants,
//!   Gauss–Jordan inverses, Smith and Hermite normal forms.
//! * [`simplex`]: lattice simplices, barycentric coordinates, faces,
//!   normalized volumes and parallel sections.
//! * [`points`]: point classification and bounding-box lattice point scans.
//! * [`bounds`]: the sum/product partition inequalities and every volume and
//!   coordinate bound derived from them.
//! * [`certificate`]: the constructive search for a second interior point.
//! * [`generators`]: Sylvester simplices, canonical examples and the
//!   exhaustive planar atlas.
//! * [`report`]: serializable report records.

pub mod bounds;
pub mod certificate;
pub mod error;
pub mod exact;
pub mod generators;
pub mod points;
pub mod report;
pub mod simplex;

pub use error::{Error, Result};
pub use exact::{BigInt, IntMatrix, Matrix, Rat, RatMatrix};
pub use points::DEFAULT_CAP;
pub use simplex::{BarycentricVector, FaceIndex, LatticeSimplex, RatSimplex};
