//! Verification engine for lightlike hypersurface geometry in almost complex
//! manifolds with Norden metric.
//!
//! The crate is organized bottom-up: scalars and linear algebra, ambient
//! structures, hypersurface frames and induced objects, the radical
//! transversal checks, the dual-metric correspondence, and the built-in
//! scenes consumed by the CLI runner.

pub mod ambient;
pub mod dualmetric;
pub mod error;
pub mod hypersurface;
pub mod linalg;
pub mod report;
pub mod rtl;
pub mod runner;
pub mod scalar;
pub mod scenarios;

pub use error::{GeomError, Result};
pub use scalar::{Dual, Field, Rational};
