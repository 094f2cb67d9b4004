//! Filtered cylindrical contact homology of the quotients S³/G for finite
//! subgroups G ⊂ SU(2).

pub mod czengine;
pub mod error;
pub mod groups;
pub mod homology;
pub mod morse;
pub mod orbits;
pub mod report;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use groups::{GroupSpec, PointKind};
pub use homology::{build_complex, closed_form, homology_ranks, GradedVectorSpace};
pub use orbits::{enumerate_orbits, OrbitType, ReebOrbit};
pub use report::VerificationReport;
pub use scalar::{FormalScalar, Rational};
pub use verify::{run_check, VerifyOptions, CHECKS};
