//! Error type shared by every module of the crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Variants are grouped by the module that raises them. [`Error::is_numeric`]
/// separates tolerance failures of the numerical layers from logical
/// violations, which the CLI maps to different exit codes.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A group specification string did not match `C:<n>`, `D:<n>`, `T`, `O` or `I`.
    #[error("cannot parse group spec {input:?} at position {position}: {message}")]
    Parse {
        /// Offending input.
        input: String,
        /// Byte offset of the first bad character.
        position: usize,
        /// Human-readable reason.
        message: String,
    },
    /// Breadth-first closure of the generators produced the wrong number of elements.
    #[error("generator closure produced {found} elements, expected {expected}")]
    NonClosure {
        /// Expected group order.
        expected: usize,
        /// Number of distinct elements found.
        found: usize,
    },
    /// Two conjugacy classes of equal element order could not be told apart.
    #[error("cannot disambiguate conjugacy classes of order {order}")]
    AmbiguousLabel {
        /// Shared element order.
        order: u32,
    },
    /// The Hopf map failed to intertwine the SU(2) and SO(3) actions.
    #[error("Hopf equivariance violated: deviation {deviation:e}")]
    EquivarianceViolation {
        /// Largest observed deviation.
        deviation: f64,
    },
    /// An elliptic rotation number had integer value and zero infinitesimal part.
    #[error("degenerate rotation number {0}")]
    DegenerateRotation(String),
    /// A same-class orbit pair broke the index/action monotonicity.
    #[error("monotonicity violated for ({plus}, {minus}): {reason}")]
    MonotonicityViolation {
        /// Positive end.
        plus: String,
        /// Negative end.
        minus: String,
        /// Which implication failed.
        reason: String,
    },
    /// Two good generators sit in adjacent degrees.
    #[error("good generators in adjacent degrees {lower} and {upper}")]
    ParityViolation {
        /// Lower degree.
        lower: i64,
        /// Upper degree.
        upper: i64,
    },
    /// A generator had no unique partner under the inclusion map.
    #[error("inclusion pairing failed for {0}")]
    PairingFailure(String),
    /// The integrated path lost symplecticity beyond tolerance.
    #[error("symplectic drift {drift:e} exceeds tolerance; refine the grid")]
    DriftExceeded {
        /// Relative drift of Phi^T J Phi - J.
        drift: f64,
    },
    /// det(Phi(1) - Id) vanishes to tolerance.
    #[error("degenerate endpoint: |det(Phi(1) - Id)| = {det:e}")]
    DegenerateEndpoint {
        /// Determinant magnitude.
        det: f64,
    },
    /// A crossing form has a (numerically) zero eigenvalue.
    #[error("irregular crossing at t = {t}: crossing-form eigenvalue {eigenvalue:e}")]
    IrregularCrossing {
        /// Crossing time.
        t: f64,
        /// Offending eigenvalue.
        eigenvalue: f64,
    },
    /// A crossing lies too close to an endpoint of the path.
    #[error("crossing at t = {t} lies within tolerance of an endpoint")]
    CrossingNearEndpoint {
        /// Crossing time.
        t: f64,
    },
    /// Angle unwrapping saw a jump too large to resolve.
    #[error("angle increment {increment} exceeds pi/2 at sample {step}; refine the grid")]
    UnwrapFailure {
        /// Sample index.
        step: usize,
        /// Offending increment in radians.
        increment: f64,
    },
    /// The truncated asymptotic operator is not invertible at an endpoint.
    #[error("asymptotic operator at s = {s} is degenerate (smallest |eigenvalue| {sigma:e})")]
    EndpointDegenerate {
        /// Parameter value.
        s: f64,
        /// Smallest eigenvalue magnitude.
        sigma: f64,
    },
    /// Eigenvalue continuation could not separate eigenvalues near zero.
    #[error("eigenvalue tracking ambiguous near s = {s}")]
    TrackingAmbiguity {
        /// Parameter value.
        s: f64,
    },
    /// A check that needs a crossing found none.
    #[error("no crossing found")]
    NoCrossingFound,
    /// The averaged Morse function has a critical point off the fixed set.
    #[error("spurious critical point at {point:?}")]
    SpuriousCriticalPoint {
        /// Location on the sphere.
        point: [f64; 3],
    },
    /// Critical points do not match the fixed set or its index assignment.
    #[error("critical point mismatch: {0}")]
    IndexMismatch(String),
    /// A gradient trajectory did not settle at a critical point.
    #[error("trajectory from {start:?} did not converge")]
    NonConvergentTrajectory {
        /// Starting point.
        start: [f64; 3],
    },
    /// Orbifold Morse homology differs from that of the sphere.
    #[error("orbifold homology mismatch: {0}")]
    HomologyMismatch(String),
    /// Morse and Conley-Zehnder index differences disagree.
    #[error("index correspondence failed for ({p}, {q})")]
    IndexCorrespondenceFailure {
        /// Upper point.
        p: String,
        /// Lower point.
        q: String,
    },
    /// A Conley-Zehnder axiom failed on a generated path.
    #[error("{axiom} axiom violated: {detail}")]
    AxiomViolation {
        /// Axiom name.
        axiom: String,
        /// Description of the failing instance.
        detail: String,
    },
    /// Precondition failure on caller-supplied data.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for failures caused by numerical tolerances rather than logic.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::DriftExceeded { .. }
                | Error::DegenerateEndpoint { .. }
                | Error::IrregularCrossing { .. }
                | Error::CrossingNearEndpoint { .. }
                | Error::UnwrapFailure { .. }
                | Error::EndpointDegenerate { .. }
                | Error::TrackingAmbiguity { .. }
                | Error::NonConvergentTrajectory { .. }
                | Error::NonClosure { .. }
                | Error::AmbiguousLabel { .. }
        )
    }
}
