use thiserror::Error;

/// Errors raised by geometric and dynamical operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix failed the `A^T Q A = Q` orthogonality test beyond 1e-10.
    #[error("matrix is not a Lorentz transform (orthogonality defect {defect:.3e})")]
    NotLorentz { defect: f64 },

    /// The operation needs a hyperbolic element (trace > 3) and got something else.
    #[error("transform is not hyperbolic (trace = {trace})")]
    NotHyperbolic { trace: f64 },

    /// Point/direction data does not define a frame of the unit tangent bundle.
    #[error("invalid frame data: {0}")]
    InvalidFrameData(String),

    /// Margulis invariant vanishes: the isometry has a fixed point and no spacelike axis.
    #[error("degenerate axis: |alpha| = {alpha:.3e} below threshold")]
    DegenerateAxis { alpha: f64 },

    /// Two ping-pong disks intersect on the boundary circle.
    #[error("ping-pong disks {first} and {second} overlap")]
    DisksOverlap { first: usize, second: usize },

    /// A generator letter failed the ping-pong containment test.
    #[error("ping-pong containment violated by letter {letter} at boundary angle {witness_angle}")]
    ContainmentViolated { letter: usize, witness_angle: f64 },

    /// Fundamental-domain reduction did not terminate within the iteration cap.
    #[error("domain reduction exceeded {cap} iterations")]
    IterationCapExceeded { cap: usize },

    /// An averaging window extends past the sampled orbit segment.
    #[error("orbit grid too short: need horizon {needed}, have {available}")]
    InsufficientHorizon { needed: f64, available: f64 },

    /// Two sampled observables live on different grids.
    #[error("grid mismatch between observables")]
    GridMismatch,

    /// Finite differencing on the sampled section is not resolved by the grid.
    #[error(
        "grid too coarse: finite-difference Cauchy error {cauchy_error:.3e} exceeds {limit:.1e}"
    )]
    GridTooCoarse { cauchy_error: f64, limit: f64 },

    /// The perturbation offset is parallel to the axis direction.
    #[error("offset is parallel to the axis; no transverse component to track")]
    OffsetAlongAxis,

    /// A sampled section does not satisfy holonomy equivariance.
    #[error("section violates holonomy equivariance (defect {defect:.3e})")]
    SectionNotEquivariant { defect: f64 },

    /// Structural problem with a group presentation (disk counts, radii, ...).
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    /// Unparseable or inconsistent external data (CSV/JSON inputs).
    #[error("malformed data: {0}")]
    MalformedData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
