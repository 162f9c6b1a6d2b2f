//! Flat Lorentz (2,1) geometry and the geodesic dynamics of affine
//! deformations of Schottky groups.
//!
//! The crate covers, bottom up:
//!
//! - [`lorentz`]: the (2,1) inner product, causal types, `SO(2,1)^0`
//!   elements and eigenframes of hyperbolic ones;
//! - [`frames`]: the unit tangent bundle of the hyperboloid model as
//!   `SO(2,1)^0`, the geodesic flow, boundary circle, and the neutral
//!   (flow-parallel unit spacelike) direction;
//! - [`affine`]: the affine isometry group, the flat geodesic flow,
//!   Margulis invariants and invariant spacelike axes;
//! - [`schottky`]: affine deformations of Schottky groups — words and
//!   conjugacy classes, ping-pong certification, limit sets, fundamental
//!   domain reduction, and recurrence probes;
//! - [`averaging`]: Birkhoff averages `f_T`, the explicit transfer function
//!   making `f_T - f` a coboundary, residual verification, and the search
//!   for an averaging time making the average positive;
//! - [`sections`]: sections of the flat affine bundle along orbits, their
//!   densities against the neutral direction, neutralized sections on
//!   periodic orbits, and the periodic orbit correspondence between surface
//!   geodesics and spacelike spacetime geodesics.
//!
//! Batch operations (class spectra, limit sets, probe batches) are
//! data-parallel under the default `parallel` feature and sequential without
//! it; results are identical either way.

pub mod affine;
pub mod averaging;
pub mod error;
pub mod frames;
pub mod lorentz;
pub mod schottky;
pub mod sections;

mod exec;

pub use affine::{
    invariant_axis, margulis_invariant, AffineIsometry, AffinePoint, FlowState, SpacelikeGeodesic,
};
pub use error::{Error, Result};
pub use frames::{BoundaryPoint, Frame};
pub use lorentz::{
    lorentz_cross, CausalType, EigenFrame, LorentzTransform, LorentzVector, TransformClass,
};
pub use schottky::{
    recurrence_probe, Disk, GroupPresentation, Letter, LimitSetApprox, PingPongReport, ProbeParams,
    RecurrenceReport, Word,
};
pub use sections::{
    margulis_density, neutralize_periodic, orbit_equivalence_periodic, parallel_uniqueness_check,
    spectrum, PeriodicCorrespondence, SectionOnOrbit, SpectrumRow,
};
