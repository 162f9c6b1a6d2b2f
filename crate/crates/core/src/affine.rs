//! The Lorentzian affine isometry group of flat (2,1) space: points versus
//! vectors, the flat geodesic flow, Margulis invariants of hyperbolic
//! isometries, and their invariant spacelike axes.
//!
//! Points of the affine space and vectors of its translation space are kept
//! as distinct types; the only arithmetic is point difference (a vector) and
//! point-plus-vector. The identification with coordinates fixes the origin
//! once and for all.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::{EigenFrame, LorentzTransform, LorentzVector, TransformClass};

/// Below this Margulis invariant magnitude the isometry has a fixed point, so
/// it cannot belong to a free proper action; axis extraction fails loudly.
pub const DEGENERATE_AXIS_TOL: f64 = 1e-12;

/// A point of the affine space, distinguished from translation vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffinePoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl AffinePoint {
    pub const ORIGIN: Self = Self::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, t: f64) -> Self {
        Self { x, y, t }
    }

    /// Coordinate vector relative to the fixed origin.
    pub fn from_origin(self) -> LorentzVector {
        self - Self::ORIGIN
    }
}

impl std::ops::Sub for AffinePoint {
    type Output = LorentzVector;
    fn sub(self, rhs: Self) -> LorentzVector {
        LorentzVector::new(self.x - rhs.x, self.y - rhs.y, self.t - rhs.t)
    }
}

impl std::ops::Add<LorentzVector> for AffinePoint {
    type Output = AffinePoint;
    fn add(self, v: LorentzVector) -> AffinePoint {
        AffinePoint::new(self.x + v.x, self.y + v.y, self.t + v.t)
    }
}

/// An affine Lorentzian isometry `p -> A p + b` with `A` in `O(2,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineIsometry {
    pub linear: LorentzTransform,
    pub translation: LorentzVector,
}

impl AffineIsometry {
    pub const IDENTITY: Self = Self {
        linear: LorentzTransform::IDENTITY,
        translation: LorentzVector::ZERO,
    };

    pub fn new(linear: LorentzTransform, translation: LorentzVector) -> Self {
        Self {
            linear,
            translation,
        }
    }

    /// Pure translation.
    pub fn translation_by(v: LorentzVector) -> Self {
        Self::new(LorentzTransform::IDENTITY, v)
    }

    pub fn apply(&self, p: AffinePoint) -> AffinePoint {
        AffinePoint::ORIGIN + self.linear.apply(p.from_origin()) + self.translation
    }

    /// Differential: the action on translation vectors.
    pub fn apply_vector(&self, v: LorentzVector) -> LorentzVector {
        self.linear.apply(v)
    }

    /// `(A1, b1) (A2, b2) = (A1 A2, A1 b2 + b1)`, composition of maps.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            linear: self.linear.compose(&other.linear),
            translation: self.linear.apply(other.translation) + self.translation,
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = self.linear.lorentz_inverse();
        Self {
            linear: inv,
            translation: -inv.apply(self.translation),
        }
    }

    pub fn apply_state(&self, s: FlowState) -> FlowState {
        FlowState {
            point: self.apply(s.point),
            velocity: self.apply_vector(s.velocity),
        }
    }

    pub fn apply_geodesic(&self, g: &SpacelikeGeodesic) -> SpacelikeGeodesic {
        SpacelikeGeodesic {
            base: self.apply(g.base),
            direction: self.apply_vector(g.direction),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.linear
            .max_abs_diff(&other.linear)
            .max((self.translation - other.translation).euclidean_norm())
    }
}

impl std::ops::Mul for AffineIsometry {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}

/// A tangent state of the flat manifold in the parallel trivialization.
/// The flat geodesic flow preserves `<velocity, velocity>` exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowState {
    pub point: AffinePoint,
    pub velocity: LorentzVector,
}

impl FlowState {
    pub fn new(point: AffinePoint, velocity: LorentzVector) -> Self {
        Self { point, velocity }
    }

    /// Flat geodesic flow `(p, v) -> (p + t v, v)`. Commutes with every
    /// affine isometry acting diagonally.
    pub fn flow(&self, t: f64) -> Self {
        Self {
            point: self.point + t * self.velocity,
            velocity: self.velocity,
        }
    }
}

/// An oriented spacelike line: a base point plus a unit spacelike direction.
/// Two values describe the same line when the directions agree and the bases
/// differ along the direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacelikeGeodesic {
    pub base: AffinePoint,
    pub direction: LorentzVector,
}

impl SpacelikeGeodesic {
    pub fn new(base: AffinePoint, direction: LorentzVector) -> Self {
        debug_assert!((direction.norm2() - 1.0).abs() < 1e-8);
        Self { base, direction }
    }

    pub fn direction(&self) -> LorentzVector {
        self.direction
    }

    pub fn point_at(&self, s: f64) -> AffinePoint {
        self.base + s * self.direction
    }

    /// Base point slid along the line so its offset from the origin is
    /// Lorentz-orthogonal to the direction; equal lines share it.
    pub fn canonical_base(&self) -> AffinePoint {
        let along = self.base.from_origin().inner(self.direction);
        self.base + (-along) * self.direction
    }

    /// Same oriented line, up to `tol` on direction and transverse offset,
    /// both relative to the coordinate scale (lines far from the origin have
    /// large representatives).
    pub fn same_oriented_line(&self, other: &Self, tol: f64) -> bool {
        let dir_scale = self
            .direction
            .euclidean_norm()
            .max(other.direction.euclidean_norm())
            .max(1.0);
        let a = self.canonical_base();
        let b = other.canonical_base();
        let base_scale = 1.0
            + a.from_origin()
                .euclidean_norm()
                .max(b.from_origin().euclidean_norm());
        (self.direction - other.direction).euclidean_norm() < tol * dir_scale
            && (a - b).euclidean_norm() < tol * base_scale
    }
}

/// Margulis invariant `alpha(g) = <g(p) - p, x0>`, independent of `p`,
/// where `x0` is the oriented neutral vector of the hyperbolic linear part.
///
/// Conjugation invariant, `alpha(g^-1) = alpha(g)` and `alpha(g^n) = n alpha(g)`;
/// for a free proper action it is bounded away from zero on the group.
pub fn margulis_invariant(gamma: &AffineIsometry) -> Result<f64> {
    let frame = gamma.linear.eigen_frame()?;
    Ok(margulis_invariant_with_frame(gamma, &frame))
}

pub(crate) fn margulis_invariant_with_frame(gamma: &AffineIsometry, frame: &EigenFrame) -> f64 {
    (gamma.apply(AffinePoint::ORIGIN) - AffinePoint::ORIGIN).inner(frame.x0)
}

/// The invariant spacelike axis of a hyperbolic affine isometry with nonzero
/// Margulis invariant: the unique line with direction `x0` translated by
/// `alpha` under the isometry.
pub fn invariant_axis(gamma: &AffineIsometry) -> Result<SpacelikeGeodesic> {
    match gamma.linear.classify()? {
        TransformClass::Hyperbolic => {}
        _ => {
            return Err(Error::NotHyperbolic {
                trace: gamma.linear.trace(),
            })
        }
    }
    let frame = gamma.linear.eigen_frame()?;
    let alpha = margulis_invariant_with_frame(gamma, &frame);
    if alpha.abs() < DEGENERATE_AXIS_TOL {
        return Err(Error::DegenerateAxis { alpha });
    }
    // Solve (A - I) q = alpha x0 - b inside the invariant null plane; the
    // right-hand side has no x0 component, and (A - I) acts invertibly on
    // the plane with eigenvalues e^{±ell} - 1.
    let rhs = alpha * frame.x0 - gamma.translation;
    let (_, c_minus, c_plus) = frame.decompose(rhs);
    let lam_plus = frame.ell.exp();
    let lam_minus = (-frame.ell).exp();
    let q =
        (c_minus / (lam_minus - 1.0)) * frame.x_minus + (c_plus / (lam_plus - 1.0)) * frame.x_plus;
    let axis = SpacelikeGeodesic::new(AffinePoint::ORIGIN + q, frame.x0);
    // Verified relative to the data scale: rounding in the displacement
    // equation rides on the matrix and translation magnitudes.
    debug_assert!({
        let matrix_scale = gamma
            .linear
            .m
            .iter()
            .flatten()
            .fold(1.0f64, |acc, x| acc.max(x.abs()));
        let scale =
            1.0 + matrix_scale * (1.0 + q.euclidean_norm()) + gamma.translation.euclidean_norm();
        (gamma.apply(axis.base) - (axis.base + alpha * frame.x0)).euclidean_norm() < 1e-9 * scale
    });
    Ok(axis)
}
