//! The unit tangent bundle of the hyperboloid model, identified with
//! `SO(2,1)^0` acting simply transitively on frames.
//!
//! A frame `g` stands for the unit tangent vector at `g(e_t)` pointing along
//! `g(e_y)`; the reference frame is the tangent vector at the basepoint
//! `p0 = e_t` pointing along `e_y`. The geodesic flow is the right action of
//! the boost subgroup, and `g(e_x)` is the unit spacelike normal of the
//! swept geodesic, constant along flow orbits (the neutral direction).
//!
//! Sign convention: `flow(t)` multiplies by `boost(t)` on the right, so
//! positive `t` moves the basepoint forward along the frame direction. This
//! is the time reversal of the convention that acts by `boost(-t)` on
//! quotients; every recurrence statement used here is two-sided, so nothing
//! downstream depends on the choice.

use crate::error::{Error, Result};
use crate::lorentz::{lorentz_cross, LorentzTransform, LorentzVector};

/// Basepoint of the hyperboloid model (the reference frame's footpoint).
pub const BASEPOINT: LorentzVector = LorentzVector::E_T;
/// Direction of the reference frame at the basepoint.
pub const BASE_DIRECTION: LorentzVector = LorentzVector::E_Y;
/// Neutral (unit spacelike) vector of the reference frame.
pub const BASE_NEUTRAL: LorentzVector = LorentzVector::E_X;

const FRAME_DATA_TOL: f64 = 1e-9;

/// An element of `SO(2,1)^0` viewed as a unit tangent vector of the
/// hyperbolic plane. Columns are `(neutral, direction, basepoint)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    g: LorentzTransform,
}

impl Frame {
    pub const IDENTITY: Self = Self {
        g: LorentzTransform::IDENTITY,
    };

    /// Wraps a proper orthochronous Lorentz transform as a frame.
    pub fn from_transform(g: LorentzTransform) -> Result<Self> {
        if !g.is_proper_orthochronous() {
            return Err(Error::InvalidFrameData(
                "matrix is not proper orthochronous Lorentz".into(),
            ));
        }
        Ok(Self { g })
    }

    /// The unique frame with the given footpoint and direction.
    ///
    /// `point` must lie on the future unit hyperboloid and `direction` must be
    /// unit spacelike and orthogonal to it; the neutral column is then forced
    /// by orientation, via the cross product.
    pub fn from_point_direction(point: LorentzVector, direction: LorentzVector) -> Result<Self> {
        if (point.norm2() + 1.0).abs() > FRAME_DATA_TOL || point.t <= 0.0 {
            return Err(Error::InvalidFrameData(
                "point is not on the future unit hyperboloid".into(),
            ));
        }
        if (direction.norm2() - 1.0).abs() > FRAME_DATA_TOL {
            return Err(Error::InvalidFrameData(
                "direction is not unit spacelike".into(),
            ));
        }
        if point.inner(direction).abs() > FRAME_DATA_TOL {
            return Err(Error::InvalidFrameData(
                "direction is not tangent at the point".into(),
            ));
        }
        let neutral = lorentz_cross(direction, point);
        Ok(Self {
            g: LorentzTransform::from_columns(neutral, direction, point),
        })
    }

    pub fn transform(&self) -> &LorentzTransform {
        &self.g
    }

    /// Footpoint `g(p0)` on the future hyperboloid.
    pub fn basepoint(&self) -> LorentzVector {
        self.g.column(2)
    }

    /// Unit tangent direction `g(e_y)` at the footpoint.
    pub fn direction(&self) -> LorentzVector {
        self.g.column(1)
    }

    /// The neutral vector `g(e_x)`: unit spacelike, orthogonal to both the
    /// footpoint and the direction, and constant along flow orbits.
    pub fn spacelike_direction(&self) -> LorentzVector {
        self.g.column(0)
    }

    /// Geodesic flow for time `t`: right multiplication by the boost.
    pub fn flow(&self, t: f64) -> Self {
        Self {
            g: self.g.compose(&LorentzTransform::boost(t)),
        }
    }

    /// Left action of an isometry on frames.
    pub fn translate(&self, h: &LorentzTransform) -> Self {
        Self {
            g: h.compose(&self.g),
        }
    }

    /// Backward and forward ideal endpoints of the geodesic swept by the flow
    /// through this frame.
    pub fn endpoints(&self) -> (BoundaryPoint, BoundaryPoint) {
        let backward = self.g.apply(LorentzVector::new(0.0, -1.0, 1.0));
        let forward = self.g.apply(LorentzVector::new(0.0, 1.0, 1.0));
        (
            BoundaryPoint::from_null(backward).expect("frame maps the future null cone to itself"),
            BoundaryPoint::from_null(forward).expect("frame maps the future null cone to itself"),
        )
    }
}

/// A point of the boundary circle: a future null direction normalized to
/// timelike coordinate 1, so the representative `(x, y, 1)` has `x^2+y^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BoundaryPoint {
    pub x: f64,
    pub y: f64,
}

impl BoundaryPoint {
    /// Projectivizes a future-pointing null vector. The null test is
    /// relative to the vector scale, so images under large group elements
    /// stay admissible.
    pub fn from_null(v: LorentzVector) -> Result<Self> {
        let scale = v.euclidean_norm();
        if scale == 0.0 || v.norm2().abs() > 1e-9 * scale * scale || v.t <= 0.0 {
            return Err(Error::InvalidFrameData(
                "boundary points come from future null vectors".into(),
            ));
        }
        Ok(Self {
            x: v.x / v.t,
            y: v.y / v.t,
        })
    }

    pub fn from_angle(theta: f64) -> Self {
        Self {
            x: theta.cos(),
            y: theta.sin(),
        }
    }

    /// Angle of the representative on the circle, in `(-pi, pi]`.
    pub fn angle(&self) -> f64 {
        self.y.atan2(self.x)
    }

    /// The null representative `(x, y, 1)`.
    pub fn null_vector(&self) -> LorentzVector {
        LorentzVector::new(self.x, self.y, 1.0)
    }

    /// Angular distance on the circle, in `[0, pi]`.
    pub fn angular_distance(&self, other: &Self) -> f64 {
        angle_gap(self.angle(), other.angle())
    }
}

/// Circle distance between two angles, in `[0, pi]`.
pub fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

/// Hyperbolic distance between two points of the future unit hyperboloid.
pub fn hyperbolic_distance(u: LorentzVector, v: LorentzVector) -> f64 {
    (-u.inner(v)).max(1.0).acosh()
}

/// Euclidean angle between two nonzero coordinate vectors; a desk-scale
/// surrogate for comparing directions at nearby basepoints.
pub fn euclidean_angle(u: LorentzVector, v: LorentzVector) -> f64 {
    let nu = u.euclidean_norm();
    let nv = v.euclidean_norm();
    if nu == 0.0 || nv == 0.0 {
        return 0.0;
    }
    let c = (u.x * v.x + u.y * v.y + u.t * v.t) / (nu * nv);
    c.clamp(-1.0, 1.0).acos()
}

/// Unit-speed parameterization of the hyperboloid geodesic with the given
/// ideal endpoints, together with its velocity field. Parameter 0 sits where
/// the two null representatives weigh equally.
pub fn geodesic_from_endpoints(
    backward: BoundaryPoint,
    forward: BoundaryPoint,
) -> Result<impl Fn(f64) -> (LorentzVector, LorentzVector)> {
    let xm = backward.null_vector();
    let xp = forward.null_vector();
    let pairing = xp.inner(xm);
    if pairing >= -1e-12 {
        return Err(Error::InvalidFrameData(
            "coincident ideal endpoints do not span a geodesic".into(),
        ));
    }
    let scale = (-2.0 * pairing).sqrt();
    Ok(move |s: f64| {
        let p = (s.exp() * xp + (-s).exp() * xm).scale(1.0 / scale);
        let u = (s.exp() * xp - (-s).exp() * xm).scale(1.0 / scale);
        (p, u)
    })
}

/// Frame of the unique geodesic through the given endpoints, at the point of
/// the geodesic closest to the model basepoint.
pub fn frame_from_endpoints(backward: BoundaryPoint, forward: BoundaryPoint) -> Result<Frame> {
    let geo = geodesic_from_endpoints(backward, forward)?;
    // <u(s), p0> = 0 at the closest point; solve for the parameter.
    let xm = backward.null_vector();
    let xp = forward.null_vector();
    let s = 0.5 * (xm.inner(BASEPOINT) / xp.inner(BASEPOINT)).ln();
    let (p, u) = geo(s);
    Frame::from_point_direction(p, u)
}
