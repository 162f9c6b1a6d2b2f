//! Lorentzian (2,1) linear algebra over the fixed basis with inner product
//! `<v,w> = v.x*w.x + v.y*w.y - v.t*w.t` (signature +,+,-).
//!
//! The future sheet of `{<v,v> = -1}` is the hyperboloid model of the
//! hyperbolic plane; `{<v,v> = +1}` is de Sitter space, parameterizing
//! oriented geodesics; the null cone projectivizes to the boundary circle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `A^T Q A = Q` for accepting a matrix as a Lorentz transform.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;
/// Tolerance on `trace - 3` separating hyperbolic / parabolic / elliptic.
pub const PARABOLIC_TOL: f64 = 1e-9;
/// Tolerance on `<v,v>` around zero when classifying causal type.
pub const CAUSAL_TOL: f64 = 1e-12;

/// A vector of the (2,1) inner-product space, with `t` the timelike coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzVector {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

/// Sign of the self inner product, with tolerance [`CAUSAL_TOL`] around zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalType {
    Timelike,
    Spacelike,
    Null,
    Zero,
}

impl LorentzVector {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);
    pub const E_X: Self = Self::new(1.0, 0.0, 0.0);
    pub const E_Y: Self = Self::new(0.0, 1.0, 0.0);
    pub const E_T: Self = Self::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, t: f64) -> Self {
        Self { x, y, t }
    }

    /// The invariant inner product `v.x*w.x + v.y*w.y - v.t*w.t`.
    pub fn inner(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y - self.t * other.t
    }

    /// `<v,v>`, the causal norm squared.
    pub fn norm2(self) -> f64 {
        self.inner(self)
    }

    /// Euclidean norm of the coordinate triple. Not Lorentz-invariant;
    /// used only for numerical gauges (convergence, residuals).
    pub fn euclidean_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.t * self.t).sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.t * s)
    }

    pub fn causal_type(self) -> CausalType {
        if self == Self::ZERO {
            return CausalType::Zero;
        }
        let q = self.norm2();
        if q.abs() <= CAUSAL_TOL {
            CausalType::Null
        } else if q > 0.0 {
            CausalType::Spacelike
        } else {
            CausalType::Timelike
        }
    }

    pub fn as_array(self) -> [f64; 3] {
        [self.x, self.y, self.t]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

impl std::ops::Add for LorentzVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.t + rhs.t)
    }
}

impl std::ops::Sub for LorentzVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.t - rhs.t)
    }
}

impl std::ops::Neg for LorentzVector {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl std::ops::Mul<LorentzVector> for f64 {
    type Output = LorentzVector;
    fn mul(self, v: LorentzVector) -> LorentzVector {
        v.scale(self)
    }
}

/// The unique `w` with `<w, z> = det(u, v, z)` for all `z`.
///
/// Lowering the index of the Euclidean cross product: `w = Q^{-1} (u x v)`.
/// Equivariant under the identity component of the isometry group, so it
/// completes oriented frames: `lorentz_cross(e_y, e_t) = e_x`.
pub fn lorentz_cross(u: LorentzVector, v: LorentzVector) -> LorentzVector {
    LorentzVector::new(
        u.y * v.t - u.t * v.y,
        u.t * v.x - u.x * v.t,
        -(u.x * v.y - u.y * v.x),
    )
}

/// Determinant of the matrix with columns `(a, b, c)`.
pub fn det3(a: LorentzVector, b: LorentzVector, c: LorentzVector) -> f64 {
    a.x * (b.y * c.t - b.t * c.y) - b.x * (a.y * c.t - a.t * c.y) + c.x * (a.y * b.t - a.t * b.y)
}

/// A 3x3 matrix, normally an element of `O(2,1)` acting on [`LorentzVector`]s.
/// Stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzTransform {
    pub m: [[f64; 3]; 3],
}

/// Conjugacy class of an element of `SO(2,1)^0` by trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformClass {
    Hyperbolic,
    Parabolic,
    Elliptic,
    Identity,
}

impl LorentzTransform {
    pub const IDENTITY: Self = Self {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    pub fn from_rows(m: [[f64; 3]; 3]) -> Self {
        Self { m }
    }

    pub fn from_columns(c0: LorentzVector, c1: LorentzVector, c2: LorentzVector) -> Self {
        Self {
            m: [[c0.x, c1.x, c2.x], [c0.y, c1.y, c2.y], [c0.t, c1.t, c2.t]],
        }
    }

    /// The boost with `a(t) e_x = e_x`, translating the hyperboloid geodesic
    /// through `e_t` with direction `e_y` by hyperbolic distance `t`.
    /// One-parameter group: `a(s) a(t) = a(s+t)`.
    pub fn boost(t: f64) -> Self {
        let (c, s) = (t.cosh(), t.sinh());
        Self {
            m: [[1.0, 0.0, 0.0], [0.0, c, s], [0.0, s, c]],
        }
    }

    /// Rotation by `theta` fixing `e_t` (elliptic around the basepoint).
    pub fn rotation(theta: f64) -> Self {
        let (c, s) = (theta.cos(), theta.sin());
        Self {
            m: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    pub fn column(&self, j: usize) -> LorentzVector {
        LorentzVector::new(self.m[0][j], self.m[1][j], self.m[2][j])
    }

    pub fn row(&self, i: usize) -> LorentzVector {
        LorentzVector::from_array(self.m[i])
    }

    pub fn apply(&self, v: LorentzVector) -> LorentzVector {
        let a = v.as_array();
        let mut out = [0.0; 3];
        for (i, row) in self.m.iter().enumerate() {
            out[i] = row[0] * a[0] + row[1] * a[1] + row[2] * a[2];
        }
        LorentzVector::from_array(out)
    }

    pub fn compose(&self, other: &Self) -> Self {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = (0..3).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        Self { m }
    }

    pub fn transpose(&self) -> Self {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = self.m[j][i];
            }
        }
        Self { m }
    }

    /// Inverse through the orthogonality relation `A^{-1} = Q A^T Q`.
    /// Exact (up to rounding) precisely when the matrix is Lorentz.
    pub fn lorentz_inverse(&self) -> Self {
        let mut m = self.transpose().m;
        // Q A^T Q negates the off-diagonal blocks coupling space and time.
        m[0][2] = -m[0][2];
        m[1][2] = -m[1][2];
        m[2][0] = -m[2][0];
        m[2][1] = -m[2][1];
        Self { m }
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    pub fn det(&self) -> f64 {
        det3(self.column(0), self.column(1), self.column(2))
    }

    /// Max-norm defect of `A^T Q A - Q`, relative to the squared matrix
    /// scale. Rounding in the product grows with the square of the largest
    /// entry (group elements of large translation length have entries of
    /// order `e^ell`), so the scale-free defect is the meaningful gauge; for
    /// unit-scale matrices it coincides with the absolute one.
    pub fn orthogonality_defect(&self) -> f64 {
        let q = [1.0, 1.0, -1.0];
        let scale: f64 = self
            .m
            .iter()
            .flatten()
            .fold(1.0f64, |acc, x| acc.max(x.abs()));
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for k in 0..3 {
                    s += self.m[k][i] * q[k] * self.m[k][j];
                }
                let target = if i == j { q[i] } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst / (scale * scale)
    }

    /// True when the matrix preserves the inner product to [`ORTHOGONALITY_TOL`],
    /// has determinant +1 and maps the future cone to itself. The determinant
    /// check is relative to the cubed matrix scale for the same reason the
    /// orthogonality defect is scale-free.
    pub fn is_proper_orthochronous(&self) -> bool {
        let scale: f64 = self
            .m
            .iter()
            .flatten()
            .fold(1.0f64, |acc, x| acc.max(x.abs()));
        self.orthogonality_defect() <= ORTHOGONALITY_TOL
            && (self.det() - 1.0).abs() <= 1e-9 * scale * scale * scale
            && self.m[2][2] > 0.0
    }

    fn ensure_lorentz(&self) -> Result<()> {
        let defect = self.orthogonality_defect();
        if defect > ORTHOGONALITY_TOL {
            return Err(Error::NotLorentz { defect });
        }
        Ok(())
    }

    /// Conjugacy class by trace, with [`PARABOLIC_TOL`] around trace 3.
    ///
    /// Rejects matrices violating `A^T Q A = Q` beyond [`ORTHOGONALITY_TOL`].
    pub fn classify(&self) -> Result<TransformClass> {
        self.ensure_lorentz()?;
        let tr = self.trace();
        if tr > 3.0 + PARABOLIC_TOL {
            return Ok(TransformClass::Hyperbolic);
        }
        if tr < 3.0 - PARABOLIC_TOL {
            return Ok(TransformClass::Elliptic);
        }
        let from_identity: f64 = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| (self.m[i][j] - LorentzTransform::IDENTITY.m[i][j]).abs())
            .fold(0.0, f64::max);
        if from_identity <= PARABOLIC_TOL {
            Ok(TransformClass::Identity)
        } else {
            Ok(TransformClass::Parabolic)
        }
    }

    /// Eigenframe of a hyperbolic element; see [`EigenFrame`].
    pub fn eigen_frame(&self) -> Result<EigenFrame> {
        EigenFrame::of(self)
    }

    /// Translation length `arccosh((trace - 1)/2)` of a hyperbolic element.
    pub fn translation_length(&self) -> Result<f64> {
        let tr = self.trace();
        if tr <= 3.0 + PARABOLIC_TOL {
            return Err(Error::NotHyperbolic { trace: tr });
        }
        Ok(((tr - 1.0) / 2.0).acosh())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        worst
    }
}

/// Eigen-data of a hyperbolic element: the unit spacelike fixed vector `x0`,
/// the contracting and expanding null eigenvectors `x_minus`, `x_plus`
/// (normalized to timelike coordinate 1, hence future-pointing), and the
/// translation length `ell > 0` (log of the expanding eigenvalue).
///
/// `x0` is oriented so that `(x_minus, x0, x_plus)` is a positively oriented
/// basis; for the standard boost this gives `x0 = e_x`, `x_pm = (0, ±1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenFrame {
    pub x0: LorentzVector,
    pub x_minus: LorentzVector,
    pub x_plus: LorentzVector,
    pub ell: f64,
}

impl EigenFrame {
    /// Closed-form eigenframe from the fixed-vector equation and the null-cone
    /// intersection of the invariant plane. No general eigensolver: the fixed
    /// vector spans `ker(A - A^{-1})` and the null eigenvectors come from
    /// annihilating projectors, which stays stable away from parabolicity.
    pub fn of(a: &LorentzTransform) -> Result<Self> {
        match a.classify()? {
            TransformClass::Hyperbolic => {}
            _ => return Err(Error::NotHyperbolic { trace: a.trace() }),
        }
        let ell = a.translation_length()?;

        // x0 spans the kernel of S = A - A^{-1}; extract it as the largest
        // Euclidean cross product of two rows of S.
        let inv = a.lorentz_inverse();
        let mut s = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                s[i][j] = a.m[i][j] - inv.m[i][j];
            }
        }
        let rows: Vec<LorentzVector> = (0..3).map(|i| LorentzVector::from_array(s[i])).collect();
        let mut kernel = LorentzVector::ZERO;
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let c = euclidean_cross(rows[i], rows[j]);
            if c.euclidean_norm() > kernel.euclidean_norm() {
                kernel = c;
            }
        }
        let n2 = kernel.norm2();
        if n2 <= 0.0 {
            return Err(Error::NotHyperbolic { trace: a.trace() });
        }
        let mut x0 = kernel.scale(1.0 / n2.sqrt());

        // Lorentz-orthogonal complement of x0 is an invariant Lorentzian plane.
        let mut u = LorentzVector::ZERO;
        for e in [LorentzVector::E_X, LorentzVector::E_Y, LorentzVector::E_T] {
            let c = lorentz_cross(x0, e);
            if c.euclidean_norm() > u.euclidean_norm() {
                u = c;
            }
        }
        let w = lorentz_cross(x0, u);

        // (M - lambda_contracting I) maps the plane onto the expanding
        // eigenline of M. Only the dominant side is numerically stable for
        // large products (rounding in the product destroys the contracting
        // direction at scale eps * |A|), so the contracting eigenvector of A
        // is read off as the expanding one of A^{-1}.
        let lam_minus = (-ell).exp();
        let expanding_of = |m: &LorentzTransform| -> Result<LorentzVector> {
            let image = |v: LorentzVector| m.apply(v) - v.scale(lam_minus);
            let c1 = image(u);
            let c2 = image(w);
            let c = if c1.euclidean_norm() >= c2.euclidean_norm() {
                c1
            } else {
                c2
            };
            if c.t.abs() <= f64::EPSILON * 16.0 {
                return Err(Error::NotHyperbolic { trace: a.trace() });
            }
            // Dividing by the timelike coordinate lands on the future cone.
            Ok(c.scale(1.0 / c.t))
        };
        let x_plus = expanding_of(a)?;
        let x_minus = expanding_of(&inv)?;

        // Orient the fixed vector: (x_minus, x0, x_plus) positively oriented.
        if det3(x_minus, x0, x_plus) < 0.0 {
            x0 = -x0;
        }
        Ok(Self {
            x0,
            x_minus,
            x_plus,
            ell,
        })
    }

    /// Pairing `<x_minus, x_plus>`; nonzero, used to split vectors across
    /// the null eigenbasis.
    pub fn null_pairing(&self) -> f64 {
        self.x_minus.inner(self.x_plus)
    }

    /// Coefficients `(c0, c_minus, c_plus)` of `v` in the eigenbasis.
    pub fn decompose(&self, v: LorentzVector) -> (f64, f64, f64) {
        let m = self.null_pairing();
        let c0 = v.inner(self.x0);
        let c_minus = v.inner(self.x_plus) / m;
        let c_plus = v.inner(self.x_minus) / m;
        (c0, c_minus, c_plus)
    }
}

fn euclidean_cross(u: LorentzVector, v: LorentzVector) -> LorentzVector {
    LorentzVector::new(
        u.y * v.t - u.t * v.y,
        u.t * v.x - u.x * v.t,
        u.x * v.y - u.y * v.x,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{random_so21, random_vector};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn inner_product_basis_values() {
        let e1 = LorentzVector::E_X;
        let e3 = LorentzVector::E_T;
        let null = LorentzVector::new(0.0, 1.0, 1.0);
        assert_eq!(e1.inner(e1), 1.0);
        assert_eq!(e3.inner(e3), -1.0);
        assert_eq!(null.inner(null), 0.0);
    }

    #[test]
    fn causal_classification() {
        assert_eq!(
            LorentzVector::new(0.0, 1.0, 0.0).causal_type(),
            CausalType::Spacelike
        );
        assert_eq!(
            LorentzVector::new(0.0, 0.0, 2.0).causal_type(),
            CausalType::Timelike
        );
        assert_eq!(
            LorentzVector::new(3.0, 4.0, 5.0).causal_type(),
            CausalType::Null
        );
        assert_eq!(LorentzVector::ZERO.causal_type(), CausalType::Zero);
    }

    #[test]
    fn cross_of_basis_vectors() {
        // Oracle: solve <w, z> = det(u, v, z) over the basis.
        let check = |u: LorentzVector, v: LorentzVector| {
            let w = lorentz_cross(u, v);
            for z in [LorentzVector::E_X, LorentzVector::E_Y, LorentzVector::E_T] {
                assert_abs_diff_eq!(w.inner(z), det3(u, v, z), epsilon = 1e-14);
            }
            w
        };
        let w = check(LorentzVector::E_X, LorentzVector::E_Y);
        assert_abs_diff_eq!(w.x, 0.0);
        assert_abs_diff_eq!(w.y, 0.0);
        assert_abs_diff_eq!(w.t, -1.0);
        let w = check(LorentzVector::E_Y, LorentzVector::E_T);
        assert_abs_diff_eq!(w.x, 1.0);
        assert_abs_diff_eq!(w.y, 0.0);
        assert_abs_diff_eq!(w.t, 0.0);
        let u = LorentzVector::new(0.3, -1.2, 0.7);
        assert_eq!(lorentz_cross(u, u), LorentzVector::ZERO);
    }

    #[test]
    fn boost_is_one_parameter_group() {
        let id = LorentzTransform::boost(0.0);
        assert!(id.max_abs_diff(&LorentzTransform::IDENTITY) < 1e-15);
        let lhs = LorentzTransform::boost(1.0).compose(&LorentzTransform::boost(2.0));
        let rhs = LorentzTransform::boost(3.0);
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        let fixed = LorentzTransform::boost(1.0).apply(LorentzVector::E_X);
        assert_abs_diff_eq!((fixed - LorentzVector::E_X).euclidean_norm(), 0.0);
    }

    #[test]
    fn classify_standard_elements() {
        assert_eq!(
            LorentzTransform::boost(1.0).classify().unwrap(),
            TransformClass::Hyperbolic
        );
        assert_eq!(
            LorentzTransform::rotation(std::f64::consts::FRAC_PI_2)
                .classify()
                .unwrap(),
            TransformClass::Elliptic
        );
        assert_eq!(
            LorentzTransform::IDENTITY.classify().unwrap(),
            TransformClass::Identity
        );
    }

    #[test]
    fn classify_rejects_non_lorentz() {
        let bad = LorentzTransform::from_rows([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(matches!(bad.classify(), Err(Error::NotLorentz { .. })));
    }

    #[test]
    fn eigen_frame_of_standard_boost() {
        let f = LorentzTransform::boost(1.0).eigen_frame().unwrap();
        assert_abs_diff_eq!(
            (f.x0 - LorentzVector::E_X).euclidean_norm(),
            0.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            (f.x_minus - LorentzVector::new(0.0, -1.0, 1.0)).euclidean_norm(),
            0.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            (f.x_plus - LorentzVector::new(0.0, 1.0, 1.0)).euclidean_norm(),
            0.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(f.ell, 1.0, epsilon = 1e-12);
        assert!(det3(f.x_minus, f.x0, f.x_plus) > 0.0);
    }

    #[test]
    fn eigen_frame_is_conjugation_equivariant() {
        // Oracle: frame of R A R^{-1} must be the R-image of the frame of A.
        let r = LorentzTransform::rotation(0.83);
        let a = LorentzTransform::boost(1.0);
        let conj = r.compose(&a).compose(&r.lorentz_inverse());
        let f = conj.eigen_frame().unwrap();
        let base = a.eigen_frame().unwrap();
        assert!((f.x0 - r.apply(base.x0)).euclidean_norm() < 1e-9);
        let expect_plus = {
            let v = r.apply(base.x_plus);
            v.scale(1.0 / v.t)
        };
        let expect_minus = {
            let v = r.apply(base.x_minus);
            v.scale(1.0 / v.t)
        };
        assert!((f.x_plus - expect_plus).euclidean_norm() < 1e-9);
        assert!((f.x_minus - expect_minus).euclidean_norm() < 1e-9);
        assert_abs_diff_eq!(f.ell, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn eigen_frame_rejects_rotation() {
        let r = LorentzTransform::rotation(std::f64::consts::FRAC_PI_2);
        assert!(matches!(r.eigen_frame(), Err(Error::NotHyperbolic { .. })));
    }

    #[test]
    fn eigen_frame_defining_equations_random() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let b = random_so21(&mut rng);
            let ell = rng.gen_range(0.1..5.0);
            let a = b
                .compose(&LorentzTransform::boost(ell))
                .compose(&b.lorentz_inverse());
            let f = a.eigen_frame().unwrap();
            assert_abs_diff_eq!(f.ell, ell, epsilon = 1e-9);
            assert!((a.apply(f.x0) - f.x0).euclidean_norm() < 1e-9);
            assert!(
                (a.apply(f.x_plus) - f.x_plus.scale(f.ell.exp())).euclidean_norm()
                    < 1e-9 * f.ell.exp()
            );
            assert!((a.apply(f.x_minus) - f.x_minus.scale((-f.ell).exp())).euclidean_norm() < 1e-9);
            assert_abs_diff_eq!(f.x0.norm2(), 1.0, epsilon = 1e-9);
            assert_abs_diff_eq!(f.x0.inner(f.x_plus), 0.0, epsilon = 1e-9);
            assert_abs_diff_eq!(f.x0.inner(f.x_minus), 0.0, epsilon = 1e-9);
            assert_abs_diff_eq!(f.x_plus.norm2(), 0.0, epsilon = 1e-9);
            assert_abs_diff_eq!(f.x_minus.norm2(), 0.0, epsilon = 1e-9);
            assert!(det3(f.x_minus, f.x0, f.x_plus) > 0.0);
        }
    }

    proptest! {
        #[test]
        fn inner_product_invariance(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let a = random_so21(&mut rng);
            let v = random_vector(&mut rng);
            let w = random_vector(&mut rng);
            prop_assert!((a.apply(v).inner(a.apply(w)) - v.inner(w)).abs() < 1e-10);
        }

        #[test]
        fn cross_identity_random(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let u = random_vector(&mut rng);
            let v = random_vector(&mut rng);
            let z = random_vector(&mut rng);
            let lhs = lorentz_cross(u, v).inner(z);
            let rhs = det3(u, v, z);
            let scale = 1.0 + lhs.abs().max(rhs.abs());
            prop_assert!((lhs - rhs).abs() / scale < 1e-10);
        }

        #[test]
        fn classification_is_conjugation_invariant(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let a = random_so21(&mut rng);
            let b = random_so21(&mut rng);
            let conj = b.compose(&a).compose(&b.lorentz_inverse());
            // Skip the knife-edge where rounding moves a trace across the
            // parabolic tolerance band.
            if (a.trace() - 3.0).abs() > 1e-6 {
                prop_assert_eq!(a.classify().unwrap(), conj.classify().unwrap());
            }
        }
    }
}
