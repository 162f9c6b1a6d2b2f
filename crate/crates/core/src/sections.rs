//! Sections of the flat affine bundle along geodesic orbits, their densities
//! against the neutral direction, and the periodic-orbit correspondence
//! between surface geodesics and spacelike spacetime geodesics.
//!
//! Along a periodic surface geodesic of class `w` the construction is fully
//! explicit: the holonomy's invariant axis, parameterized at constant speed
//! `alpha/ell`, is a holonomy-equivariant section whose covariant derivative
//! along the flow is exactly `(alpha/ell) nu`. Its density integrates over
//! the period to the Margulis invariant, for any equivariant section choice;
//! pairing the surface period `ell` with the spacetime period `alpha` and the
//! shared direction is one periodic fiber of the orbit equivalence.

use serde::{Deserialize, Serialize};

use crate::affine::{
    invariant_axis, margulis_invariant, AffineIsometry, AffinePoint, FlowState, SpacelikeGeodesic,
};
use crate::averaging::{Observable, OrbitGrid};
use crate::error::{Error, Result};
use crate::exec;
use crate::frames::{frame_from_endpoints, BoundaryPoint, Frame};
use crate::lorentz::LorentzVector;
use crate::schottky::{GroupPresentation, Word};

/// Cauchy-error ceiling for finite differencing of sampled sections.
pub const DENSITY_CAUCHY_TOL: f64 = 1e-6;
/// Holonomy-equivariance tolerance for sampled sections.
pub const EQUIVARIANCE_TOL: f64 = 1e-8;
/// Margin for the sign-uniformity verdict on a spectrum.
pub const SIGN_MARGIN: f64 = 1e-9;

/// The neutral section: the flow-parallel unit spacelike direction of a
/// frame. Alias of [`Frame::spacelike_direction`], named for its role as the
/// invariant section of the flat vector bundle.
pub fn neutral_section(frame: &Frame) -> LorentzVector {
    frame.spacelike_direction()
}

/// The frame sweeping the closed surface geodesic of class `w`: it sits on
/// the axis of the linear holonomy, so flowing it by the translation length
/// returns it up to the holonomy. Returns the frame and the period.
pub fn periodic_frame(group: &GroupPresentation, word: &Word) -> Result<(Frame, f64)> {
    let linear = group.word_linear(word);
    let eigen = linear.eigen_frame()?;
    let frame = frame_from_endpoints(
        BoundaryPoint::from_null(eigen.x_minus)?,
        BoundaryPoint::from_null(eigen.x_plus)?,
    )?;
    Ok((frame, eigen.ell))
}

#[derive(Debug, Clone)]
enum Closure {
    Periodic {
        holonomy: AffineIsometry,
        period: f64,
    },
    Open,
}

/// A spacetime-valued section sampled along one orbit of the surface
/// geodesic flow, against the orbit's (constant) neutral direction.
///
/// Periodic sections store one period and extend by holonomy equivariance:
/// `sigma(t + period) = holonomy(sigma(t))`.
#[derive(Debug, Clone)]
pub struct SectionOnOrbit {
    pub grid: OrbitGrid,
    points: Vec<AffinePoint>,
    pub neutral: LorentzVector,
    closure: Closure,
}

impl SectionOnOrbit {
    /// Samples `f` over one period and checks holonomy equivariance of the
    /// closure at the wrap and at an interior offset. The tolerance is
    /// relative to the scale of the holonomy application, which involves
    /// products of size `e^ell * |sigma|`.
    pub fn new_periodic(
        holonomy: AffineIsometry,
        neutral: LorentzVector,
        period: f64,
        samples: usize,
        f: impl Fn(f64) -> AffinePoint,
    ) -> Result<Self> {
        assert!(samples >= 8 && period > 0.0);
        let matrix_scale = holonomy
            .linear
            .m
            .iter()
            .flatten()
            .fold(1.0f64, |acc, x| acc.max(x.abs()));
        let defect = [0.0, 0.37 * period]
            .into_iter()
            .map(|tau| {
                let p = f(tau);
                let scale = 1.0 + matrix_scale * (1.0 + p.from_origin().euclidean_norm());
                (f(period + tau) - holonomy.apply(p)).euclidean_norm() / scale
            })
            .fold(0.0, f64::max);
        if defect > EQUIVARIANCE_TOL {
            return Err(Error::SectionNotEquivariant { defect });
        }
        let grid = OrbitGrid::new(0.0, period / samples as f64, samples);
        let points = grid.times().map(f).collect();
        Ok(Self {
            grid,
            points,
            neutral,
            closure: Closure::Periodic { holonomy, period },
        })
    }

    /// A section along a non-closed orbit segment.
    pub fn new_open(grid: OrbitGrid, points: Vec<AffinePoint>, neutral: LorentzVector) -> Self {
        assert_eq!(grid.len, points.len());
        Self {
            grid,
            points,
            neutral,
            closure: Closure::Open,
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.closure, Closure::Periodic { .. })
    }

    pub fn period(&self) -> Option<f64> {
        match &self.closure {
            Closure::Periodic { period, .. } => Some(*period),
            Closure::Open => None,
        }
    }

    pub fn holonomy(&self) -> Option<&AffineIsometry> {
        match &self.closure {
            Closure::Periodic { holonomy, .. } => Some(holonomy),
            Closure::Open => None,
        }
    }

    pub fn points(&self) -> &[AffinePoint] {
        &self.points
    }

    /// Sample at a (possibly out-of-range) grid index, extending periodically
    /// through the holonomy.
    pub fn value(&self, i: isize) -> AffinePoint {
        match &self.closure {
            Closure::Open => self.points[usize::try_from(i).expect("open section index")],
            Closure::Periodic { holonomy, .. } => {
                let n = self.points.len() as isize;
                let wraps = i.div_euclid(n);
                let mut p = self.points[i.rem_euclid(n) as usize];
                if wraps > 0 {
                    for _ in 0..wraps {
                        p = holonomy.apply(p);
                    }
                } else {
                    let inv = holonomy.inverse();
                    for _ in 0..(-wraps) {
                        p = inv.apply(p);
                    }
                }
                p
            }
        }
    }
}

/// The density `F_sigma(t) = <d sigma/dt, nu>` of a sampled section, by
/// centered finite differences. For periodic sections the output shares the
/// section's grid, with one-sided O(h^2) stencils at the two seam samples:
/// wrapping a stencil through the holonomy would subtract near-equal
/// products of size `e^ell`, whose rounding swamps the derivative for long
/// orbits. Open segments yield interior samples only.
///
/// Fails with [`Error::GridTooCoarse`] when the step-doubling Cauchy error of
/// the finite difference exceeds [`DENSITY_CAUCHY_TOL`].
pub fn margulis_density(section: &SectionOnOrbit) -> Result<Observable> {
    let h = section.grid.step;
    let p = &section.points;
    let n = p.len();
    if n < 5 {
        return Err(Error::GridTooCoarse {
            cauchy_error: f64::INFINITY,
            limit: DENSITY_CAUCHY_TOL,
        });
    }
    let centered = |i: usize| (p[i + 1] - p[i - 1]).scale(1.0 / (2.0 * h));
    let forward = |i: usize| {
        (p[i + 1].from_origin().scale(4.0) - p[i + 2].from_origin() - p[i].from_origin().scale(3.0))
            .scale(1.0 / (2.0 * h))
    };
    let backward = |i: usize| {
        (p[i].from_origin().scale(3.0) - p[i - 1].from_origin().scale(4.0) + p[i - 2].from_origin())
            .scale(1.0 / (2.0 * h))
    };
    let derivative = |i: usize| {
        if i == 0 {
            forward(i)
        } else if i == n - 1 {
            backward(i)
        } else {
            centered(i)
        }
    };

    let indices: Vec<usize> = if section.is_periodic() {
        (0..n).collect()
    } else {
        (1..n - 1).collect()
    };
    let mut cauchy: f64 = 0.0;
    let mut values = Vec::with_capacity(indices.len());
    for &i in &indices {
        let d = derivative(i);
        if i >= 2 && i + 2 < n {
            let wide = (p[i + 2] - p[i - 2]).scale(1.0 / (4.0 * h));
            cauchy = cauchy.max((d - wide).inner(section.neutral).abs());
        }
        values.push(d.inner(section.neutral));
    }
    if cauchy > DENSITY_CAUCHY_TOL {
        return Err(Error::GridTooCoarse {
            cauchy_error: cauchy,
            limit: DENSITY_CAUCHY_TOL,
        });
    }
    if section.is_periodic() {
        Ok(Observable::new_periodic(section.grid, values))
    } else {
        Ok(Observable::new(
            OrbitGrid::new(section.grid.time(1), h, values.len()),
            values,
        ))
    }
}

/// The explicit neutralized section along the periodic orbit of `w`: the
/// invariant axis traversed at constant speed `alpha/ell`, whose flow
/// derivative is exactly `(alpha/ell) nu`. Returns the section and its
/// constant density.
pub fn neutralize_periodic(
    group: &GroupPresentation,
    word: &Word,
    samples: usize,
) -> Result<(SectionOnOrbit, Observable)> {
    let iso = group.word_isometry(word);
    let axis = invariant_axis(&iso)?;
    let alpha = margulis_invariant(&iso)?;
    let ell = iso.linear.translation_length()?;
    let speed = alpha / ell;
    let base = axis.base;
    let direction = axis.direction;
    let section = SectionOnOrbit::new_periodic(iso, direction, ell, samples, move |t| {
        base + (speed * t) * direction
    })?;
    let density = Observable::new_periodic(section.grid, vec![speed; samples]);
    Ok((section, density))
}

/// A holonomy-equivariant section of the periodic orbit of `w` built from a
/// perturbation in the moving frame: `sigma(t) = N(t) + F(t) c(t)` where `N`
/// is the constant-speed axis section, `F(t)` the frame sweeping the orbit
/// and `c` any period-`ell` coefficient curve.
pub fn perturbed_periodic_section(
    group: &GroupPresentation,
    word: &Word,
    samples: usize,
    coefficients: impl Fn(f64) -> LorentzVector,
) -> Result<SectionOnOrbit> {
    let iso = group.word_isometry(word);
    let axis = invariant_axis(&iso)?;
    let alpha = margulis_invariant(&iso)?;
    let ell = iso.linear.translation_length()?;
    let (frame, _) = periodic_frame(group, word)?;
    let speed = alpha / ell;
    let base = axis.base;
    let direction = axis.direction;
    let section = SectionOnOrbit::new_periodic(iso, direction, ell, samples, move |t| {
        let n = base + (speed * t) * direction;
        let f_t = frame.flow(t);
        n + f_t.transform().apply(coefficients(t))
    })?;
    Ok(section)
}

/// One periodic fiber of the orbit equivalence: the closed surface geodesic
/// of class `w` (period `ell`) matched with the closed spacelike spacetime
/// geodesic on the holonomy's invariant axis (signed period `alpha`), the
/// shared direction, and the affine time reparameterization `t -> (alpha/ell) t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicCorrespondence {
    pub word: Word,
    pub surface_period: f64,
    pub spacetime_period: f64,
    pub axis: SpacelikeGeodesic,
    pub time_scale: f64,
}

pub fn orbit_equivalence_periodic(
    group: &GroupPresentation,
    word: &Word,
) -> Result<PeriodicCorrespondence> {
    let iso = group.word_isometry(word);
    let ell = iso.linear.translation_length()?;
    let axis = invariant_axis(&iso)?;
    let alpha = margulis_invariant(&iso)?;
    Ok(PeriodicCorrespondence {
        word: word.clone(),
        surface_period: ell,
        spacetime_period: alpha,
        axis,
        time_scale: alpha / ell,
    })
}

/// One spectrum row: class, surface period, Margulis invariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub word: Word,
    pub ell: f64,
    pub alpha: f64,
}

impl SpectrumRow {
    pub fn ratio(&self) -> f64 {
        self.alpha / self.ell
    }
}

pub fn spectrum_row(group: &GroupPresentation, word: &Word) -> Result<SpectrumRow> {
    let iso = group.word_isometry(word);
    Ok(SpectrumRow {
        word: word.clone(),
        ell: iso.linear.translation_length()?,
        alpha: margulis_invariant(&iso)?,
    })
}

/// Margulis spectrum over all conjugacy classes up to `max_len`, sorted by
/// surface period. Data-parallel under the `parallel` feature.
pub fn spectrum(group: &GroupPresentation, max_len: usize) -> Result<Vec<SpectrumRow>> {
    let classes = group.conjugacy_classes(max_len);
    let mut rows = exec::try_map_collect(&classes, |w| spectrum_row(group, w))?;
    rows.sort_by(|a, b| {
        a.ell
            .total_cmp(&b.ell)
            .then_with(|| a.word.letters().cmp(b.word.letters()))
    });
    Ok(rows)
}

/// Verdict on sign uniformity of a spectrum: pass means every invariant
/// clears [`SIGN_MARGIN`] with one common sign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignVerdict {
    pub uniform: bool,
    /// Smallest |alpha| over the spectrum.
    pub margin: f64,
    /// Common sign when uniform (+1.0 / -1.0).
    pub sign: Option<f64>,
    /// Offending classes: one of each sign, or a class inside the margin.
    pub witnesses: Vec<Word>,
}

pub fn sign_verdict(rows: &[SpectrumRow]) -> SignVerdict {
    assert!(!rows.is_empty());
    let margin = rows
        .iter()
        .map(|r| r.alpha.abs())
        .fold(f64::INFINITY, f64::min);
    if let Some(small) = rows.iter().find(|r| r.alpha.abs() <= SIGN_MARGIN) {
        return SignVerdict {
            uniform: false,
            margin,
            sign: None,
            witnesses: vec![small.word.clone()],
        };
    }
    let positive = rows.iter().find(|r| r.alpha > 0.0);
    let negative = rows.iter().find(|r| r.alpha < 0.0);
    match (positive, negative) {
        (Some(p), Some(n)) => SignVerdict {
            uniform: false,
            margin,
            sign: None,
            witnesses: vec![p.word.clone(), n.word.clone()],
        },
        (Some(_), None) => SignVerdict {
            uniform: true,
            margin,
            sign: Some(1.0),
            witnesses: vec![],
        },
        (None, Some(_)) => SignVerdict {
            uniform: true,
            margin,
            sign: Some(-1.0),
            witnesses: vec![],
        },
        (None, None) => unreachable!("rows are nonempty with nonzero alphas"),
    }
}

/// Measured divergence of a spacetime geodesic parallel to (but distinct
/// from) the closed geodesic of class `w`, under the holonomy return map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceReport {
    /// Per-period growth of the transverse offset in forward time.
    pub per_period_forward: f64,
    /// Per-period growth of the transverse offset in backward time.
    pub per_period_backward: f64,
    /// The larger of the two: at least one direction expands.
    pub growth_factor: f64,
    /// The boost factor `e^ell` of the holonomy, which the growth tracks.
    pub expected: f64,
    pub periods: usize,
}

/// Flows the parallel line `axis + offset` and compares against the axis
/// after each holonomy return, reporting the measured per-period growth of
/// the transverse offset in both time directions.
///
/// One of the factors is always close to `e^ell`: no distinct parallel
/// geodesic stays bounded in both directions, so none recurs.
pub fn parallel_uniqueness_check(
    group: &GroupPresentation,
    word: &Word,
    offset: LorentzVector,
) -> Result<DivergenceReport> {
    let iso = group.word_isometry(word);
    let eigen = iso.linear.eigen_frame()?;
    let axis = invariant_axis(&iso)?;
    let alpha = margulis_invariant(&iso)?;
    let (_, c_minus, c_plus) = eigen.decompose(offset);
    let transverse = c_minus * eigen.x_minus + c_plus * eigen.x_plus;
    if transverse.euclidean_norm() <= 1e-10 * offset.euclidean_norm().max(1e-300) {
        return Err(Error::OffsetAlongAxis);
    }

    let periods = 4;
    let start = FlowState::new(axis.base + offset, axis.direction);
    let measure = |deck: &AffineIsometry, time_sign: f64| -> f64 {
        let mut state = start;
        let mut norms = Vec::with_capacity(periods + 1);
        for _ in 0..=periods {
            let u = state.point - axis.base;
            let (_, cm, cp) = eigen.decompose(u);
            norms.push((cm * eigen.x_minus + cp * eigen.x_plus).euclidean_norm());
            state = deck.apply_state(state.flow(time_sign * alpha));
        }
        // Per-period factor from the last ratios, past any transient.
        let a = norms[periods - 1];
        let b = norms[periods];
        if a > 0.0 {
            b / a
        } else {
            f64::INFINITY
        }
    };
    let per_period_forward = measure(&iso.inverse(), 1.0);
    let per_period_backward = measure(&iso, -1.0);
    Ok(DivergenceReport {
        per_period_forward,
        per_period_backward,
        growth_factor: per_period_forward.max(per_period_backward),
        expected: eigen.ell.exp(),
        periods,
    })
}
