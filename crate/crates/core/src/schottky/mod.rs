//! Affine deformations of Schottky groups: presentations with ping-pong
//! disks on the boundary circle, discreteness certification by sampled
//! containment, limit-set approximation by fixed points of enumerated
//! classes, and reduction of hyperboloid points to a fundamental domain.

mod recurrence;
mod words;

pub use recurrence::{
    probe_batch, recurrence_probe, state_distance, DirectionReport, ProbeParams, RecurrenceReport,
};
pub use words::{enumerate_conjugacy_classes, Letter, Word};

use serde::{Deserialize, Serialize};

use crate::affine::AffineIsometry;
use crate::error::{Error, Result};
use crate::exec;
use crate::frames::{angle_gap, hyperbolic_distance, BoundaryPoint, Frame, BASEPOINT};
use crate::lorentz::{LorentzTransform, LorentzVector, TransformClass};

/// Default number of boundary angles sampled by the ping-pong check.
pub const PING_PONG_SAMPLES: usize = 10_000;
/// Iteration cap for fundamental-domain reduction.
pub const REDUCTION_CAP: usize = 10_000;

/// A closed disk on the boundary circle: all angles within `radius` of
/// `center_angle` (radians).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Disk {
    pub center_angle: f64,
    pub radius: f64,
}

impl Disk {
    pub fn new(center_angle: f64, radius: f64) -> Self {
        Self {
            center_angle,
            radius,
        }
    }

    pub fn contains(&self, angle: f64) -> bool {
        angle_gap(angle, self.center_angle) <= self.radius
    }

    /// Signed depth of an angle inside the disk (positive = inside).
    pub fn depth(&self, angle: f64) -> f64 {
        self.radius - angle_gap(angle, self.center_angle)
    }

    pub fn overlaps(&self, other: &Disk) -> bool {
        angle_gap(self.center_angle, other.center_angle) <= self.radius + other.radius
    }
}

/// An affine deformation of a rank-`k` Schottky group: affine isometries
/// with hyperbolic linear parts for generators, plus one ping-pong disk per
/// letter in the order `g1, g1^-1, g2, g2^-1, ...`.
///
/// Construction validates structure only; dynamics (freeness and
/// discreteness of the linear group) is certified by [`Self::verify_ping_pong`].
/// Immutable afterwards, so presentations can be shared freely across threads.
#[derive(Debug, Clone)]
pub struct GroupPresentation {
    generators: Vec<AffineIsometry>,
    disks: Vec<Disk>,
    /// Cached isometry per letter code.
    letters: Vec<AffineIsometry>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<AffineIsometry>, disks: Vec<Disk>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidPresentation("no generators".into()));
        }
        if disks.len() != 2 * generators.len() {
            return Err(Error::InvalidPresentation(format!(
                "need {} disks (one per letter), got {}",
                2 * generators.len(),
                disks.len()
            )));
        }
        for (i, d) in disks.iter().enumerate() {
            if !(d.radius > 0.0 && d.radius < std::f64::consts::PI) {
                return Err(Error::InvalidPresentation(format!(
                    "disk {i} has invalid radius {}",
                    d.radius
                )));
            }
        }
        for (i, g) in generators.iter().enumerate() {
            if !g.linear.is_proper_orthochronous() {
                return Err(Error::InvalidPresentation(format!(
                    "generator {} linear part is not in the identity component",
                    i + 1
                )));
            }
            match g.linear.classify()? {
                TransformClass::Hyperbolic => {}
                _ => {
                    return Err(Error::NotHyperbolic {
                        trace: g.linear.trace(),
                    })
                }
            }
        }
        let letters = Letter::alphabet(generators.len())
            .map(|l| {
                let g = &generators[l.index];
                if l.inverse {
                    g.inverse()
                } else {
                    *g
                }
            })
            .collect();
        Ok(Self {
            generators,
            disks,
            letters,
        })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[AffineIsometry] {
        &self.generators
    }

    pub fn disks(&self) -> &[Disk] {
        &self.disks
    }

    pub fn disk_of(&self, l: Letter) -> &Disk {
        &self.disks[l.code()]
    }

    pub fn letter_isometry(&self, l: Letter) -> &AffineIsometry {
        &self.letters[l.code()]
    }

    /// Isometry of a word, letters composing left to right (the leftmost
    /// letter acts last).
    pub fn word_isometry(&self, w: &Word) -> AffineIsometry {
        w.letters()
            .iter()
            .fold(AffineIsometry::IDENTITY, |acc, &l| {
                acc * *self.letter_isometry(l)
            })
    }

    pub fn word_linear(&self, w: &Word) -> LorentzTransform {
        self.word_isometry(w).linear
    }

    /// Conjugacy classes of the free group up to the given length.
    pub fn conjugacy_classes(&self, max_len: usize) -> Vec<Word> {
        enumerate_conjugacy_classes(self.rank(), max_len)
    }

    /// Image of a boundary angle under a linear isometry.
    pub fn boundary_image(a: &LorentzTransform, angle: f64) -> f64 {
        let v = a.apply(BoundaryPoint::from_angle(angle).null_vector());
        (v.y / v.t).atan2(v.x / v.t)
    }

    /// Sampled ping-pong certificate with the default sample count.
    pub fn verify_ping_pong(&self) -> Result<PingPongReport> {
        self.verify_ping_pong_with(PING_PONG_SAMPLES)
    }

    /// Checks that the `2k` disks are pairwise disjoint and that every letter
    /// maps the sampled complement of its inverse's disk strictly inside its
    /// own disk. Success certifies freeness and discreteness of the linear
    /// group by the ping-pong argument, at the resolution of the sampling.
    pub fn verify_ping_pong_with(&self, samples: usize) -> Result<PingPongReport> {
        let n = self.disks.len();
        let mut min_gap = f64::INFINITY;
        for i in 0..n {
            for j in (i + 1)..n {
                let gap = angle_gap(self.disks[i].center_angle, self.disks[j].center_angle)
                    - self.disks[i].radius
                    - self.disks[j].radius;
                if gap <= 0.0 {
                    return Err(Error::DisksOverlap {
                        first: i,
                        second: j,
                    });
                }
                min_gap = min_gap.min(gap);
            }
        }
        let mut min_margin = f64::INFINITY;
        for l in Letter::alphabet(self.rank()) {
            let a = self.letter_isometry(l).linear;
            let source_excluded = self.disk_of(l.inverse());
            let target = self.disk_of(l);
            for s in 0..samples {
                let angle = -std::f64::consts::PI
                    + std::f64::consts::TAU * (s as f64 + 0.5) / samples as f64;
                if source_excluded.contains(angle) {
                    continue;
                }
                let depth = target.depth(Self::boundary_image(&a, angle));
                if depth <= 0.0 {
                    return Err(Error::ContainmentViolated {
                        letter: l.code(),
                        witness_angle: angle,
                    });
                }
                min_margin = min_margin.min(depth);
            }
        }
        Ok(PingPongReport {
            samples,
            min_disk_gap: min_gap,
            min_containment_margin: min_margin,
        })
    }

    /// Fixed points (attracting and repelling) of every conjugacy class up to
    /// `max_len`, deduplicated. Monotone in `max_len`: enumeration order puts
    /// shorter classes first, so earlier outputs are prefixes of later ones.
    pub fn limit_set(&self, max_len: usize) -> LimitSetApprox {
        let classes = self.conjugacy_classes(max_len);
        let pairs = exec::map_collect(&classes, |w| {
            let frame = self
                .word_linear(w)
                .eigen_frame()
                .expect("classes of a verified presentation are hyperbolic");
            (
                BoundaryPoint::from_null(frame.x_plus).expect("eigenvectors are future null"),
                BoundaryPoint::from_null(frame.x_minus).expect("eigenvectors are future null"),
            )
        });
        let mut points: Vec<BoundaryPoint> = Vec::with_capacity(2 * pairs.len());
        let mut seen = std::collections::BTreeSet::new();
        for (attracting, repelling) in pairs {
            for p in [attracting, repelling] {
                // Quantized dedup; fixed points shared by powers collapse.
                let key = (p.angle() / 1e-9).round() as i64;
                if seen.insert(key) {
                    points.push(p);
                }
            }
        }
        LimitSetApprox { points, max_len }
    }

    /// Greedy reduction of a hyperboloid point into the fundamental domain:
    /// apply whichever letter strictly decreases the distance to the model
    /// basepoint until none does. Returns the representative and the word `w`
    /// with `L(w) p = representative`.
    pub fn reduce_to_domain(&self, p: LorentzVector) -> Result<(LorentzVector, Word)> {
        // Membership is checked relative to the point scale: coordinates of
        // hyperboloid points grow like e^(distance), and so does rounding.
        if (p.norm2() + 1.0).abs() > 1e-6 * p.t * p.t || p.t <= 0.0 {
            return Err(Error::InvalidFrameData(
                "reduction needs a point on the future unit hyperboloid".into(),
            ));
        }
        let mut current = p;
        let mut applied: Vec<Letter> = Vec::new();
        for _ in 0..REDUCTION_CAP {
            let d = hyperbolic_distance(current, BASEPOINT);
            let mut best: Option<(f64, Letter, LorentzVector)> = None;
            for l in Letter::alphabet(self.rank()) {
                let q = self.letter_isometry(l).linear.apply(current);
                let dq = hyperbolic_distance(q, BASEPOINT);
                if dq < d - 1e-13 && best.as_ref().is_none_or(|(b, _, _)| dq < *b) {
                    best = Some((dq, l, q));
                }
            }
            match best {
                Some((_, l, q)) => {
                    current = q;
                    applied.push(l);
                }
                None => {
                    applied.reverse();
                    return Ok((current, Word::new(applied)));
                }
            }
        }
        Err(Error::IterationCapExceeded { cap: REDUCTION_CAP })
    }

    /// Domain reduction of a frame: reduces the footpoint and moves the whole
    /// frame by the same deck transformation.
    pub fn reduce_frame(&self, f: &Frame) -> Result<(Frame, Word)> {
        let (_, word) = self.reduce_to_domain(f.basepoint())?;
        let moved = f.translate(&self.word_linear(&word));
        Ok((moved, word))
    }

    /// Rank-2 presentation with perpendicular generator axes through the
    /// basepoint, both of translation length `ell`, translation parts
    /// `c1`, `c2` along the respective neutral directions, and ping-pong
    /// disks of angular radius `disk_radius` around the four fixed points.
    pub fn perpendicular_pair(ell: f64, c1: f64, c2: f64, disk_radius: f64) -> Result<Self> {
        let r = LorentzTransform::rotation(-std::f64::consts::FRAC_PI_2);
        let a1 = LorentzTransform::boost(ell);
        let a2 = r.compose(&a1).compose(&r.lorentz_inverse());
        let g1 = AffineIsometry::new(a1, c1 * LorentzVector::E_X);
        let g2 = AffineIsometry::new(a2, c2 * r.apply(LorentzVector::E_X));
        let pi = std::f64::consts::PI;
        let disks = vec![
            Disk::new(pi / 2.0, disk_radius),  // g1 attracting
            Disk::new(-pi / 2.0, disk_radius), // g1 repelling
            Disk::new(0.0, disk_radius),       // g2 attracting
            Disk::new(pi, disk_radius),        // g2 repelling
        ];
        Self::new(vec![g1, g2], disks)
    }

    /// The reference deformation used throughout the test and experiment
    /// suites: perpendicular axes, translation length 3, both translations
    /// positive. Its Margulis invariants are positive for every class of
    /// length at most 8, with margin 2.
    pub fn reference() -> Self {
        Self::perpendicular_pair(3.0, 2.0, 2.0, 0.5).expect("reference data is valid")
    }

    /// A deliberately improper deformation: the second generator translated
    /// against its neutral direction, so the two generators have Margulis
    /// invariants of opposite sign. The magnitudes differ; equal ones would
    /// make the invariants of balanced words vanish exactly by symmetry.
    pub fn mixed_sign() -> Self {
        Self::perpendicular_pair(3.0, 2.0, -1.5, 0.5).expect("reference data is valid")
    }

    /// Disks of a common radius centered at each letter's attracting fixed
    /// point. A starting point for presentations; correctness still rests on
    /// [`Self::verify_ping_pong`].
    pub fn suggest_disks(generators: &[AffineIsometry], radius: f64) -> Result<Vec<Disk>> {
        let mut disks = Vec::with_capacity(2 * generators.len());
        for g in generators {
            let f = g.linear.eigen_frame()?;
            disks.push(Disk::new(
                BoundaryPoint::from_null(f.x_plus)?.angle(),
                radius,
            ));
            disks.push(Disk::new(
                BoundaryPoint::from_null(f.x_minus)?.angle(),
                radius,
            ));
        }
        Ok(disks)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PresentationSpec::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: PresentationSpec = serde_json::from_str(text)
            .map_err(|e| Error::InvalidPresentation(format!("bad JSON: {e}")))?;
        spec.build()
    }
}

/// Successful ping-pong certificate: worst-case gap between disks and
/// worst-case containment margin over the sampled angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PingPongReport {
    pub samples: usize,
    pub min_disk_gap: f64,
    pub min_containment_margin: f64,
}

/// Boundary fixed points of enumerated classes: an inner approximation of
/// the limit set, dense in it as the length bound grows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitSetApprox {
    pub points: Vec<BoundaryPoint>,
    pub max_len: usize,
}

impl LimitSetApprox {
    /// Directed Hausdorff distance (angular): how far this set sticks out
    /// of `other`.
    pub fn directed_hausdorff_to(&self, other: &LimitSetApprox) -> f64 {
        self.points
            .iter()
            .map(|p| {
                other
                    .points
                    .iter()
                    .map(|q| p.angular_distance(q))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }

    pub fn hausdorff(&self, other: &LimitSetApprox) -> f64 {
        self.directed_hausdorff_to(other)
            .max(other.directed_hausdorff_to(self))
    }
}

/// On-disk form of a presentation: 3x3 linear parts row-major, translations
/// as coordinate triples, one disk per letter.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct PresentationSpec {
    generators: Vec<GeneratorSpec>,
    disks: Vec<Disk>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GeneratorSpec {
    /// Row-major 3x3 matrix.
    linear: [f64; 9],
    translation: [f64; 3],
}

impl From<&GroupPresentation> for PresentationSpec {
    fn from(g: &GroupPresentation) -> Self {
        Self {
            generators: g
                .generators
                .iter()
                .map(|iso| {
                    let m = iso.linear.m;
                    GeneratorSpec {
                        linear: [
                            m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1],
                            m[2][2],
                        ],
                        translation: iso.translation.as_array(),
                    }
                })
                .collect(),
            disks: g.disks.clone(),
        }
    }
}

impl PresentationSpec {
    fn build(self) -> Result<GroupPresentation> {
        let generators = self
            .generators
            .into_iter()
            .map(|g| {
                let l = g.linear;
                AffineIsometry::new(
                    LorentzTransform::from_rows([
                        [l[0], l[1], l[2]],
                        [l[3], l[4], l[5]],
                        [l[6], l[7], l[8]],
                    ]),
                    LorentzVector::from_array(g.translation),
                )
            })
            .collect();
        GroupPresentation::new(generators, self.disks)
    }
}
