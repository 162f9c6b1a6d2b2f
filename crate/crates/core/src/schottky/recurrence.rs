//! Recurrence probes for the flat geodesic flow on the quotient spacetime.
//!
//! A probe flows a tangent state in both time directions, holding a deck
//! transformation that keeps the moving state as close as possible to the
//! start (greedy over generator letters, warm-started between samples), and
//! reports whether the reduced state ever returns within `eps`. Recurrence
//! here is the desk-scale surrogate of the topological notion: an
//! `eps`-return inside the horizon, in both directions, outside an initial
//! exclusion window.
//!
//! The distance on states is a product surrogate: Euclidean distance between
//! representative positions plus the angle between velocities (plus any speed
//! mismatch). It is not a quotient metric; it is only evaluated after deck
//! reduction, which is what the escape profiles record.

use serde::{Deserialize, Serialize};

use super::{GroupPresentation, Letter};
use crate::affine::{AffineIsometry, FlowState};
use crate::exec;
use crate::frames::euclidean_angle;
use crate::lorentz::CausalType;

/// Parameters of a recurrence probe.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ProbeParams {
    /// Return threshold on the state distance.
    pub eps: f64,
    /// Horizon: samples run over `[0, t_max]` in each direction.
    pub t_max: f64,
    /// Sampling interval.
    pub dt: f64,
    /// Returns before this time are ignored (excludes the trivial `t = 0`).
    pub t_min: f64,
    /// Maximum number of profile points kept per direction.
    pub profile_len: usize,
}

impl Default for ProbeParams {
    fn default() -> Self {
        Self {
            eps: 1e-2,
            t_max: 200.0,
            dt: 0.01,
            t_min: 1.0,
            profile_len: 400,
        }
    }
}

/// Distance surrogate between two tangent states of the flat spacetime.
pub fn state_distance(a: &FlowState, b: &FlowState) -> f64 {
    let position = (a.point - b.point).euclidean_norm();
    let angle = euclidean_angle(a.velocity, b.velocity);
    let speed = (a.velocity.euclidean_norm() - b.velocity.euclidean_norm()).abs();
    position + angle + speed
}

/// Outcome of one flow direction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DirectionReport {
    pub returned: bool,
    /// Smallest reduced distance to the start over `[t_min, t_max]`.
    pub best_distance: f64,
    /// Time of the first local minimum below `eps`, if any.
    pub return_time: Option<f64>,
    /// Downsampled `(|t|, reduced distance)` escape profile.
    pub profile: Vec<(f64, f64)>,
}

/// Probe outcome: per-direction reports plus the two-sided verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecurrenceReport {
    pub kind: CausalType,
    /// True only if both directions return within `eps`.
    pub returned: bool,
    /// The binding constraint: the larger of the two best distances.
    pub best_return_distance: f64,
    pub horizon: f64,
    pub forward: DirectionReport,
    pub backward: DirectionReport,
}

/// Flows `start` both ways under the flat geodesic flow, reducing by deck
/// transformations of the presentation, and reports `eps`-returns.
pub fn recurrence_probe(
    group: &GroupPresentation,
    start: FlowState,
    params: &ProbeParams,
) -> RecurrenceReport {
    let forward = probe_direction(group, start, params, 1.0);
    let backward = probe_direction(group, start, params, -1.0);
    RecurrenceReport {
        kind: start.velocity.causal_type(),
        returned: forward.returned && backward.returned,
        best_return_distance: forward.best_distance.max(backward.best_distance),
        horizon: params.t_max,
        forward,
        backward,
    }
}

/// Batch version; data-parallel under the `parallel` feature.
pub fn probe_batch(
    group: &GroupPresentation,
    starts: &[FlowState],
    params: &ProbeParams,
) -> Vec<RecurrenceReport> {
    exec::map_collect(starts, |s| recurrence_probe(group, *s, params))
}

fn probe_direction(
    group: &GroupPresentation,
    start: FlowState,
    params: &ProbeParams,
    sign: f64,
) -> DirectionReport {
    let steps = (params.t_max / params.dt).ceil() as usize;
    let stride = (steps / params.profile_len.max(1)).max(1);
    let mut deck = AffineIsometry::IDENTITY;
    let mut best = f64::INFINITY;
    let mut profile = Vec::with_capacity(steps / stride + 1);
    // Return-time extraction: first local minimum below eps.
    let mut return_time = None;
    let mut below: Option<(f64, f64)> = None; // (time, distance) while under eps

    for step in 1..=steps {
        let t = sign * params.dt * step as f64;
        let state = start.flow(t);
        // Greedy improvement of the deck transformation, warm-started from
        // the previous sample.
        let mut reduced = deck.apply_state(state);
        let mut d = state_distance(&reduced, &start);
        loop {
            let mut improved = false;
            for l in Letter::alphabet(group.rank()) {
                let candidate = group.letter_isometry(l).apply_state(reduced);
                let dc = state_distance(&candidate, &start);
                if dc < d - 1e-12 {
                    deck = *group.letter_isometry(l) * deck;
                    reduced = candidate;
                    d = dc;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }

        if step % stride == 0 || step == steps {
            profile.push((t.abs(), d));
        }
        if t.abs() + 1e-12 >= params.t_min {
            best = best.min(d);
            if return_time.is_none() {
                match below {
                    None if d < params.eps => below = Some((t.abs(), d)),
                    Some((bt, bd)) => {
                        if d < bd {
                            below = Some((t.abs(), d));
                        } else {
                            return_time = Some(bt);
                        }
                    }
                    None => {}
                }
            }
        }
    }
    if return_time.is_none() {
        if let Some((bt, _)) = below {
            return_time = Some(bt);
        }
    }
    DirectionReport {
        returned: return_time.is_some(),
        best_distance: best,
        return_time,
        profile,
    }
}
