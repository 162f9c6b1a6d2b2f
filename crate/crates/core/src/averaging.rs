//! Birkhoff averaging and coboundary bookkeeping for observables sampled
//! along flow orbits.
//!
//! For a sampled observable `f` and a window `T`, [`Observable::birkhoff_average`]
//! computes `f_T(x) = (1/T) int_0^T f(phi_s x) ds` and
//! [`Observable::transfer_function`] the explicit
//! `g = (1/T) int_0^T int_0^t f(phi_s x) ds dt`, which satisfies
//! `f_T - f = phi g` (the directional derivative of `g` along the flow);
//! [`verify_coboundary`] measures the residual of that identity with centered
//! differences. [`find_positive_t`] scans a window grid for one making every
//! supplied average strictly positive.
//!
//! Quadrature is the trapezoid rule on uniform grids (running integrals via
//! prefix sums), with linear interpolation in partial end cells; the error
//! model is O(h^2) throughout, and the residual check is itself O(h^2).

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Positivity margin required by [`find_positive_t`], keeping the
/// certificate meaningful under quadrature error.
pub const POSITIVITY_TOL: f64 = 1e-8;

/// A uniform time grid `t_i = start + i * step`, `i = 0..len`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitGrid {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl OrbitGrid {
    pub fn new(start: f64, step: f64, len: usize) -> Self {
        assert!(step > 0.0 && len > 0, "grid must advance");
        Self { start, step, len }
    }

    pub fn time(&self, i: usize) -> f64 {
        self.start + self.step * i as f64
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(|i| self.time(i))
    }

    /// Length of the sampled segment, `(len - 1) * step`.
    pub fn span(&self) -> f64 {
        self.step * (self.len - 1) as f64
    }

    /// Period represented by a periodic grid covering `[start, start + len*step)`.
    pub fn period(&self) -> f64 {
        self.step * self.len as f64
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.len == other.len
            && (self.start - other.start).abs() <= 1e-9 * (1.0 + self.start.abs())
            && (self.step - other.step).abs() <= 1e-12 * self.step
    }
}

/// Real values of an observable sampled on an orbit grid. A periodic
/// observable extends beyond the grid by period `len * step`; an open one is
/// only defined on the sampled segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observable {
    pub grid: OrbitGrid,
    pub values: Vec<f64>,
    pub periodic: bool,
}

impl Observable {
    pub fn new(grid: OrbitGrid, values: Vec<f64>) -> Self {
        assert_eq!(grid.len, values.len());
        Self {
            grid,
            values,
            periodic: false,
        }
    }

    /// Samples covering one full period `[start, start + len*step)`.
    pub fn new_periodic(grid: OrbitGrid, values: Vec<f64>) -> Self {
        assert_eq!(grid.len, values.len());
        Self {
            grid,
            values,
            periodic: true,
        }
    }

    pub fn from_fn(grid: OrbitGrid, periodic: bool, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.times().map(f).collect();
        Self {
            grid,
            values,
            periodic,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Restriction to the first `len` samples (open).
    pub fn truncated(&self, len: usize) -> Observable {
        assert!(len <= self.len());
        Observable {
            grid: OrbitGrid::new(self.grid.start, self.grid.step, len),
            values: self.values[..len].to_vec(),
            periodic: false,
        }
    }

    /// Mean over one period of a periodic observable (trapezoid, which on a
    /// full period is the plain sample mean).
    pub fn periodic_mean(&self) -> f64 {
        assert!(self.periodic);
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Integral over one period of a periodic observable.
    pub fn period_integral(&self) -> f64 {
        assert!(self.periodic);
        self.values.iter().sum::<f64>() * self.grid.step
    }

    fn prefix(&self) -> Prefix {
        let h = self.grid.step;
        let mut p = Vec::with_capacity(self.len());
        p.push(0.0);
        for j in 1..self.len() {
            let inc = h * (self.values[j - 1] + self.values[j]) / 2.0;
            p.push(p[j - 1] + inc);
        }
        let total = if self.periodic {
            p[self.len() - 1] + h * (self.values[self.len() - 1] + self.values[0]) / 2.0
        } else {
            p[self.len() - 1]
        };
        Prefix { p, total }
    }

    fn value_wrapped(&self, j: usize) -> f64 {
        if self.periodic {
            self.values[j % self.len()]
        } else {
            self.values[j]
        }
    }

    /// Window average `f_T` on the grid. Periodic inputs keep the full grid;
    /// open inputs are truncated to the samples whose window fits.
    pub fn birkhoff_average(&self, window: f64) -> Result<Observable> {
        assert!(window > 0.0, "averaging window must be positive");
        let prefix = self.prefix();
        let out_len = self.output_len(window)?;
        let values = (0..out_len)
            .map(|i| {
                let hi = prefix.eval(self, self.grid.time(i) + window)?;
                Ok((hi - prefix.at_index(self, i)) / window)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Observable {
            grid: OrbitGrid::new(self.grid.start, self.grid.step, out_len),
            values,
            periodic: self.periodic,
        })
    }

    /// The transfer function `g` with `f_T - f = phi g`, on the same grid as
    /// [`Self::birkhoff_average`] with the same window.
    pub fn transfer_function(&self, window: f64) -> Result<Observable> {
        assert!(window > 0.0, "averaging window must be positive");
        let prefix = self.prefix();
        let out_len = self.output_len(window)?;
        let h = self.grid.step;
        let cells = (window / h).floor() as usize;
        let remainder = window - cells as f64 * h;
        let values = (0..out_len)
            .map(|i| {
                let base = prefix.at_index(self, i);
                // Trapezoid of s -> P(t_i + s) - P(t_i) over [0, window].
                let mut acc = 0.0;
                let mut prev = 0.0;
                for c in 1..=cells {
                    let cur = prefix.at_global_index(self, i + c)? - base;
                    acc += h * (prev + cur) / 2.0;
                    prev = cur;
                }
                if remainder > 1e-12 * h {
                    let last = prefix.eval(self, self.grid.time(i) + window)? - base;
                    acc += remainder * (prev + last) / 2.0;
                }
                Ok(acc / window)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Observable {
            grid: OrbitGrid::new(self.grid.start, self.grid.step, out_len),
            values,
            periodic: self.periodic,
        })
    }

    fn output_len(&self, window: f64) -> Result<usize> {
        if self.periodic {
            return Ok(self.len());
        }
        let span = self.grid.span();
        let slack = 1e-9 * self.grid.step;
        if window > span + slack {
            return Err(Error::InsufficientHorizon {
                needed: window,
                available: span,
            });
        }
        let max_i = ((span - window) / self.grid.step + slack).floor() as usize;
        Ok((max_i + 1).min(self.len()))
    }

    /// Directional derivative along the flow by centered differences,
    /// defined on interior samples (all samples when periodic).
    pub fn flow_derivative(&self) -> Observable {
        let h = self.grid.step;
        if self.periodic {
            let n = self.len();
            let values = (0..n)
                .map(|i| (self.values[(i + 1) % n] - self.values[(i + n - 1) % n]) / (2.0 * h))
                .collect();
            Observable {
                grid: self.grid,
                values,
                periodic: true,
            }
        } else {
            let values = (1..self.len() - 1)
                .map(|i| (self.values[i + 1] - self.values[i - 1]) / (2.0 * h))
                .collect();
            Observable {
                grid: OrbitGrid::new(self.grid.time(1), h, self.len() - 2),
                values,
                periodic: false,
            }
        }
    }

    /// Writes `time,value` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "time,value")?;
        for (t, v) in self.grid.times().zip(&self.values) {
            writeln!(out, "{t},{v}")?;
        }
        Ok(())
    }

    /// Reads `time,value` rows with a uniform time step.
    pub fn read_csv<R: BufRead>(input: R, periodic: bool) -> Result<Observable> {
        let mut times = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line.map_err(|e| Error::MalformedData(format!("read failed: {e}")))?;
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with("time")) {
                continue;
            }
            let (t, v) = line
                .split_once(',')
                .ok_or_else(|| Error::MalformedData(format!("line {}: no comma", lineno + 1)))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::MalformedData(format!("line {}: {e}", lineno + 1)))
            };
            times.push(parse(t)?);
            values.push(parse(v)?);
        }
        if times.len() < 2 {
            return Err(Error::MalformedData("need at least two samples".into()));
        }
        let step = times[1] - times[0];
        if step <= 0.0 {
            return Err(Error::MalformedData("times must increase".into()));
        }
        for w in times.windows(2) {
            if ((w[1] - w[0]) - step).abs() > 1e-9 * step.max(1.0) {
                return Err(Error::MalformedData("time step is not uniform".into()));
            }
        }
        let grid = OrbitGrid::new(times[0], step, times.len());
        Ok(if periodic {
            Observable::new_periodic(grid, values)
        } else {
            Observable::new(grid, values)
        })
    }
}

/// Running trapezoid integral of an observable from its grid start.
struct Prefix {
    p: Vec<f64>,
    total: f64,
}

impl Prefix {
    fn at_index(&self, _obs: &Observable, i: usize) -> f64 {
        self.p[i]
    }

    /// Prefix value at grid index `i`, allowing periodic wrap-around.
    fn at_global_index(&self, obs: &Observable, i: usize) -> Result<f64> {
        let n = obs.len();
        if obs.periodic {
            let wraps = (i / n) as f64;
            Ok(wraps * self.total + self.p[i % n])
        } else if i < n {
            Ok(self.p[i])
        } else {
            Err(Error::InsufficientHorizon {
                needed: obs.grid.step * i as f64,
                available: obs.grid.span(),
            })
        }
    }

    /// Prefix value at an arbitrary time, with linear interpolation of the
    /// integrand in the partial cell.
    fn eval(&self, obs: &Observable, t: f64) -> Result<f64> {
        let h = obs.grid.step;
        let rel = t - obs.grid.start;
        if obs.periodic {
            let period = obs.grid.period();
            let mut wraps = (rel / period).floor();
            let mut r = rel - wraps * period;
            if r < 0.0 {
                r += period;
                wraps -= 1.0;
            } else if r >= period {
                r -= period;
                wraps += 1.0;
            }
            let j = ((r / h).floor() as usize).min(obs.len() - 1);
            let frac = r - j as f64 * h;
            Ok(wraps * self.total + self.p[j % obs.len()] + self.partial(obs, j, frac))
        } else {
            let span = obs.grid.span();
            let slack = 1e-9 * h;
            if !(-slack..=span + slack).contains(&rel) {
                return Err(Error::InsufficientHorizon {
                    needed: rel,
                    available: span,
                });
            }
            let rel = rel.clamp(0.0, span);
            let j = ((rel / h).floor() as usize).min(obs.len() - 2);
            let frac = rel - j as f64 * h;
            Ok(self.p[j] + self.partial(obs, j, frac))
        }
    }

    fn partial(&self, obs: &Observable, j: usize, frac: f64) -> f64 {
        if frac <= 0.0 {
            return 0.0;
        }
        let h = obs.grid.step;
        let f0 = obs.value_wrapped(j);
        let f1 = obs.value_wrapped(j + 1);
        let f_end = f0 + (f1 - f0) * (frac / h);
        frac * (f0 + f_end) / 2.0
    }
}

/// Residual statistics of `f_T - f - phi g` over the common grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoboundaryReport {
    pub max_residual: f64,
    pub rms_residual: f64,
    pub points: usize,
}

/// Measures how well `g` transfers `f` to `f_T`: computes `phi g` by centered
/// differences and reports the max and RMS of `|f_T - f - phi g|` over
/// interior samples. All three observables must share one grid.
pub fn verify_coboundary(
    f: &Observable,
    f_t: &Observable,
    g: &Observable,
) -> Result<CoboundaryReport> {
    if !(f.grid.approx_eq(&f_t.grid) && f.grid.approx_eq(&g.grid))
        || f.periodic != f_t.periodic
        || f.periodic != g.periodic
    {
        return Err(Error::GridMismatch);
    }
    let phi_g = g.flow_derivative();
    let offset = if f.periodic { 0 } else { 1 };
    let mut max_res: f64 = 0.0;
    let mut sum_sq = 0.0;
    let n = phi_g.len();
    for k in 0..n {
        let i = k + offset;
        let r = (f_t.values[i] - f.values[i] - phi_g.values[k]).abs();
        max_res = max_res.max(r);
        sum_sq += r * r;
    }
    Ok(CoboundaryReport {
        max_residual: max_res,
        rms_residual: (sum_sq / n as f64).sqrt(),
        points: n,
    })
}

/// Result of scanning window lengths for uniform positivity of `f_T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PositiveTSearch {
    /// The least grid window whose averages clear [`POSITIVITY_TOL`] on
    /// every supplied orbit.
    Found {
        window: f64,
        min_value: f64,
        /// `(window, min over orbits and times of f_T)` for each window tried.
        history: Vec<(f64, f64)>,
    },
    /// No window worked; the witness pins the non-positive average seen at
    /// the largest window.
    NotFound {
        witness_orbit: usize,
        witness_time: f64,
        witness_value: f64,
        history: Vec<(f64, f64)>,
    },
}

/// Scans `windows` (ascending) and returns the least one for which every
/// average `f_T` over every supplied orbit observable stays above
/// [`POSITIVITY_TOL`]; otherwise reports the failure witness at the largest
/// window. Failure is a report, not an error.
pub fn find_positive_t(observables: &[Observable], windows: &[f64]) -> Result<PositiveTSearch> {
    assert!(!observables.is_empty() && !windows.is_empty());
    let mut sorted: Vec<f64> = windows.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut history = Vec::with_capacity(sorted.len());
    let mut last_witness = (0usize, 0.0f64, f64::INFINITY);
    for &window in &sorted {
        let mut min_value = f64::INFINITY;
        let mut witness = (0usize, 0.0f64, f64::INFINITY);
        for (orbit, f) in observables.iter().enumerate() {
            let avg = f.birkhoff_average(window)?;
            for (i, &v) in avg.values.iter().enumerate() {
                if v < min_value {
                    min_value = v;
                    witness = (orbit, avg.grid.time(i), v);
                }
            }
        }
        history.push((window, min_value));
        last_witness = witness;
        if min_value > POSITIVITY_TOL {
            return Ok(PositiveTSearch::Found {
                window,
                min_value,
                history,
            });
        }
    }
    Ok(PositiveTSearch::NotFound {
        witness_orbit: last_witness.0,
        witness_time: last_witness.1,
        witness_value: last_witness.2,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::TAU;

    fn circle_orbit(theta0: f64, h: f64, spans: f64) -> Observable {
        // Unit-speed circle flow: f(phi_t x) = sin(theta0 + t).
        let len = (spans * TAU / h).ceil() as usize + 1;
        Observable::from_fn(OrbitGrid::new(0.0, h, len), false, |t| (theta0 + t).sin())
    }

    #[test]
    fn constant_average_is_constant() {
        let f = Observable::from_fn(OrbitGrid::new(0.0, 0.1, 101), false, |_| 3.25);
        let avg = f.birkhoff_average(2.0).unwrap();
        assert!(!avg.is_empty());
        for v in &avg.values {
            assert_abs_diff_eq!(*v, 3.25, epsilon = 1e-12);
        }
    }

    #[test]
    fn full_turn_average_of_sine_vanishes() {
        let f = circle_orbit(0.7, 2e-3, 2.0);
        let avg = f.birkhoff_average(TAU).unwrap();
        for v in &avg.values {
            assert!(v.abs() < 1e-8, "average {v} should vanish");
        }
    }

    #[test]
    fn periodic_average_over_period_is_the_mean() {
        let grid = OrbitGrid::new(0.0, TAU / 1024.0, 1024);
        let f = Observable::from_fn(grid, true, |t| 1.5 + t.sin());
        let avg = f.birkhoff_average(grid.period()).unwrap();
        let mean = f.periodic_mean();
        for v in &avg.values {
            assert_abs_diff_eq!(*v, mean, epsilon = 1e-10);
        }
    }

    #[test]
    fn averaging_preserves_periodic_means() {
        // The window average of a periodic observable has the same orbit
        // mean, for aligned and unaligned windows alike.
        let grid = OrbitGrid::new(0.0, TAU / 4096.0, 4096);
        let f = Observable::from_fn(grid, true, |t| 0.4 + t.sin() - 0.3 * (2.0 * t).cos());
        let mean = f.periodic_mean();
        for window in [grid.step * 512.0, 1.0, 2.7, 13.1] {
            let avg = f.birkhoff_average(window).unwrap();
            assert_abs_diff_eq!(avg.periodic_mean(), mean, epsilon = 1e-9);
        }
    }

    #[test]
    fn transfer_of_constant_is_half_window() {
        let f = Observable::from_fn(OrbitGrid::new(0.0, 0.05, 201), false, |_| 2.0);
        let g = f.transfer_function(4.0).unwrap();
        for v in &g.values {
            assert_abs_diff_eq!(*v, 4.0, epsilon = 1e-10); // c T / 2 = 2 * 4 / 2
        }
    }

    #[test]
    fn transfer_on_circle_flow_is_cosine() {
        let h = 2e-3;
        let f = circle_orbit(0.0, h, 2.0);
        let g = f.transfer_function(TAU).unwrap();
        for (t, v) in g.grid.times().zip(&g.values) {
            assert!((v - t.cos()).abs() < 1e-5, "g({t}) = {v} vs {}", t.cos());
        }
    }

    #[test]
    fn transfer_is_linear() {
        let grid = OrbitGrid::new(0.0, 0.01, 701);
        let f1 = Observable::from_fn(grid, false, |t| (1.3 * t).sin());
        let f2 = Observable::from_fn(grid, false, |t| (0.4 * t).cos());
        let combo = Observable::from_fn(grid, false, |t| {
            2.0 * (1.3 * t).sin() - 0.5 * (0.4 * t).cos()
        });
        let t = 3.0;
        let g1 = f1.transfer_function(t).unwrap();
        let g2 = f2.transfer_function(t).unwrap();
        let gc = combo.transfer_function(t).unwrap();
        for i in 0..gc.len() {
            assert_abs_diff_eq!(
                gc.values[i],
                2.0 * g1.values[i] - 0.5 * g2.values[i],
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn coboundary_residual_vanishes_for_trivial_transfer() {
        let f = circle_orbit(0.3, 1e-2, 1.5);
        let zero = Observable::from_fn(f.grid, false, |_| 0.0);
        let report = verify_coboundary(&f, &f, &zero).unwrap();
        assert_eq!(report.max_residual, 0.0);
    }

    #[test]
    fn coboundary_identity_holds_on_circle_flow() {
        let h = 2e-3;
        let f = circle_orbit(0.2, h, 2.0);
        let window = TAU;
        let f_t = f.birkhoff_average(window).unwrap();
        let g = f.transfer_function(window).unwrap();
        let f_common = f.truncated(f_t.len());
        let report = verify_coboundary(&f_common, &f_t, &g).unwrap();
        assert!(report.max_residual < 5.0 * h * h, "{report:?}");
    }

    #[test]
    fn coboundary_residual_detects_wrong_transfer() {
        let h = 2e-3;
        let f = circle_orbit(0.2, h, 2.0);
        let window = TAU;
        let f_t = f.birkhoff_average(window).unwrap();
        let g = f.transfer_function(window).unwrap();
        let skewed = Observable {
            grid: g.grid,
            values: g.grid.times().zip(&g.values).map(|(t, v)| v + t).collect(),
            periodic: false,
        };
        let f_common = f.truncated(f_t.len());
        let report = verify_coboundary(&f_common, &f_t, &skewed).unwrap();
        assert_abs_diff_eq!(report.max_residual, 1.0, epsilon = 1e-3);
        assert_abs_diff_eq!(report.rms_residual, 1.0, epsilon = 1e-3);
    }

    #[test]
    fn coboundary_residual_halves_quadratically() {
        let run = |h: f64| {
            let f = circle_orbit(0.0, h, 2.0);
            let f_t = f.birkhoff_average(TAU).unwrap();
            let g = f.transfer_function(TAU).unwrap();
            verify_coboundary(&f.truncated(f_t.len()), &f_t, &g)
                .unwrap()
                .max_residual
        };
        let coarse = run(4e-3);
        let fine = run(2e-3);
        assert!(
            coarse / fine >= 3.5,
            "expected quadratic decay, got {coarse} -> {fine}"
        );
    }

    #[test]
    fn grid_mismatch_is_reported() {
        let f = circle_orbit(0.0, 1e-2, 1.0);
        let g = circle_orbit(0.0, 2e-2, 1.0);
        assert!(matches!(
            verify_coboundary(&f, &f, &g),
            Err(Error::GridMismatch)
        ));
    }

    #[test]
    fn short_grid_is_rejected() {
        let f = circle_orbit(0.0, 1e-2, 0.5);
        assert!(matches!(
            f.birkhoff_average(2.0 * TAU),
            Err(Error::InsufficientHorizon { .. })
        ));
    }

    #[test]
    fn positive_observable_needs_smallest_window() {
        let grid = OrbitGrid::new(0.0, 0.01, 500);
        let f = Observable::from_fn(grid, true, |t| 2.0 + t.sin());
        match find_positive_t(&[f], &[0.5, 1.0, 2.0]).unwrap() {
            PositiveTSearch::Found { window, .. } => assert_abs_diff_eq!(window, 0.5),
            other => panic!("expected success, got {other:?}"),
        }
    }

    #[test]
    fn averaging_rescues_sign_varying_positive_mean() {
        // Mean 0.5 but pointwise sign-varying; long enough windows win.
        let grid = OrbitGrid::new(0.0, TAU / 512.0, 512);
        let f = Observable::from_fn(grid, true, |t| 0.5 + 2.0 * t.sin());
        let windows: Vec<f64> = (1..=60).map(|k| k as f64).collect();
        match find_positive_t(&[f], &windows).unwrap() {
            PositiveTSearch::Found {
                window, min_value, ..
            } => {
                assert!(window > 1.0, "tiny windows cannot be positive yet");
                assert!(min_value > POSITIVITY_TOL);
            }
            other => panic!("expected success, got {other:?}"),
        }
    }

    #[test]
    fn opposite_mean_signs_fail_with_witness() {
        let grid = OrbitGrid::new(0.0, TAU / 256.0, 256);
        let plus = Observable::from_fn(grid, true, |t| 1.0 + 0.3 * t.sin());
        let minus = Observable::from_fn(grid, true, |t| -0.8 + 0.3 * t.cos());
        match find_positive_t(&[plus, minus], &[1.0, 5.0, 25.0]).unwrap() {
            PositiveTSearch::NotFound {
                witness_orbit,
                witness_value,
                history,
                ..
            } => {
                assert_eq!(witness_orbit, 1);
                assert!(witness_value < 0.0);
                assert_eq!(history.len(), 3);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn csv_round_trip() {
        let grid = OrbitGrid::new(0.5, 0.25, 9);
        let f = Observable::from_fn(grid, false, |t| t * t - 1.0);
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let back = Observable::read_csv(std::io::Cursor::new(buf), false).unwrap();
        assert!(f.grid.approx_eq(&back.grid));
        for (a, b) in f.values.iter().zip(&back.values) {
            assert_abs_diff_eq!(a, b);
        }
    }

    #[test]
    fn csv_rejects_ragged_times() {
        let text = "time,value\n0,1\n0.1,1\n0.3,1\n";
        assert!(matches!(
            Observable::read_csv(std::io::Cursor::new(text), false),
            Err(Error::MalformedData(_))
        ));
    }
}
