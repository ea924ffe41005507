//! Piecewise-linear paths on uniform time grids.

use std::io::{self, Write};

/// A real-valued path sampled at the uniform grid times `0, dt, …, N·dt` and
/// interpreted as piecewise linear between grid points.
#[derive(Debug, Clone, PartialEq)]
pub struct PathGrid {
    dt: f64,
    values: Vec<f64>,
}

impl PathGrid {
    /// Builds a path from a grid step and the values at the grid points.
    ///
    /// # Panics
    ///
    /// Panics unless `dt` is positive and finite and at least two finite
    /// values (one grid step) are supplied.
    pub fn new(dt: f64, values: Vec<f64>) -> Self {
        assert!(dt > 0.0 && dt.is_finite(), "grid step must be positive");
        assert!(values.len() >= 2, "a path needs at least one grid step");
        assert!(
            values.iter().all(|v| v.is_finite()),
            "path values must be finite"
        );
        Self { dt, values }
    }

    /// The grid step.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// The values at the grid points.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The number of grid steps (one less than the number of grid points).
    pub fn num_steps(&self) -> usize {
        self.values.len() - 1
    }

    /// The total time span `N·dt`.
    pub fn duration(&self) -> f64 {
        self.num_steps() as f64 * self.dt
    }

    /// Piecewise-linear evaluation at a time in `[0, duration]`.
    ///
    /// # Panics
    ///
    /// Panics when `t` lies outside the time span, up to a hair of
    /// floating-point slack at either end.
    pub fn value_at(&self, t: f64) -> f64 {
        let duration = self.duration();
        let slack = 1e-9 * duration.max(1.0);
        assert!(
            (-slack..=duration + slack).contains(&t),
            "time {t} outside the span [0, {duration}]"
        );
        let pos = (t / self.dt).clamp(0.0, self.num_steps() as f64);
        let j = (pos.floor() as usize).min(self.num_steps() - 1);
        let w = pos - j as f64;
        self.values[j] + w * (self.values[j + 1] - self.values[j])
    }

    /// Minimum of the piecewise-linear path over the window between `s` and
    /// `t` (argument order irrelevant): the smaller of the interpolated
    /// boundary values and every grid value inside the window.
    pub fn min_on(&self, s: f64, t: f64) -> f64 {
        let (a, b) = if s <= t { (s, t) } else { (t, s) };
        let mut min = self.value_at(a).min(self.value_at(b));
        let lo = (a / self.dt).max(0.0).ceil() as usize;
        let hi = ((b / self.dt).floor() as usize).min(self.num_steps());
        for k in lo..=hi {
            min = min.min(self.values[k]);
        }
        min
    }

    /// The largest grid value.
    pub fn max_value(&self) -> f64 {
        self.values.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v))
    }

    /// Whether the path is excursion-shaped: both endpoints exactly zero and
    /// no negative values.
    pub fn is_excursion(&self) -> bool {
        self.values[0] == 0.0
            && *self.values.last().expect("paths are nonempty") == 0.0
            && self.values.iter().all(|&v| v >= 0.0)
    }

    /// Writes the path as two-column CSV with a `time,value` header row.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "time,value")?;
        for (k, v) in self.values.iter().enumerate() {
            writeln!(out, "{},{}", k as f64 * self.dt, v)?;
        }
        Ok(())
    }
}

/// A nonnegative reflected path together with its running local time at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectedPathWithLocalTime {
    /// The reflected path; nonnegative at every grid point.
    pub path: PathGrid,
    /// The running local time at zero: nondecreasing from zero, one value
    /// per grid point.
    pub ltime: Vec<f64>,
}

impl ReflectedPathWithLocalTime {
    /// Pairs a reflected path with its local time.
    ///
    /// # Panics
    ///
    /// Panics unless the local time has one value per grid point, starts at
    /// zero, and is nondecreasing, and the path is nonnegative.
    pub fn new(path: PathGrid, ltime: Vec<f64>) -> Self {
        assert_eq!(
            path.values().len(),
            ltime.len(),
            "local time must have one value per grid point"
        );
        assert_eq!(ltime[0], 0.0, "local time must start at zero");
        assert!(
            ltime.windows(2).all(|w| w[0] <= w[1]),
            "local time must be nondecreasing"
        );
        assert!(
            path.values().iter().all(|&v| v >= 0.0),
            "a reflected path is nonnegative"
        );
        Self { path, ltime }
    }
}

/// Number of grid steps covering `total_time` at step `dt`.
///
/// # Panics
///
/// Panics unless `dt` is positive, `total_time ≥ dt`, and `dt` divides
/// `total_time` up to floating-point slack.
pub(crate) fn steps_for(dt: f64, total_time: f64) -> usize {
    assert!(dt > 0.0 && dt.is_finite(), "grid step must be positive");
    assert!(
        total_time >= dt,
        "the time span must cover at least one grid step"
    );
    let n = (total_time / dt).round();
    assert!(
        (n * dt - total_time).abs() <= 1e-9 * total_time.max(1.0),
        "the grid step must divide the time span"
    );
    n as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tent() -> PathGrid {
        PathGrid::new(0.5, vec![0.0, 0.5, 1.0, 0.5, 0.0])
    }

    #[test]
    fn interpolation_and_span() {
        let p = tent();
        assert_eq!(p.num_steps(), 4);
        assert!((p.duration() - 2.0).abs() < 1e-15);
        assert!((p.value_at(0.25) - 0.25).abs() < 1e-15);
        assert!((p.value_at(1.0) - 1.0).abs() < 1e-15);
        assert!((p.value_at(2.0) - 0.0).abs() < 1e-15);
        assert!((p.value_at(1.25) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn window_minima_interpolate_boundaries() {
        let p = tent();
        // Window entirely inside the rising edge: minimum at the left end.
        assert!((p.min_on(0.25, 0.75) - 0.25).abs() < 1e-15);
        // Window across the peak: minimum is the smaller boundary value.
        assert!((p.min_on(0.75, 1.5) - 0.5).abs() < 1e-15);
        // Order of the arguments is irrelevant.
        assert_eq!(p.min_on(1.5, 0.75), p.min_on(0.75, 1.5));
        // Degenerate window.
        assert!((p.min_on(1.0, 1.0) - 1.0).abs() < 1e-15);
        // Full window reaches the endpoint zeros.
        assert_eq!(p.min_on(0.0, 2.0), 0.0);
    }

    #[test]
    fn excursion_shape() {
        assert!(tent().is_excursion());
        assert!(!PathGrid::new(1.0, vec![0.0, -0.5, 0.0]).is_excursion());
        assert!(!PathGrid::new(1.0, vec![0.0, 1.0]).is_excursion());
    }

    #[test]
    fn csv_round_trip_format() {
        let p = PathGrid::new(0.5, vec![0.0, 1.5, 0.0]);
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "time,value\n0,0\n0.5,1.5\n1,0\n");
    }

    #[test]
    fn step_counting() {
        assert_eq!(steps_for(0.5, 2.0), 4);
        assert_eq!(steps_for(1.0, 1.0), 1);
        assert_eq!(steps_for(0.1, 1.0), 10);
    }

    #[test]
    #[should_panic(expected = "must divide")]
    fn step_counting_rejects_misaligned_spans() {
        steps_for(0.3, 1.0);
    }

    #[test]
    fn local_time_pairing_validation() {
        let path = PathGrid::new(1.0, vec![0.0, 1.0, 0.0]);
        let r = ReflectedPathWithLocalTime::new(path, vec![0.0, 0.0, 0.5]);
        assert_eq!(r.ltime.len(), 3);
    }

    #[test]
    #[should_panic(expected = "nondecreasing")]
    fn local_time_must_not_decrease() {
        let path = PathGrid::new(1.0, vec![0.0, 1.0, 0.0]);
        ReflectedPathWithLocalTime::new(path, vec![0.0, 0.5, 0.2]);
    }
}
