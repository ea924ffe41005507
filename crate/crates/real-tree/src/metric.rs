//! The pseudometric coded by a nonnegative path, and re-rooting.
//!
//! A continuous function `g ≥ 0` on `[0, span]` codes a pseudometric
//! `d_g(s, t) = g(s) + g(t) - 2 min_{[s∧t, s∨t]} g`; the quotient of the
//! interval by `d_g = 0` is a rooted real tree. This module evaluates the
//! pseudometric on a [`PathGrid`], re-roots a coding excursion at a chosen
//! time, and certifies the triangle and four-point inequalities at grid
//! times with comparisons arranged so floating-point rounding cannot flip
//! them.

use excursion_lab::PathGrid;

use crate::error::TreeMetricError;

/// Checks that `t` lies in `[0, span]` (with a hair of slack for times
/// produced by float accumulation).
fn check_time(t: f64, span: f64) -> Result<(), TreeMetricError> {
    if !t.is_finite() || !(-1e-9..=span + 1e-9).contains(&t) {
        return Err(TreeMetricError::OutOfRange { time: t, span });
    }
    Ok(())
}

/// Distance between the points coded by times `s` and `t`:
/// `g(s) + g(t) - 2 min g` over the closed interval between them.
///
/// The arguments may come in either order. Returns an error when either
/// time lies outside `[0, span]`.
///
/// When `s == t` the result is exactly `0.0`: the expression is evaluated
/// as `g(s) + g(t) - 2m` with `m` the interval minimum, and for a single
/// point all three values coincide, so the floating-point result cancels
/// exactly.
pub fn path_distance(g: &PathGrid, s: f64, t: f64) -> Result<f64, TreeMetricError> {
    let span = g.duration();
    check_time(s, span)?;
    check_time(t, span)?;
    let m = g.min_on(s, t);
    Ok(g.value_at(s) + g.value_at(t) - 2.0 * m)
}

/// Wraps `x` into `[0, span)` assuming `0 <= x < 2 span`, by at most one
/// subtraction (so dyadic inputs stay exact).
fn wrap(x: f64, span: f64) -> f64 {
    if x >= span {
        x - span
    } else {
        x
    }
}

/// Re-roots the excursion `g` at the point visited at time `s0`.
///
/// The returned grid has the same step `dt` and the same duration, and its
/// value at time `s` is exactly
///
/// ```text
/// g'(s) = g(s0) + g((s0 + s) mod span) - 2 * min g over the closed
///          interval between s0 and (s0 + s) mod span
/// ```
///
/// so the tree coded by the output is the tree coded by `g` with the root
/// moved to the point at `s0`, and distances transport as
/// `d_{g'}(s, t) = d_g((s0 + s) mod span, (s0 + t) mod span)`.
///
/// When `s0` lies exactly on the grid the node values are computed by pure
/// index arithmetic (one pass of running minima), so they carry no more
/// rounding than the formula's two additions. Between nodes the output
/// interpolates linearly, which reproduces the re-rooted function exactly
/// whenever every level crossing of `g` happens at a grid node and `s0` is
/// a grid node (for example for lattice paths with one up- or down-step of
/// fixed size per grid step); for other inputs the interpolation can cut
/// corners between nodes.
///
/// Requires `g` to be an excursion and `s0` in `[0, span)`; both endpoints
/// of the output are exactly zero.
pub fn reroot(g: &PathGrid, s0: f64) -> Result<PathGrid, TreeMetricError> {
    let span = g.duration();
    if !g.is_excursion() {
        return Err(TreeMetricError::NotAnExcursion);
    }
    if !s0.is_finite() || !(0.0..span).contains(&s0) {
        return Err(TreeMetricError::OutOfRange { time: s0, span });
    }
    let dt = g.dt();
    let n = g.num_steps();
    let k0f = (s0 / dt).round();
    let on_grid = k0f >= 0.0 && (k0f as usize) < n && k0f * dt == s0;
    let values = if on_grid {
        reroot_on_grid(g.values(), k0f as usize)
    } else {
        reroot_off_grid(g, s0)
    };
    Ok(PathGrid::new(dt, values))
}

/// Node values of the re-rooted excursion when the new root sits at node
/// `k0`: a forward sweep over `u = k0..=n` with a running minimum, then a
/// wrapped sweep over `u = 1..=k0` against suffix minima of `v[u..=k0]`.
fn reroot_on_grid(v: &[f64], k0: usize) -> Vec<f64> {
    let n = v.len() - 1;
    let mut out = Vec::with_capacity(n + 1);
    let mut m = v[k0];
    for &vu in &v[k0..=n] {
        m = m.min(vu);
        out.push(v[k0] + vu - 2.0 * m);
    }
    if k0 > 0 {
        let mut back = vec![0.0; k0 + 1];
        back[k0] = v[k0];
        for i in (0..k0).rev() {
            back[i] = v[i].min(back[i + 1]);
        }
        for u in 1..=k0 {
            out.push(v[k0] + v[u] - 2.0 * back[u]);
        }
    }
    out
}

fn reroot_off_grid(g: &PathGrid, s0: f64) -> Vec<f64> {
    let span = g.duration();
    let dt = g.dt();
    let n = g.num_steps();
    let g_s0 = g.value_at(s0);
    let mut values = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let u = wrap(s0 + k as f64 * dt, span);
        let m = g.min_on(s0, u);
        values.push(g_s0 + g.value_at(u) - 2.0 * m);
    }
    // Both ends evaluate at u = s0, where the formula cancels; re-pin them
    // in case the wrap of s0 + span landed an ulp away from s0.
    values[0] = 0.0;
    values[n] = 0.0;
    values
}

/// Maps a time `t` of the re-rooted excursion back to the time
/// `(s0 + t) mod span` of the original excursion, with the same one-step
/// wrap used by [`reroot`].
pub fn reroot_time(t: f64, s0: f64, span: f64) -> f64 {
    wrap(s0 + t, span)
}

/// Certifies the triangle inequality `d_g(a, c) <= d_g(a, b) + d_g(b, c)`
/// at the given times, by comparing
///
/// ```text
/// m(a, b) + m(b, c)  <=  g(b) + m(a, c)
/// ```
///
/// which is the same inequality with the shared `g` terms cancelled. Each
/// side is a single addition of exactly-computed interval minima and node
/// values, and rounding to nearest is monotone, so the comparison cannot
/// be flipped by floating-point error: whenever the true inequality holds
/// the certificate returns `true`.
pub fn triangle_certificate(g: &PathGrid, a: f64, b: f64, c: f64) -> Result<bool, TreeMetricError> {
    let span = g.duration();
    for t in [a, b, c] {
        check_time(t, span)?;
    }
    let lhs = g.min_on(a, b) + g.min_on(b, c);
    let rhs = g.value_at(b) + g.min_on(a, c);
    Ok(lhs <= rhs)
}

/// Certifies the four-point condition at the given times: for every
/// pairing of `{a, b, c, d}` into two pairs,
///
/// ```text
/// d(x, y) + d(z, w) <= max of the other two pairing sums.
/// ```
///
/// Substituting `d(x, y) = g(x) + g(y) - 2 m(x, y)` cancels all `g` terms,
/// and the condition over all three pairings becomes: the two smallest of
///
/// ```text
/// M1 = m(a,b) + m(c,d),  M2 = m(a,c) + m(b,d),  M3 = m(a,d) + m(b,c)
/// ```
///
/// are equal. Each `M` is a single addition of exact interval minima, and
/// rounding is a function of the exact sum, so true equalities survive the
/// float evaluation and the certificate is reliable at zero tolerance.
pub fn four_point_certificate(g: &PathGrid, times: [f64; 4]) -> Result<bool, TreeMetricError> {
    let span = g.duration();
    for t in times {
        check_time(t, span)?;
    }
    let [a, b, c, d] = times;
    let mut sums = [
        g.min_on(a, b) + g.min_on(c, d),
        g.min_on(a, c) + g.min_on(b, d),
        g.min_on(a, d) + g.min_on(b, c),
    ];
    sums.sort_by(f64::total_cmp);
    Ok(sums[0] == sums[1])
}
