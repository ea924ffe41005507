//! Composite Simpson quadrature for the one-dimensional normalization
//! checks.

/// Integrates `f` over `[a, b]` with `panels` Simpson panels (`panels`
/// must be even and at least 2).
pub(crate) fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels >= 2 && panels % 2 == 0, "need an even panel count");
    let h = (b - a) / panels as f64;
    let mut acc = f(a) + f(b);
    for k in 1..panels {
        let weight = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += weight * f(a + k as f64 * h);
    }
    acc * h / 3.0
}
