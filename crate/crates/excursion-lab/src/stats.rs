//! Seeded statistical test kit: Kolmogorov–Smirnov and chi-square tests with
//! asymptotic p-values, plus JSON reporting of test outcomes.

use serde::Serialize;

use crate::error::ExcursionError;

/// Outcome of a statistical test, serializable as a JSON record.
#[derive(Debug, Clone, Serialize)]
pub struct TestRecord {
    /// Name of the test that produced the record.
    pub test: String,
    /// The test statistic.
    pub statistic: f64,
    /// Asymptotic p-value of the statistic.
    pub pvalue: f64,
    /// Sample size (the effective pooled size for two-sample tests).
    pub n: usize,
    /// Seed of the random stream that produced the sample.
    pub seed: u64,
}

impl TestRecord {
    /// Serializes the record as a single-line JSON object.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("a test record always serializes")
    }
}

/// The standard normal cumulative distribution function.
pub fn standard_normal_cdf(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-x / std::f64::consts::SQRT_2)
}

/// Two-sided Kolmogorov–Smirnov statistic of a sample against a reference
/// distribution function.
///
/// # Errors
///
/// Returns [`ExcursionError::EmptySample`] on an empty sample.
pub fn ks_statistic<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> Result<f64, ExcursionError> {
    if sample.is_empty() {
        return Err(ExcursionError::EmptySample);
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i as f64 + 1.0) / n - f);
    }
    Ok(d)
}

/// Asymptotic two-sided Kolmogorov–Smirnov p-value for a statistic observed
/// at effective sample size `n_eff` (use `n` for one-sample tests and
/// `n·m/(n+m)` for two-sample tests).
pub fn ks_pvalue(n_eff: f64, statistic: f64) -> f64 {
    // Finite-sample effective rescaling of the statistic before applying the
    // asymptotic tail sum.
    let lambda = statistic * (n_eff.sqrt() + 0.12 + 0.11 / n_eff.sqrt());
    kolmogorov_tail(lambda)
}

/// Tail of the Kolmogorov distribution: `2 Σ_{k≥1} (−1)^{k−1} e^{−2k²λ²}`.
fn kolmogorov_tail(lambda: f64) -> f64 {
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0f64;
    for k in 1..=100u32 {
        let term = (-2.0 * (k as f64 * lambda).powi(2)).exp();
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        if term < 1e-18 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// One-sample Kolmogorov–Smirnov test packaged as a [`TestRecord`].
///
/// # Errors
///
/// Returns [`ExcursionError::EmptySample`] on an empty sample.
pub fn ks_test<F: Fn(f64) -> f64>(
    name: &str,
    sample: &[f64],
    cdf: F,
    seed: u64,
) -> Result<TestRecord, ExcursionError> {
    let d = ks_statistic(sample, cdf)?;
    Ok(TestRecord {
        test: name.to_owned(),
        statistic: d,
        pvalue: ks_pvalue(sample.len() as f64, d),
        n: sample.len(),
        seed,
    })
}

/// Two-sample Kolmogorov–Smirnov statistic and asymptotic p-value.
///
/// # Errors
///
/// Returns [`ExcursionError::EmptySample`] when either sample is empty.
pub fn two_sample_ks(a: &[f64], b: &[f64]) -> Result<(f64, f64), ExcursionError> {
    if a.is_empty() || b.is_empty() {
        return Err(ExcursionError::EmptySample);
    }
    let mut xs = a.to_vec();
    xs.sort_by(f64::total_cmp);
    let mut ys = b.to_vec();
    ys.sort_by(f64::total_cmp);
    let (n, m) = (xs.len(), ys.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < n && j < m {
        let x = xs[i].min(ys[j]);
        while i < n && xs[i] <= x {
            i += 1;
        }
        while j < m && ys[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let n_eff = (n as f64 * m as f64) / (n as f64 + m as f64);
    Ok((d, ks_pvalue(n_eff, d)))
}

/// Two-sample Kolmogorov–Smirnov test packaged as a [`TestRecord`]; `n`
/// records the rounded effective sample size.
///
/// # Errors
///
/// Returns [`ExcursionError::EmptySample`] when either sample is empty.
pub fn two_sample_ks_test(
    name: &str,
    a: &[f64],
    b: &[f64],
    seed: u64,
) -> Result<TestRecord, ExcursionError> {
    let (d, p) = two_sample_ks(a, b)?;
    let n_eff = (a.len() as f64 * b.len() as f64) / (a.len() as f64 + b.len() as f64);
    Ok(TestRecord {
        test: name.to_owned(),
        statistic: d,
        pvalue: p,
        n: n_eff.round() as usize,
        seed,
    })
}

/// Chi-square statistic and asymptotic p-value of observed cell counts
/// against expected cell counts, with `cells − 1` degrees of freedom.
///
/// # Errors
///
/// Returns [`ExcursionError::EmptySample`] when the cell lists are empty.
///
/// # Panics
///
/// Panics when the lists have different lengths or an expected count is not
/// positive.
pub fn chi_square(observed: &[f64], expected: &[f64]) -> Result<(f64, f64), ExcursionError> {
    if observed.is_empty() || expected.is_empty() {
        return Err(ExcursionError::EmptySample);
    }
    assert_eq!(
        observed.len(),
        expected.len(),
        "observed and expected cell counts must align"
    );
    assert!(
        expected.iter().all(|&e| e > 0.0),
        "expected cell counts must be positive"
    );
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| (o - e) * (o - e) / e)
        .sum();
    let df = (observed.len() - 1) as f64;
    let p = if df == 0.0 || stat == 0.0 {
        1.0
    } else {
        statrs::function::gamma::gamma_ur(df / 2.0, stat / 2.0)
    };
    Ok((stat, p))
}

/// Chi-square test packaged as a [`TestRecord`]; `n` records the total
/// observed count.
///
/// # Errors
///
/// Returns [`ExcursionError::EmptySample`] when the cell lists are empty.
pub fn chi_square_test(
    name: &str,
    observed: &[f64],
    expected: &[f64],
    seed: u64,
) -> Result<TestRecord, ExcursionError> {
    let (stat, p) = chi_square(observed, expected)?;
    Ok(TestRecord {
        test: name.to_owned(),
        statistic: stat,
        pvalue: p,
        n: observed.iter().sum::<f64>().round() as usize,
        seed,
    })
}
