use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::GwError;

/// Tolerance for "sums to one" and "mean equals one" checks on mass tables.
const MASS_TOLERANCE: f64 = 1e-12;

/// A critical or subcritical offspring distribution on {0, 1, 2, …} with
/// μ(1) < 1.
///
/// Three parametric laws cover the classical cases, with their moments
/// stored exactly; arbitrary finite mass tables are validated on
/// construction. The textual form accepted by [`FromStr`] is `geometric`,
/// `poisson`, `binary`, or `table:0.2,0.5,0.3`.
#[derive(Clone, Debug, PartialEq)]
pub enum OffspringLaw {
    /// μ(k) = 2^{-k-1}. Critical with variance 2.
    Geometric,
    /// μ(k) = e^{-1} / k!. Critical with variance 1.
    Poisson,
    /// μ(0) = μ(2) = 1/2. Critical with variance 1.
    Binary,
    /// Explicit finite mass table μ(0), …, μ(K).
    Table {
        /// The mass values; validated to sum to 1.
        pmf: Vec<f64>,
        /// Σ k μ(k), validated to be at most 1.
        mean: f64,
        /// Σ k² μ(k) − mean².
        sigma2: f64,
    },
}

impl OffspringLaw {
    /// Validates an explicit mass table: entries must be finite and
    /// nonnegative, sum to 1 within `1e-12`, have mean at most 1 (within
    /// the same tolerance), and give μ(1) < 1.
    ///
    /// # Errors
    ///
    /// Returns [`GwError::InvalidLaw`] describing the violated constraint.
    pub fn table(pmf: Vec<f64>) -> Result<Self, GwError> {
        let invalid = |reason: String| Err(GwError::InvalidLaw { reason });
        if pmf.is_empty() {
            return invalid("mass table is empty".to_owned());
        }
        for (k, &p) in pmf.iter().enumerate() {
            if !p.is_finite() || p < 0.0 {
                return invalid(format!("mass {p} at {k} is not a finite nonnegative value"));
            }
        }
        let total: f64 = pmf.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return invalid(format!("masses sum to {total}, expected 1"));
        }
        let mean: f64 = pmf.iter().enumerate().map(|(k, &p)| k as f64 * p).sum();
        if mean > 1.0 + MASS_TOLERANCE {
            return invalid(format!(
                "mean offspring number {mean} exceeds 1; only critical or subcritical laws are supported"
            ));
        }
        if pmf.len() > 1 && pmf[1] >= 1.0 - MASS_TOLERANCE {
            return invalid("the law concentrated on one child is degenerate".to_owned());
        }
        let second: f64 = pmf
            .iter()
            .enumerate()
            .map(|(k, &p)| (k as f64) * (k as f64) * p)
            .sum();
        let sigma2 = second - mean * mean;
        Ok(Self::Table { pmf, mean, sigma2 })
    }

    /// μ(k).
    pub fn pmf(&self, k: usize) -> f64 {
        match self {
            Self::Geometric => 0.5f64.powi(k as i32 + 1),
            Self::Poisson => {
                let mut value = (-1.0f64).exp();
                for j in 1..=k {
                    value /= j as f64;
                }
                value
            }
            Self::Binary => {
                if k == 0 || k == 2 {
                    0.5
                } else {
                    0.0
                }
            }
            Self::Table { pmf, .. } => pmf.get(k).copied().unwrap_or(0.0),
        }
    }

    /// The jump law of the coupled walk: ν(j) = μ(j + 1) for j ≥ -1.
    pub fn jump_pmf(&self, j: i64) -> f64 {
        if j < -1 {
            0.0
        } else {
            self.pmf((j + 1) as usize)
        }
    }

    /// Mean offspring number Σ k μ(k).
    pub fn mean(&self) -> f64 {
        match self {
            Self::Geometric | Self::Poisson | Self::Binary => 1.0,
            Self::Table { mean, .. } => *mean,
        }
    }

    /// Offspring variance σ².
    pub fn sigma2(&self) -> f64 {
        match self {
            Self::Geometric => 2.0,
            Self::Poisson | Self::Binary => 1.0,
            Self::Table { sigma2, .. } => *sigma2,
        }
    }

    /// Whether the law is critical (mean exactly 1, within `1e-12` for
    /// tables).
    pub fn is_critical(&self) -> bool {
        (self.mean() - 1.0).abs() <= MASS_TOLERANCE
    }

    /// The generating function f(s) = Σ μ(k) s^k, evaluated in closed form
    /// for the parametric laws and by Horner's rule for tables.
    pub fn gf(&self, s: f64) -> f64 {
        match self {
            Self::Geometric => 1.0 / (2.0 - s),
            Self::Poisson => (s - 1.0).exp(),
            Self::Binary => 0.5 * (1.0 + s * s),
            Self::Table { pmf, .. } => pmf.iter().rev().fold(0.0, |acc, &p| acc * s + p),
        }
    }

    /// The positive part of the support when it is finite, `None` for the
    /// laws whose support contains every positive integer.
    pub(crate) fn finite_positive_support(&self) -> Option<Vec<usize>> {
        match self {
            Self::Geometric | Self::Poisson => None,
            Self::Binary => Some(vec![2]),
            Self::Table { pmf, .. } => Some(
                pmf.iter()
                    .enumerate()
                    .skip(1)
                    .filter(|(_, &p)| p > 0.0)
                    .map(|(k, _)| k)
                    .collect(),
            ),
        }
    }

    /// Draws one offspring count.
    pub fn sample_offspring<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        match self {
            Self::Geometric => {
                // Count leading successes of fair coin flips, 64 at a time;
                // exact: P(k) = 2^{-k-1}.
                let mut k = 0usize;
                loop {
                    let t = rng.next_u64().trailing_ones() as usize;
                    k += t;
                    if t < 64 {
                        return k;
                    }
                }
            }
            Self::Poisson => {
                // Sequential inversion; at unit rate the loop is short.
                let u: f64 = rng.random();
                let mut k = 0usize;
                let mut p = (-1.0f64).exp();
                let mut cum = p;
                while u > cum {
                    k += 1;
                    p /= k as f64;
                    if p == 0.0 {
                        return k;
                    }
                    cum += p;
                }
                k
            }
            Self::Binary => {
                if rng.random::<bool>() {
                    2
                } else {
                    0
                }
            }
            Self::Table { pmf, .. } => {
                let mut u: f64 = rng.random();
                let mut last_positive = 0;
                for (k, &p) in pmf.iter().enumerate() {
                    if p > 0.0 {
                        if u < p {
                            return k;
                        }
                        last_positive = k;
                    }
                    u -= p;
                }
                // Round-off leftover: attribute it to the last atom.
                last_positive
            }
        }
    }
}

impl fmt::Display for OffspringLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Geometric => f.write_str("geometric"),
            Self::Poisson => f.write_str("poisson"),
            Self::Binary => f.write_str("binary"),
            Self::Table { pmf, .. } => {
                f.write_str("table:")?;
                let rendered: Vec<String> = pmf.iter().map(|p| p.to_string()).collect();
                f.write_str(&rendered.join(","))
            }
        }
    }
}

impl FromStr for OffspringLaw {
    type Err = GwError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "geometric" => Ok(Self::Geometric),
            "poisson" => Ok(Self::Poisson),
            "binary" => Ok(Self::Binary),
            other => {
                if let Some(rest) = other.strip_prefix("table:") {
                    let mut pmf = Vec::new();
                    for token in rest.split(',') {
                        let p: f64 = token.trim().parse().map_err(|_| GwError::InvalidLaw {
                            reason: format!("`{token}` is not a probability"),
                        })?;
                        pmf.push(p);
                    }
                    Self::table(pmf)
                } else {
                    Err(GwError::InvalidLaw {
                        reason: format!(
                            "unknown law `{other}`; expected geometric, poisson, binary, or table:p0,p1,…"
                        ),
                    })
                }
            }
        }
    }
}
