//! Check reports: every experiment in this crate produces a named, seeded,
//! fully reproducible [`CheckReport`] whose pass decision follows fixed,
//! pre-registered thresholds.

use serde::{Deserialize, Serialize};

/// Distributional components pass when their p-value exceeds this.
pub const PVALUE_THRESHOLD: f64 = 0.01;

/// Moment components pass when their standardized error is at most this
/// many standard errors.
pub const ZSCORE_THRESHOLD: f64 = 3.0;

/// The kind of statistic a report component carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatisticKind {
    /// One-sample Kolmogorov–Smirnov; the value is a p-value.
    Ks,
    /// Two-sample Kolmogorov–Smirnov; the value is a p-value.
    TwoSampleKs,
    /// Chi-square over cells; the value is a p-value.
    ChiSquare,
    /// Standardized distance of an estimate from its target; the value is
    /// `|estimate − target| / SE` (or an absolute error when the threshold
    /// is zero, for identities that must hold exactly).
    MeanVsTarget,
}

impl StatisticKind {
    /// Whether larger values are better (p-value kinds) or worse
    /// (standardized-error kind).
    fn larger_is_better(self) -> bool {
        !matches!(self, Self::MeanVsTarget)
    }
}

/// One statistic inside a report, with its own pass decision.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Component {
    /// What this component measures.
    pub label: String,
    /// The statistic kind, fixing the pass rule.
    pub kind: StatisticKind,
    /// The observed value (a p-value or a standardized error).
    pub value: f64,
    /// The fixed threshold the value is compared against.
    pub threshold: f64,
    /// Whether the value is on the passing side of the threshold.
    pub pass: bool,
}

impl Component {
    /// A p-value component: passes when `pvalue` exceeds
    /// [`PVALUE_THRESHOLD`].
    pub fn from_pvalue(label: impl Into<String>, kind: StatisticKind, pvalue: f64) -> Self {
        assert!(kind.larger_is_better(), "p-value components need a p-value kind");
        Self {
            label: label.into(),
            kind,
            value: pvalue,
            threshold: PVALUE_THRESHOLD,
            pass: pvalue > PVALUE_THRESHOLD,
        }
    }

    /// A standardized-error component: passes when `value ≤ threshold`.
    /// Use threshold [`ZSCORE_THRESHOLD`] for Monte Carlo moments and `0.0`
    /// for identities that must hold exactly.
    pub fn from_error(label: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            label: label.into(),
            kind: StatisticKind::MeanVsTarget,
            value,
            threshold,
            pass: value <= threshold,
        }
    }

    /// Signed distance to the pass boundary; negative means failing.
    fn margin(&self) -> f64 {
        if self.kind.larger_is_better() {
            self.value - self.threshold
        } else {
            self.threshold - self.value
        }
    }
}

/// The parameters that, together with the check name, determine a report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckParameters {
    /// Offspring law (when the check samples trees).
    pub law: Option<String>,
    /// The size parameter: vertex count, leaf index, or height anchor.
    pub size: Option<u64>,
    /// Number of Monte Carlo replicates per sample.
    pub replicates: u64,
    /// Grid step of the continuous-path side, when one is simulated.
    pub grid: Option<f64>,
    /// Seed; replicate `k` of sub-sample `t` draws from the stream
    /// `(t << 48) | k` of this seed.
    pub seed: u64,
}

impl CheckParameters {
    /// Parameters with no law, size, or grid recorded.
    pub fn new(seed: u64, replicates: usize) -> Self {
        Self {
            law: None,
            size: None,
            replicates: replicates as u64,
            grid: None,
            seed,
        }
    }

    /// Records the offspring law.
    #[must_use]
    pub fn with_law(mut self, law: impl ToString) -> Self {
        self.law = Some(law.to_string());
        self
    }

    /// Records the size parameter.
    #[must_use]
    pub fn with_size(mut self, size: usize) -> Self {
        self.size = Some(size as u64);
        self
    }

    /// Records the grid step.
    #[must_use]
    pub fn with_grid(mut self, dt: f64) -> Self {
        self.grid = Some(dt);
        self
    }
}

/// Outcome of one named, seeded experiment.
///
/// The report is fully determined by `(name, parameters)` — every random
/// draw comes from streams derived from `parameters.seed` — and passes
/// exactly when every component passes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    /// The experiment's name.
    pub name: String,
    /// The parameters that produced it.
    pub parameters: CheckParameters,
    /// The individual statistics, each with its own pass decision.
    pub components: Vec<Component>,
    /// Conjunction of the component pass flags.
    pub pass: bool,
}

impl CheckReport {
    /// Assembles a report; `pass` is the conjunction of component passes
    /// (an empty component list fails).
    pub fn new(
        name: impl Into<String>,
        parameters: CheckParameters,
        components: Vec<Component>,
    ) -> Self {
        let pass = !components.is_empty() && components.iter().all(|c| c.pass);
        Self {
            name: name.into(),
            parameters,
            components,
            pass,
        }
    }

    /// The component closest to (or furthest past) its pass boundary.
    ///
    /// # Panics
    ///
    /// Panics on a report with no components.
    pub fn worst(&self) -> &Component {
        self.components
            .iter()
            .min_by(|a, b| a.margin().total_cmp(&b.margin()))
            .expect("reports have at least one component")
    }

    /// The worst component's statistic kind.
    pub fn statistic(&self) -> StatisticKind {
        self.worst().kind
    }

    /// The worst component's value.
    pub fn value(&self) -> f64 {
        self.worst().value
    }

    /// The worst component's threshold.
    pub fn threshold(&self) -> f64 {
        self.worst().threshold
    }

    /// Single-line JSON rendering.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }

    /// One human-readable line: pass flag, name, and the worst component.
    pub fn summary_line(&self) -> String {
        let w = self.worst();
        format!(
            "[{}] {}: {} = {:.6} (threshold {})",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            w.label,
            w.value,
            w.threshold,
        )
    }
}
