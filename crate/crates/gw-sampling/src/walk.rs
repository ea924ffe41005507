use rand::Rng;

use tree_codings::{heights_from_walk, tree_from_lukasiewicz, LukasiewiczPath, OrderedTree};

use crate::error::GwError;
use crate::law::OffspringLaw;

/// A downward-skip-free walk: integer values starting at 0 with all
/// increments at least -1. Jumps are distributed as ν(j) = μ(j + 1) when
/// the walk is coupled to an offspring law μ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkPath {
    values: Vec<i64>,
}

impl WalkPath {
    /// Validates a raw value sequence as a downward-skip-free walk from 0.
    ///
    /// # Errors
    ///
    /// Returns [`GwError::InvalidWalk`] when the sequence is empty, does not
    /// start at 0, or makes a downward step larger than 1.
    pub fn new(values: Vec<i64>) -> Result<Self, GwError> {
        if values.is_empty() {
            return Err(GwError::InvalidWalk {
                reason: "walk is empty".to_owned(),
            });
        }
        if values[0] != 0 {
            return Err(GwError::InvalidWalk {
                reason: format!("walk starts at {}, expected 0", values[0]),
            });
        }
        for (n, w) in values.windows(2).enumerate() {
            if w[1] - w[0] < -1 {
                return Err(GwError::InvalidWalk {
                    reason: format!(
                        "downward step of {} at index {n}, steps are at least -1",
                        w[1] - w[0]
                    ),
                });
            }
        }
        Ok(Self { values })
    }

    /// The walk values S₀, …, S_T.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Number of increments (one per explored vertex).
    pub fn step_count(&self) -> usize {
        self.values.len() - 1
    }

    /// Running minimum I_n = min(S₀, …, S_n).
    pub fn running_min(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.values.len());
        let mut min = i64::MAX;
        for &v in &self.values {
            min = min.min(v);
            out.push(min);
        }
        out
    }

    /// Running maximum M_n = max(S₀, …, S_n).
    pub fn running_max(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.values.len());
        let mut max = i64::MIN;
        for &v in &self.values {
            max = max.max(v);
            out.push(max);
        }
        out
    }

    /// First index at which the walk equals `level`, if any.
    pub fn first_passage(&self, level: i64) -> Option<usize> {
        self.values.iter().position(|&v| v == level)
    }
}

/// A sampled forest exploration: the coupled walk, the height of each
/// explored vertex, and the 1-based index of the tree containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestHeightProcess {
    /// Height of vertex n within its own tree, for n = 0, …, nsteps - 1.
    pub heights: Vec<u64>,
    /// The coupled walk S₀, …, S_nsteps.
    pub walk: WalkPath,
    /// Λ_n = 1 - I_n: which tree vertex n belongs to, for n = 0, …,
    /// nsteps - 1.
    pub tree_index: Vec<u64>,
}

/// Explores a forest of independent trees for exactly `nsteps` vertices.
///
/// The walk takes `nsteps` independent ν-jumps; the height process is read
/// off the walk by counting the indices j < n at which the walk equals its
/// running minimum over j..=n, which reproduces each tree's height sequence
/// exactly.
///
/// # Errors
///
/// Returns [`GwError::InvalidLaw`] when the law is not critical.
pub fn forest_height_process<R: Rng + ?Sized>(
    law: &OffspringLaw,
    nsteps: usize,
    rng: &mut R,
) -> Result<ForestHeightProcess, GwError> {
    require_critical(law, "forest_height_process")?;
    let mut values = Vec::with_capacity(nsteps + 1);
    values.push(0i64);
    for _ in 0..nsteps {
        let jump = law.sample_offspring(rng) as i64 - 1;
        values.push(values.last().unwrap() + jump);
    }
    let mut heights = heights_from_walk(&values).expect("sampled walks are downward skip-free");
    heights.truncate(nsteps);
    let mut tree_index = Vec::with_capacity(nsteps);
    let mut min = 0i64;
    for &v in &values[..nsteps] {
        min = min.min(v);
        tree_index.push((1 - min) as u64);
    }
    Ok(ForestHeightProcess {
        heights,
        walk: WalkPath { values },
        tree_index,
    })
}

/// Splits a walk into the trees it explores.
///
/// Each fresh running minimum closes one tree. Returns the complete trees
/// and the index of the first vertex of the incomplete trailing tree (equal
/// to the number of vertices in complete trees; when the walk ends exactly
/// at a fresh minimum there is no trailing tree and the index equals
/// `walk.step_count()`).
pub fn decode_forest(walk: &WalkPath) -> (Vec<OrderedTree>, usize) {
    let s = walk.values();
    let mut trees = Vec::new();
    let mut start = 0usize;
    let mut min = 0i64;
    for (n, &v) in s.iter().enumerate().skip(1) {
        if v < min {
            min = v;
            let rebased: Vec<i64> = s[start..=n].iter().map(|x| x - s[start]).collect();
            let path = LukasiewiczPath::new(rebased)
                .expect("the segment between fresh minima is a valid excursion");
            trees.push(tree_from_lukasiewicz(&path));
            start = n;
        }
    }
    (trees, start)
}

/// Increments of the walk at its weak ascending-ladder epochs.
///
/// An epoch is any time at which the walk equals its running maximum; the
/// recorded values S at consecutive epochs have independent, identically
/// distributed differences with P[difference = k] = ν([k, ∞)) for k ≥ 0 and
/// mean σ²/2. Runs a fresh walk of `nsteps` jumps and returns the observed
/// differences.
///
/// # Errors
///
/// Returns [`GwError::InvalidLaw`] when the law is not critical.
pub fn ladder_statistics<R: Rng + ?Sized>(
    law: &OffspringLaw,
    nsteps: usize,
    rng: &mut R,
) -> Result<Vec<i64>, GwError> {
    require_critical(law, "ladder_statistics")?;
    let mut increments = Vec::new();
    let mut value = 0i64;
    let mut prev_record = 0i64;
    for _ in 0..nsteps {
        value += law.sample_offspring(rng) as i64 - 1;
        if value >= prev_record {
            increments.push(value - prev_record);
            prev_record = value;
        }
    }
    Ok(increments)
}

pub(crate) fn require_critical(law: &OffspringLaw, what: &str) -> Result<(), GwError> {
    if law.is_critical() {
        Ok(())
    } else {
        Err(GwError::InvalidLaw {
            reason: format!("{what} requires a critical law, got mean {}", law.mean()),
        })
    }
}
