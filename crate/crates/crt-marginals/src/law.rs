//! Descriptor type tying a leaf count to one of the marginal-law
//! normalizations, with a single dispatching density evaluation.

use std::fmt;

use real_tree::MarkedTree;

use crate::density::{aldous_density, density_ito_joint, density_normalized};
use crate::error::CrtError;

/// Which normalization of the spanned-subtree law a density refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Sigma-finite excursion measure, duration integrated out: the
    /// constant weight `2^(p-1)` on binary shapes.
    Ito,
    /// Sigma-finite excursion measure jointly with the duration.
    ItoJointDuration,
    /// Normalized (unit-duration) excursion.
    Normalized,
    /// Doubled-excursion scaling on labelled shapes.
    Aldous,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Normalization::Ito => "ito",
            Normalization::ItoJointDuration => "ito-joint-duration",
            Normalization::Normalized => "normalized",
            Normalization::Aldous => "aldous",
        };
        f.write_str(name)
    }
}

/// A marginal law: the subtree of the excursion-coded tree spanned by `p`
/// sampled leaves, under the chosen normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarginalLaw {
    p: usize,
    normalization: Normalization,
}

impl MarginalLaw {
    pub fn new(p: usize, normalization: Normalization) -> Result<Self, CrtError> {
        let min = match normalization {
            Normalization::Aldous => 2,
            _ => 1,
        };
        if p < min {
            return Err(CrtError::InvalidLeafCount { got: p, min });
        }
        Ok(Self { p, normalization })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Evaluates the law's density at a marked tree. The joint-duration
    /// normalization needs `duration`; the others ignore it.
    pub fn density(&self, theta: &MarkedTree, duration: Option<f64>) -> Result<f64, CrtError> {
        let got = theta.leaves().len();
        if got != self.p {
            return Err(CrtError::LeafCountMismatch {
                expected: self.p,
                got,
            });
        }
        match self.normalization {
            Normalization::Ito => {
                if !theta.skeleton().is_binary() {
                    return Err(CrtError::NonBinarySkeleton);
                }
                Ok(2f64.powi(self.p as i32 - 1))
            }
            Normalization::ItoJointDuration => {
                let s = duration.ok_or(CrtError::MissingDuration)?;
                density_ito_joint(theta, s)
            }
            Normalization::Normalized => density_normalized(theta),
            Normalization::Aldous => aldous_density(self.p, theta.total_length()),
        }
    }
}
