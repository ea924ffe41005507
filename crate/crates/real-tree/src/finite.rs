//! Finite rooted metric spaces given by explicit distance matrices.

use std::io::Write;

use crate::error::TreeMetricError;
use crate::marked::MarkedTree;

/// A finite metric space with a distinguished root point, stored as a full
/// distance matrix.
///
/// Construction validates the matrix: square, zero diagonal, symmetric,
/// nonnegative and finite, and satisfying the triangle inequality up to a
/// relative tolerance of `1e-9` (matrices assembled from floating-point
/// sums can miss exact inequalities by rounding).
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteRootedMetric {
    matrix: Vec<Vec<f64>>,
    root: usize,
}

impl FiniteRootedMetric {
    pub fn new(matrix: Vec<Vec<f64>>, root: usize) -> Result<Self, TreeMetricError> {
        let n = matrix.len();
        if n == 0 {
            return Err(TreeMetricError::InvalidMetric {
                reason: "empty matrix".into(),
            });
        }
        if root >= n {
            return Err(TreeMetricError::InvalidMetric {
                reason: format!("root index {root} out of bounds for {n} points"),
            });
        }
        let mut scale: f64 = 0.0;
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(TreeMetricError::InvalidMetric {
                    reason: format!("row {i} has {} entries, expected {n}", row.len()),
                });
            }
            for (j, &d) in row.iter().enumerate() {
                if !d.is_finite() || d < 0.0 {
                    return Err(TreeMetricError::InvalidMetric {
                        reason: format!("entry ({i}, {j}) = {d} is negative or not finite"),
                    });
                }
                if i == j && d != 0.0 {
                    return Err(TreeMetricError::InvalidMetric {
                        reason: format!("diagonal entry ({i}, {i}) = {d} is nonzero"),
                    });
                }
                if matrix[j][i] != d {
                    return Err(TreeMetricError::InvalidMetric {
                        reason: format!("asymmetric entries at ({i}, {j})"),
                    });
                }
                scale = scale.max(d);
            }
        }
        let tol = 1e-9 * (1.0 + scale);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if matrix[i][j] > matrix[i][k] + matrix[k][j] + tol {
                        return Err(TreeMetricError::InvalidMetric {
                            reason: format!("triangle inequality fails at ({i}, {j}, {k})"),
                        });
                    }
                }
            }
        }
        Ok(Self { matrix, root })
    }

    pub fn len(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.matrix
    }

    /// Checks the four-point condition within an absolute tolerance `tol`:
    /// for every quadruple, the largest of the three pairing sums exceeds
    /// the middle one by at most `tol`. With `tol = 0` this characterizes
    /// metrics that embed in a real tree.
    pub fn is_four_point(&self, tol: f64) -> bool {
        let n = self.len();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    for e in c..n {
                        let mut sums = [
                            self.matrix[a][b] + self.matrix[c][e],
                            self.matrix[a][c] + self.matrix[b][e],
                            self.matrix[a][e] + self.matrix[b][c],
                        ];
                        sums.sort_by(f64::total_cmp);
                        if sums[2] - sums[1] > tol {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Writes the matrix as CSV: a header `p0,p1,...` then one row per
    /// point. Floats print in shortest round-trip form.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let header: Vec<String> = (0..self.len()).map(|i| format!("p{i}")).collect();
        writeln!(out, "{}", header.join(","))?;
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(|d| format!("{d}")).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// Metric realization of a marked tree on the point set
/// `{root point} ∪ {top of each vertex segment}`.
///
/// Point `0` is the root point; point `v + 1` is the top of vertex `v`'s
/// segment (vertices in depth-first order). Distances sum the marks along
/// the connecting path.
pub fn metric_from_marked_tree(theta: &MarkedTree) -> FiniteRootedMetric {
    let v = theta.vertex_count();
    let levels = theta.vertex_levels();
    let mut matrix = vec![vec![0.0; v + 1]; v + 1];
    for (u, &lu) in levels.iter().enumerate() {
        matrix[0][u + 1] = lu;
        matrix[u + 1][0] = lu;
        for w in 0..u {
            let d = theta.vertex_distance(u, w);
            matrix[u + 1][w + 1] = d;
            matrix[w + 1][u + 1] = d;
        }
    }
    FiniteRootedMetric::new(matrix, 0)
        .expect("path-sum distances on a marked tree always form a metric")
}
