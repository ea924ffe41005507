//! Gromov-Hausdorff distances between rooted metric spaces: an upper
//! bound from coding functions, and an exact brute-force value for small
//! point sets.

use excursion_lab::PathGrid;

use crate::error::TreeMetricError;
use crate::finite::FiniteRootedMetric;

/// Largest point count accepted by [`gh_exact`] on either side.
pub const GH_EXACT_MAX_POINTS: usize = 7;

/// Upper bound `2 · sup |g - g'|` on the rooted Gromov-Hausdorff distance
/// between the trees coded by two paths on a common grid.
///
/// Both grids must share the same step and length (the supremum of the
/// difference of two piecewise-linear functions with common breakpoints is
/// attained at a breakpoint, so node values suffice).
pub fn gh_upper_bound(g: &PathGrid, h: &PathGrid) -> Result<f64, TreeMetricError> {
    if g.dt() != h.dt() || g.values().len() != h.values().len() {
        return Err(TreeMetricError::MismatchedGrids {
            dt_a: g.dt(),
            dt_b: h.dt(),
            len_a: g.values().len(),
            len_b: h.values().len(),
        });
    }
    let sup = g
        .values()
        .iter()
        .zip(h.values())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(2.0 * sup)
}

/// Exact rooted Gromov-Hausdorff distance between two finite rooted
/// metric spaces, by exhaustive search over correspondences.
///
/// The distance is `½ · min dis(R)` over relations `R` that contain the
/// root pair and cover both point sets, where
/// `dis(R) = max |d_A(x, x') - d_B(y, y')|` over pairs in `R`. Every such
/// relation contains the union of two assignment maps `A → B` and
/// `B → A` (each sending root to root), and a sub-relation never has
/// larger distortion, so the search ranges exactly over those unions,
/// depth-first with branch-and-bound pruning.
///
/// Returns [`TreeMetricError::TooLarge`] when either space has more than
/// [`GH_EXACT_MAX_POINTS`] points.
pub fn gh_exact(a: &FiniteRootedMetric, b: &FiniteRootedMetric) -> Result<f64, TreeMetricError> {
    let n = a.len();
    let m = b.len();
    if n > GH_EXACT_MAX_POINTS || m > GH_EXACT_MAX_POINTS {
        return Err(TreeMetricError::TooLarge {
            got: n.max(m),
            max: GH_EXACT_MAX_POINTS,
        });
    }

    // Local copies with the root moved to index 0 on both sides.
    let reorder = |metric: &FiniteRootedMetric| -> Vec<Vec<f64>> {
        let k = metric.len();
        let mut order: Vec<usize> = (0..k).collect();
        order.swap(0, metric.root());
        order
            .iter()
            .map(|&i| order.iter().map(|&j| metric.distance(i, j)).collect())
            .collect()
    };
    let da = reorder(a);
    let db = reorder(b);

    // Try candidate partners with matching root distances first, so the
    // first full assignment found is already close to optimal and the
    // bound prunes hard.
    let candidates = |rows: &[Vec<f64>], other: &[Vec<f64>]| -> Vec<Vec<usize>> {
        rows.iter()
            .map(|row| {
                let mut cand: Vec<usize> = (0..other.len()).collect();
                cand.sort_by(|&x, &y| {
                    let dx = (row[0] - other[x][0]).abs();
                    let dy = (row[0] - other[y][0]).abs();
                    dx.total_cmp(&dy)
                });
                cand
            })
            .collect()
    };
    let cand_a = candidates(&da, &db);
    let cand_b = candidates(&db, &da);

    let mut search = Search {
        da: &da,
        db: &db,
        cand_a: &cand_a,
        cand_b: &cand_b,
        fa: vec![0; n],
        gb: vec![0; m],
        best: f64::INFINITY,
    };
    search.assign_forward(1, 0.0);
    Ok(search.best / 2.0)
}

struct Search<'s> {
    da: &'s [Vec<f64>],
    db: &'s [Vec<f64>],
    cand_a: &'s [Vec<usize>],
    cand_b: &'s [Vec<usize>],
    /// Assignment A -> B under construction (index 0 pinned to 0).
    fa: Vec<usize>,
    /// Assignment B -> A under construction (index 0 pinned to 0).
    gb: Vec<usize>,
    best: f64,
}

impl Search<'_> {
    fn assign_forward(&mut self, i: usize, current: f64) {
        if current >= self.best {
            return;
        }
        if i == self.da.len() {
            self.assign_backward(1, current);
            return;
        }
        for idx in 0..self.db.len() {
            let b = self.cand_a[i][idx];
            let mut c = current;
            for k in 0..i {
                c = c.max((self.da[i][k] - self.db[b][self.fa[k]]).abs());
                if c >= self.best {
                    break;
                }
            }
            if c < self.best {
                self.fa[i] = b;
                self.assign_forward(i + 1, c);
            }
        }
    }

    fn assign_backward(&mut self, j: usize, current: f64) {
        if current >= self.best {
            return;
        }
        if j == self.db.len() {
            self.best = current;
            return;
        }
        for idx in 0..self.da.len() {
            let a = self.cand_b[j][idx];
            let mut c = current;
            for (k, &fk) in self.fa.iter().enumerate() {
                c = c.max((self.da[a][k] - self.db[j][fk]).abs());
                if c >= self.best {
                    break;
                }
            }
            if c < self.best {
                for l in 0..j {
                    c = c.max((self.da[a][self.gb[l]] - self.db[j][l]).abs());
                    if c >= self.best {
                        break;
                    }
                }
            }
            if c < self.best {
                self.gb[j] = a;
                self.assign_backward(j + 1, c);
            }
        }
    }
}
