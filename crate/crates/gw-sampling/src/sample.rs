use rand::Rng;

use tree_codings::OrderedTree;

use crate::error::GwError;
use crate::law::OffspringLaw;
use crate::walk::require_critical;

/// Default per-tree vertex budget. Critical laws have heavy-tailed tree
/// sizes, so a cap is always enforced; larger caps are opt-in.
pub const DEFAULT_VERTEX_CAP: usize = 10_000_000;

/// Default attempt budget for rejection loops.
pub const DEFAULT_ATTEMPT_CAP: usize = 1_000_000;

/// Samples one tree of the branching process: every vertex independently
/// receives a μ-distributed number of children. Uses
/// [`DEFAULT_VERTEX_CAP`].
///
/// # Errors
///
/// Returns [`GwError::BudgetExceeded`] if the tree grows past the vertex
/// cap; with a critical law this happens with probability on the order of
/// `cap^{-1/2}` and signals the expected heavy tail, not a bug.
pub fn sample_gw<R: Rng + ?Sized>(
    law: &OffspringLaw,
    rng: &mut R,
) -> Result<OrderedTree, GwError> {
    sample_gw_capped(law, DEFAULT_VERTEX_CAP, rng)
}

/// [`sample_gw`] with an explicit vertex cap.
///
/// Children counts are drawn in depth-first order; the tree is complete
/// when the number of still-open vertices (one plus the coupled walk)
/// reaches zero.
///
/// # Errors
///
/// Returns [`GwError::BudgetExceeded`] if the tree grows past `vertex_cap`.
pub fn sample_gw_capped<R: Rng + ?Sized>(
    law: &OffspringLaw,
    vertex_cap: usize,
    rng: &mut R,
) -> Result<OrderedTree, GwError> {
    let mut counts = Vec::new();
    let mut open: u64 = 1;
    while open > 0 {
        if counts.len() >= vertex_cap {
            return Err(GwError::BudgetExceeded { cap: vertex_cap });
        }
        let k = law.sample_offspring(rng);
        counts.push(k);
        open = open - 1 + k as u64;
    }
    Ok(OrderedTree::from_counts(counts).expect("a stopped walk exploration yields valid counts"))
}

/// Whether a tree with exactly `n` vertices has positive probability.
///
/// `n - 1` children must be distributed among at most `n` vertices, so the
/// condition is that `n - 1` is a sum of positive support values (zeros
/// fill the rest; every valid law has positive mass at zero). Laws whose
/// support contains 1 admit every `n ≥ 1`; finite supports are checked by
/// an exact reachability table rather than a gcd test, which would miss
/// small non-representable sizes.
pub fn size_is_supported(law: &OffspringLaw, n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let target = n - 1;
    match law.finite_positive_support() {
        None => true,
        Some(gens) => {
            if gens.contains(&1) {
                return true;
            }
            let mut reachable = vec![false; target + 1];
            reachable[0] = true;
            for &g in &gens {
                for v in g..=target {
                    if reachable[v - g] {
                        reachable[v] = true;
                    }
                }
            }
            reachable[target]
        }
    }
}

/// Samples a tree conditioned to have exactly `n` vertices, exactly. Uses
/// [`DEFAULT_ATTEMPT_CAP`].
///
/// # Errors
///
/// See [`sample_conditioned_size_with_budget`].
pub fn sample_conditioned_size<R: Rng + ?Sized>(
    law: &OffspringLaw,
    n: usize,
    rng: &mut R,
) -> Result<OrderedTree, GwError> {
    sample_conditioned_size_with_budget(law, n, DEFAULT_ATTEMPT_CAP, rng)
}

/// Samples a tree conditioned to have exactly `n` vertices.
///
/// Draws `n` independent children counts rejected until they total `n - 1`
/// (an exchangeable bridge of the coupled walk), then applies the unique
/// cyclic rotation that turns the increments into a valid depth-first
/// excursion: the rotation at the first attainment of the walk minimum.
/// The resulting law is the exact conditional distribution.
///
/// # Errors
///
/// * [`GwError::Unsupported`] when `P(size = n)` is zero.
/// * [`GwError::RejectionBudget`] when the sum conditioning exceeds
///   `max_attempts` (acceptance decays like `n^{-1/2}`, so this signals an
///   undersized budget rather than a bug).
pub fn sample_conditioned_size_with_budget<R: Rng + ?Sized>(
    law: &OffspringLaw,
    n: usize,
    max_attempts: usize,
    rng: &mut R,
) -> Result<OrderedTree, GwError> {
    if !size_is_supported(law, n) {
        return Err(GwError::Unsupported {
            n,
            law: law.to_string(),
        });
    }
    let target = (n - 1) as u64;
    let mut counts: Vec<usize> = Vec::with_capacity(n);
    for _ in 0..max_attempts {
        counts.clear();
        let mut sum: u64 = 0;
        for _ in 0..n {
            let k = law.sample_offspring(rng);
            sum += k as u64;
            if sum > target {
                break;
            }
            counts.push(k);
        }
        if counts.len() == n && sum == target {
            return Ok(rotate_to_excursion(&counts));
        }
    }
    Err(GwError::RejectionBudget {
        attempts: max_attempts,
    })
}

/// Rotates children counts (summing to length - 1) at the first attainment
/// of the minimum of the associated walk; by the cycle lemma exactly this
/// rotation is a valid counts sequence.
fn rotate_to_excursion(counts: &[usize]) -> OrderedTree {
    let mut s: i64 = 0;
    let mut min = i64::MAX;
    let mut argmin = 0usize;
    for (i, &c) in counts.iter().enumerate() {
        s += c as i64 - 1;
        if s < min {
            min = s;
            argmin = i + 1;
        }
    }
    let cut = argmin % counts.len();
    let rotated: Vec<usize> = counts[cut..]
        .iter()
        .chain(counts[..cut].iter())
        .copied()
        .collect();
    OrderedTree::from_counts(rotated)
        .expect("the first-minimum rotation must produce a valid counts sequence")
}

/// Samples a tree conditioned to reach height at least `hmin`: the first
/// tree of that height in a forest of independent trees. Uses
/// [`DEFAULT_ATTEMPT_CAP`] and [`DEFAULT_VERTEX_CAP`].
///
/// # Errors
///
/// See [`sample_conditioned_height_with_budget`].
pub fn sample_conditioned_height<R: Rng + ?Sized>(
    law: &OffspringLaw,
    hmin: u64,
    rng: &mut R,
) -> Result<OrderedTree, GwError> {
    sample_conditioned_height_with_budget(law, hmin, DEFAULT_ATTEMPT_CAP, DEFAULT_VERTEX_CAP, rng)
}

/// Samples a tree conditioned to reach height at least `hmin`.
///
/// Trees grow breadth-first, so a rejected tree costs at most the vertices
/// of its fewer-than-`hmin` generations; the accept/reject decision is
/// exactly `height ≥ hmin`, and the draw order does not change the law, so
/// the result has the exact conditional distribution.
///
/// # Errors
///
/// Returns [`GwError::BudgetExceeded`] when `max_attempts` trees were
/// rejected, or when a tree grows past `vertex_cap` (carrying the exhausted
/// cap; with `max_attempts` well above `σ²·hmin/2` only the vertex cap is a
/// realistic cause).
///
/// Requires a critical law; otherwise returns [`GwError::InvalidLaw`].
pub fn sample_conditioned_height_with_budget<R: Rng + ?Sized>(
    law: &OffspringLaw,
    hmin: u64,
    max_attempts: usize,
    vertex_cap: usize,
    rng: &mut R,
) -> Result<OrderedTree, GwError> {
    require_critical(law, "sample_conditioned_height")?;
    for _ in 0..max_attempts {
        if let Some(tree) = grow_breadth_first(law, hmin, vertex_cap, rng)? {
            return Ok(tree);
        }
    }
    Err(GwError::BudgetExceeded { cap: max_attempts })
}

/// Grows one tree generation by generation. Returns `None` when it goes
/// extinct below `hmin` (a rejection).
fn grow_breadth_first<R: Rng + ?Sized>(
    law: &OffspringLaw,
    hmin: u64,
    vertex_cap: usize,
    rng: &mut R,
) -> Result<Option<OrderedTree>, GwError> {
    let mut counts_bfs: Vec<usize> = Vec::new();
    let mut generation_size = 1usize;
    let mut generations = 0u64;
    while generation_size > 0 {
        let mut next = 0usize;
        for _ in 0..generation_size {
            if counts_bfs.len() >= vertex_cap {
                return Err(GwError::BudgetExceeded { cap: vertex_cap });
            }
            let k = law.sample_offspring(rng);
            counts_bfs.push(k);
            next += k;
        }
        generations += 1;
        generation_size = next;
    }
    let height = generations - 1;
    if height >= hmin {
        Ok(Some(tree_from_bfs_counts(&counts_bfs)))
    } else {
        Ok(None)
    }
}

/// Converts children counts listed in breadth-first order into a tree.
///
/// In breadth-first numbering the children of vertex v occupy the
/// contiguous block starting at 1 + (counts of all earlier vertices).
fn tree_from_bfs_counts(counts_bfs: &[usize]) -> OrderedTree {
    let p = counts_bfs.len();
    let mut first_child = vec![0usize; p];
    let mut next = 1usize;
    for v in 0..p {
        first_child[v] = next;
        next += counts_bfs[v];
    }
    let mut dfs_counts = Vec::with_capacity(p);
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        dfs_counts.push(counts_bfs[v]);
        for c in (first_child[v]..first_child[v] + counts_bfs[v]).rev() {
            stack.push(c);
        }
    }
    OrderedTree::from_counts(dfs_counts).expect("breadth-first relabelling preserves validity")
}

/// Exact probability that the tree reaches height at least `n`:
/// `1 - f∘…∘f(0)` with the offspring generating function iterated `n`
/// times.
pub fn survival_prob(law: &OffspringLaw, n: u32) -> f64 {
    let mut s = 0.0f64;
    for _ in 0..n {
        s = law.gf(s);
    }
    1.0 - s
}
