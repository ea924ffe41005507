use crate::error::CodingError;
use crate::tree::OrderedTree;

/// Largest vertex count accepted by [`enumerate_trees`].
pub const MAX_ENUMERATION_SIZE: usize = 12;

/// Enumerates every ordered tree with exactly `p` vertices, in ascending
/// lexicographic order of counts sequences.
///
/// There are `catalan(p - 1)` such trees; for the maximum supported size of
/// 12 vertices that is 58 786 trees.
///
/// # Errors
///
/// Returns [`CodingError::InconsistentInput`] for `p = 0` and
/// [`CodingError::TooLarge`] for `p > 12`.
pub fn enumerate_trees(p: usize) -> Result<Vec<OrderedTree>, CodingError> {
    if p == 0 {
        return Err(CodingError::InconsistentInput {
            reason: "a tree has at least one vertex".to_owned(),
        });
    }
    if p > MAX_ENUMERATION_SIZE {
        return Err(CodingError::TooLarge {
            got: p,
            max: MAX_ENUMERATION_SIZE,
        });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(p);
    extend_counts(&mut prefix, 0, p, &mut out);
    Ok(out)
}

/// Depth-first generation of valid counts sequences in lexicographic order.
///
/// `sum` is the running total of `prefix`. Position `i < p - 1` must keep
/// the prefix sum at least `i + 1`; the final position is forced so that the
/// total is `p - 1`.
fn extend_counts(prefix: &mut Vec<usize>, sum: usize, p: usize, out: &mut Vec<OrderedTree>) {
    let i = prefix.len();
    if i == p - 1 {
        prefix.push(p - 1 - sum);
        out.push(OrderedTree::from_counts(prefix.clone()).expect("generated counts are valid"));
        prefix.pop();
        return;
    }
    let lo = (i + 1).saturating_sub(sum);
    let hi = p - 1 - sum;
    for c in lo..=hi {
        prefix.push(c);
        extend_counts(prefix, sum + c, p, out);
        prefix.pop();
    }
}

/// Number of binary tree shapes with `p` leaves (every internal vertex has
/// exactly two children): the `(p - 1)`-st Catalan number, computed exactly
/// in `u128`.
///
/// # Errors
///
/// Returns [`CodingError::InconsistentInput`] for `p = 0` and
/// [`CodingError::Overflow`] when the count exceeds `u128`.
pub fn count_binary_skeletons(p: usize) -> Result<u128, CodingError> {
    if p == 0 {
        return Err(CodingError::InconsistentInput {
            reason: "a binary shape has at least one leaf".to_owned(),
        });
    }
    catalan((p - 1) as u128)
}

/// Number of labelled binary trees with `p` leaves: the odd double
/// factorial `1 * 3 * … * (2p - 3)`, with the convention that the value is
/// 1 for a single leaf. Computed exactly in `u128`.
///
/// # Errors
///
/// Returns [`CodingError::InconsistentInput`] for `p = 0` and
/// [`CodingError::Overflow`] when the count exceeds `u128`.
pub fn count_labelled_binary(p: usize) -> Result<u128, CodingError> {
    if p == 0 {
        return Err(CodingError::InconsistentInput {
            reason: "a labelled binary tree has at least one leaf".to_owned(),
        });
    }
    let mut product: u128 = 1;
    let mut odd: u128 = 1;
    for _ in 2..=p {
        product = product.checked_mul(odd).ok_or(CodingError::Overflow)?;
        odd += 2;
    }
    Ok(product)
}

/// The `n`-th Catalan number, exactly, via the integer recurrence
/// `c(n + 1) = c(n) * 2(2n + 1) / (n + 2)` (the division is always exact).
fn catalan(n: u128) -> Result<u128, CodingError> {
    let mut c: u128 = 1;
    let mut k: u128 = 0;
    while k < n {
        c = c
            .checked_mul(2 * (2 * k + 1))
            .ok_or(CodingError::Overflow)?
            / (k + 2);
        k += 1;
    }
    Ok(c)
}
