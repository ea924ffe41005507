use tree_codings::OrderedTree;

/// Deterministically repairs an arbitrary sequence of small nonnegative
/// integers into a valid counts sequence, so property tests can explore the
/// whole space of ordered trees from unconstrained fuzz input.
///
/// The raw entries are truncated until their sum can cover all later
/// vertices, padded with zeros so the total is one less than the length,
/// and finally rotated at the first minimum of the associated walk; by the
/// cycle lemma exactly that rotation is a valid counts sequence.
pub fn tree_from_free_counts(raw: &[usize]) -> OrderedTree {
    let mut v: Vec<usize> = raw.iter().map(|&c| c.min(8)).collect();
    if v.is_empty() {
        v.push(0);
    }
    while v.iter().sum::<usize>() + 1 < v.len() {
        v.pop();
    }
    let sum: usize = v.iter().sum();
    v.resize(sum + 1, 0);
    let p = v.len();
    let mut s: i64 = 0;
    let mut min = i64::MAX;
    let mut argmin = 0usize;
    for (i, &c) in v.iter().enumerate() {
        s += c as i64 - 1;
        if s < min {
            min = s;
            argmin = i + 1;
        }
    }
    let cut = argmin % p;
    let rotated: Vec<usize> = v[cut..].iter().chain(v[..cut].iter()).copied().collect();
    OrderedTree::from_counts(rotated).expect("cycle-lemma rotation yields a valid counts sequence")
}
