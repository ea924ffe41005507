//! Frozen enumeration data and an in-test brute force, both independent of
//! the production generator.

use std::collections::BTreeSet;

use tree_codings::{enumerate_trees, OrderedTree};

fn check_against_golden(p: usize, golden: &str) {
    let expected: Vec<&str> = golden.lines().collect();
    let got: Vec<String> = enumerate_trees(p)
        .unwrap()
        .iter()
        .map(|t| t.to_string())
        .collect();
    assert_eq!(got, expected, "enumeration differs from golden file, p = {p}");
}

#[test]
fn enumeration_matches_golden_files() {
    check_against_golden(1, include_str!("golden/trees_p1.txt"));
    check_against_golden(2, include_str!("golden/trees_p2.txt"));
    check_against_golden(3, include_str!("golden/trees_p3.txt"));
    check_against_golden(4, include_str!("golden/trees_p4.txt"));
    check_against_golden(5, include_str!("golden/trees_p5.txt"));
    check_against_golden(6, include_str!("golden/trees_p6.txt"));
}

/// Exhaustively decodes every up/down word of length `2 * (p - 1)` that
/// stays nonnegative and ends at 0, collecting the counts sequences of the
/// explored trees. Entirely independent of the production enumerator.
fn brute_force_counts(p: usize) -> BTreeSet<Vec<usize>> {
    let steps = 2 * (p - 1);
    let mut out = BTreeSet::new();
    'mask: for mask in 0u32..(1 << steps) {
        let mut level: i32 = 0;
        for t in 0..steps {
            level += if mask & (1 << t) != 0 { 1 } else { -1 };
            if level < 0 {
                continue 'mask;
            }
        }
        if level != 0 {
            continue;
        }
        let mut counts = vec![0usize];
        let mut stack = vec![0usize];
        for t in 0..steps {
            if mask & (1 << t) != 0 {
                let v = counts.len();
                counts.push(0);
                counts[*stack.last().unwrap()] += 1;
                stack.push(v);
            } else {
                stack.pop();
            }
        }
        out.insert(counts);
    }
    out
}

#[test]
fn enumeration_matches_independent_brute_force() {
    for p in 1..=7 {
        let brute = brute_force_counts(p);
        let enumerated: BTreeSet<Vec<usize>> = enumerate_trees(p)
            .unwrap()
            .into_iter()
            .map(OrderedTree::into_counts)
            .collect();
        assert_eq!(enumerated, brute, "p = {p}");
    }
}
