//! Inputs shared by the criterion benchmarks.

use forestry::Permutation;

/// Permutations of increasing difficulty for the per-permutation benchmarks.
pub fn sample_permutations() -> Vec<Permutation> {
    ["4132", "24513", "146235", "321465", "1432765", "4621573"]
        .iter()
        .map(|s| s.parse().expect("valid permutation"))
        .collect()
}
