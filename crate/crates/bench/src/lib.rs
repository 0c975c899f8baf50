//! Fixtures shared by the benchmarks.

use twoloc_core::corpus;
use twoloc_core::localization::FilterTriple;

/// Dense triples on the noncommutative corpus rings, smallest first.
pub fn dense_instances() -> Vec<(&'static str, FilterTriple)> {
    ["t2f2", "t2f3"]
        .into_iter()
        .map(|n| {
            (
                n,
                corpus::dense_triple(&corpus::ring(n).expect("corpus ring")).expect("dense filters"),
            )
        })
        .collect()
}
