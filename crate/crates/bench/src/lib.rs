//! Inputs shared by the benchmarks.

use tgs_core::enumerate::{deduplicate, enumerate_structures, SearchOptions};
use tgs_core::GammaStructure;

/// Non-isomorphic structures of order `n` with one parameter.
pub fn corpus(n: usize) -> Vec<GammaStructure> {
    let e = enumerate_structures(n, 1, &SearchOptions::default()).expect("order within the default cap");
    deduplicate(&e.structures, false).into_iter().map(|(_, s)| s).collect()
}
