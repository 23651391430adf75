//! Shared inputs for the benchmarks.

use ballmaps_core::{enumerate_catalog, CatalogEntry, IntegralityMode};

/// Half-integral systems with 4 to 6 points up to denominator 24: large enough
/// to exercise every scan stage, small enough to iterate quickly.
pub fn small_catalog() -> Vec<CatalogEntry> {
    (4..=6).flat_map(|k| enumerate_catalog(k, 24, IntegralityMode::HalfInt)).collect()
}
