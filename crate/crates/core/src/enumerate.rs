//! Exhaustive, pruned enumeration of integral and half-integral weight systems
//! up to a denominator bound.

use num_integer::Integer;
use rayon::prelude::*;

use crate::partition::{finest_partition, SymmetryPartition};
use crate::weights::{check_int, is_cocompact, WeightSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntegralityMode {
    /// Every constrained pair value is an integer.
    Int,
    /// Some symmetry partition makes the system half-integral.
    HalfInt,
}

/// A canonical (non-increasing) admissible weight system with its derived data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CatalogEntry {
    pub weights: WeightSystem,
    pub cocompact: bool,
    pub satisfies_int: bool,
    pub finest: SymmetryPartition,
}

impl CatalogEntry {
    /// `None` when `mu` admits no symmetry partition.
    pub fn from_weights(mu: &WeightSystem) -> Option<Self> {
        let weights = canonicalize(mu);
        let finest = finest_partition(&weights)?;
        Some(CatalogEntry { cocompact: is_cocompact(&weights), satisfies_int: check_int(&weights), finest, weights })
    }

    pub fn k(&self) -> usize {
        self.weights.len()
    }

    pub fn dimension(&self) -> usize {
        self.weights.dimension()
    }

    pub fn lcd(&self) -> u32 {
        self.weights.lcd()
    }

    /// Catalog order: `(k, lcd, numerators)`.
    pub fn sort_key(&self) -> (usize, u32, &[u32]) {
        (self.k(), self.lcd(), self.weights.numerators())
    }
}

/// Sorts the weights non-increasingly.
pub fn canonicalize(mu: &WeightSystem) -> WeightSystem {
    mu.sorted_desc()
}

fn pair_ok(d: u32, a: u32, b: u32, mode: IntegralityMode) -> bool {
    let s = a + b;
    if s >= d {
        return true;
    }
    let gap = d - s;
    d.is_multiple_of(gap) || (mode == IntegralityMode::HalfInt && a == b && (2 * d).is_multiple_of(gap))
}

/// Extends `prefix` by non-increasing numerators, abandoning a branch as soon
/// as the newest entry fails a pair test against the prefix.
fn extend(
    d: u32,
    mode: IntegralityMode,
    prefix: &mut Vec<u32>,
    rem: u32,
    left: usize,
    max: u32,
    out: &mut Vec<Vec<u32>>,
) {
    if left == 0 {
        if rem == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let left32 = left as u32;
    if rem < left32 {
        return;
    }
    let hi = max.min(rem - (left32 - 1));
    let lo = rem.div_ceil(left32).max(1);
    for v in (lo..=hi).rev() {
        if prefix.iter().all(|&p| pair_ok(d, p, v, mode)) {
            prefix.push(v);
            extend(d, mode, prefix, rem - v, left - 1, v, out);
            prefix.pop();
        }
    }
}

fn tuples_with_first(k: usize, d: u32, first: u32, mode: IntegralityMode) -> Vec<WeightSystem> {
    let mut raw = Vec::new();
    let mut prefix = vec![first];
    extend(d, mode, &mut prefix, 2 * d - first, k - 1, first, &mut raw);
    raw.into_iter()
        .filter(|t| t.iter().fold(d, |g, &n| g.gcd(&n)) == 1)
        .map(|t| WeightSystem::from_reduced(t, d))
        .collect()
}

/// All canonical `k`-point weight systems with lcd at most `max_den` that
/// satisfy the integrality condition of `mode`, sorted by `(lcd, numerators)`.
pub fn enumerate_catalog(k: usize, max_den: u32, mode: IntegralityMode) -> Vec<CatalogEntry> {
    if k < 4 || max_den < 2 {
        return Vec::new();
    }
    let tasks: Vec<(u32, u32)> = (2..=max_den)
        .flat_map(|d| (1..d).filter(move |&a| a as usize * k >= 2 * d as usize).map(move |a| (d, a)))
        .collect();
    let mut entries: Vec<CatalogEntry> = tasks
        .par_iter()
        .flat_map_iter(|&(d, a)| tuples_with_first(k, d, a, mode))
        .filter_map(|w| CatalogEntry::from_weights(&w))
        .filter(|e| mode == IntegralityMode::HalfInt || e.satisfies_int)
        .collect();
    entries.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    entries
}

/// Denominator bound used for 4-point systems in the standard catalog.
pub const FOUR_POINT_MAX_DEN: u32 = 84;
/// Denominator bound used for five or more points in the standard catalog.
pub const MANY_POINT_MAX_DEN: u32 = 42;
/// Largest point count present in the standard catalog.
pub const MAX_POINTS: usize = 12;

/// Half-integral catalog for `4 ≤ k ≤ 12` at the standard denominator bounds.
pub fn standard_catalog() -> Vec<CatalogEntry> {
    (4..=MAX_POINTS)
        .flat_map(|k| {
            let d = if k == 4 { FOUR_POINT_MAX_DEN } else { MANY_POINT_MAX_DEN };
            enumerate_catalog(k, d, IntegralityMode::HalfInt)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcdReport {
    pub bound: u32,
    pub checked: usize,
    pub max_lcd: Option<u32>,
    pub violations: Vec<CatalogEntry>,
}

impl LcdReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists the entries whose lcd exceeds `bound`.
pub fn verify_lcd_bound(catalog: &[CatalogEntry], bound: u32) -> LcdReport {
    LcdReport {
        bound,
        checked: catalog.len(),
        max_lcd: catalog.iter().map(CatalogEntry::lcd).max(),
        violations: catalog.iter().filter(|e| e.lcd() > bound).cloned().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(nums: &[i64], den: i64) -> WeightSystem {
        WeightSystem::new(nums, den).unwrap()
    }

    fn contains(cat: &[CatalogEntry], nums: &[i64], den: i64) -> Option<CatalogEntry> {
        let w = ws(nums, den);
        cat.iter().find(|e| e.weights == w).cloned()
    }

    #[test]
    fn canonical_order() {
        assert_eq!(canonicalize(&ws(&[1, 3, 3, 3, 3, 3], 8)), ws(&[3, 3, 3, 3, 3, 1], 8));
        assert_eq!(canonicalize(&ws(&[2, 1, 2, 3, 1, 3], 6)), ws(&[3, 3, 2, 2, 1, 1], 6));
        let w = ws(&[3, 3, 3, 3, 3, 1], 8);
        assert_eq!(canonicalize(&w), w);
    }

    #[test]
    fn known_members() {
        assert!(contains(&enumerate_catalog(6, 10, IntegralityMode::Int), &[3, 3, 3, 3, 3, 1], 8).is_some());
        let e = contains(&enumerate_catalog(5, 42, IntegralityMode::HalfInt), &[8, 3, 3, 3, 3], 10).unwrap();
        assert_eq!(e.finest.to_string(), "{{1},{2,3,4,5}}");
        let four = enumerate_catalog(4, 84, IntegralityMode::HalfInt);
        assert!(contains(&four, &[7, 3, 3, 3], 8).is_some());
        assert!(contains(&four, &[5, 5, 5, 1], 8).is_some());
        assert!(contains(&enumerate_catalog(6, 12, IntegralityMode::HalfInt), &[3, 3, 2, 2, 1, 1], 6).is_some());
    }

    #[test]
    fn int_entries_are_half_int_entries() {
        let int = enumerate_catalog(5, 24, IntegralityMode::Int);
        let half = enumerate_catalog(5, 24, IntegralityMode::HalfInt);
        assert!(int.iter().all(|e| half.contains(e)));
        assert!(int.len() < half.len());
    }

    #[test]
    fn lcd_bound() {
        assert!(verify_lcd_bound(&enumerate_catalog(5, 60, IntegralityMode::HalfInt), 42).holds());
        let four = verify_lcd_bound(&enumerate_catalog(4, 84, IntegralityMode::HalfInt), 42);
        assert!(!four.holds());
    }

    #[test]
    fn degenerate_requests() {
        assert!(enumerate_catalog(3, 10, IntegralityMode::Int).is_empty());
        assert!(enumerate_catalog(5, 1, IntegralityMode::Int).is_empty());
    }
}
