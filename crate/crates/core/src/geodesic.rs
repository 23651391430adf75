//! Hyperbolic contractions (totally geodesic sub-ball data) organized as an
//! inclusion graph over a catalog, and the obvious commensurability classes
//! given by nested symmetry partitions.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::enumerate::{canonicalize, CatalogEntry};
use crate::partition::{admissible_partitions, commensurability_index, SymmetryPartition};
use crate::weights::{check_int, contract, WeightSystem};

/// Every subset of at least two indices with weight sum below 1 whose
/// contraction still has at least 4 points, with that contraction. Subsets are
/// ordered by size, then lexicographically.
pub fn hyperbolic_contractions(mu: &WeightSystem) -> Vec<(Vec<usize>, WeightSystem)> {
    let k = mu.len();
    let mut subsets: Vec<Vec<usize>> = (1u32..(1 << k))
        .filter(|m| m.count_ones() >= 2 && k + 1 - m.count_ones() as usize >= 4)
        .map(|m| (0..k).filter(|&i| m & (1 << i) != 0).collect::<Vec<usize>>())
        .filter(|s| mu.subset_sum_cmp(s) == std::cmp::Ordering::Less)
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
        .into_iter()
        .map(|s| {
            let child = contract(mu, &s).expect("subset is hyperbolic and leaves at least 4 points");
            (s, child)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InclusionEdge {
    pub parent: WeightSystem,
    pub subset: Vec<usize>,
    /// Canonical form of the contraction.
    pub child: WeightSystem,
    pub codimension: usize,
    pub child_int: bool,
    pub child_in_catalog: bool,
    /// The parent is only half-integral, so the edge is not covered by the
    /// integral contraction statement.
    pub heuristic: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InclusionDag {
    pub edges: Vec<InclusionEdge>,
}

impl InclusionDag {
    /// Every edge lowers the point count, so the graph has no cycles.
    pub fn is_acyclic(&self) -> bool {
        self.edges.iter().all(|e| e.child.len() < e.parent.len())
    }

    pub fn children_of<'a>(&'a self, parent: &'a WeightSystem) -> impl Iterator<Item = &'a InclusionEdge> + 'a {
        self.edges.iter().filter(move |e| &e.parent == parent)
    }
}

fn respects_blocks(subset: &[usize], p: &SymmetryPartition) -> bool {
    p.blocks().iter().all(|b| {
        let inside = b.iter().filter(|i| subset.contains(i)).count();
        inside == 0 || inside == b.len()
    })
}

/// Contraction edges for every catalog entry. Half-integral-only entries get
/// edges only for subsets that contain each finest block entirely or not at
/// all, and those edges are marked heuristic.
pub fn inclusion_dag(catalog: &[CatalogEntry]) -> InclusionDag {
    let present: HashSet<&WeightSystem> = catalog.iter().map(|e| &e.weights).collect();
    let present = &present;
    let edges = catalog
        .par_iter()
        .flat_map_iter(|entry| {
            let heuristic = !entry.satisfies_int;
            hyperbolic_contractions(&entry.weights)
                .into_iter()
                .filter(move |(s, _)| !heuristic || respects_blocks(s, &entry.finest))
                .map(move |(subset, child)| {
                    let child = canonicalize(&child);
                    InclusionEdge {
                        parent: entry.weights.clone(),
                        codimension: subset.len() - 1,
                        child_int: check_int(&child),
                        child_in_catalog: present.contains(&child),
                        heuristic,
                        subset,
                        child,
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    InclusionDag { edges }
}

/// The admissible partitions of one weight system with the refinement
/// relation between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommensurabilityClass {
    pub weights: WeightSystem,
    pub partitions: Vec<SymmetryPartition>,
    /// Covering refinements `(fine, coarse, index)` as positions in `partitions`.
    pub edges: Vec<(usize, usize, u64)>,
}

impl CommensurabilityClass {
    pub fn index_between(&self, fine: usize, coarse: usize) -> Option<u64> {
        commensurability_index(&self.partitions[fine], &self.partitions[coarse]).ok()
    }
}

/// One class per weight system. Covering edges merge exactly two blocks.
pub fn commensurability_classes(catalog: &[CatalogEntry]) -> Vec<CommensurabilityClass> {
    catalog
        .par_iter()
        .map(|entry| {
            let partitions = admissible_partitions(&entry.weights);
            let mut edges = Vec::new();
            for (f, fine) in partitions.iter().enumerate() {
                for (c, coarse) in partitions.iter().enumerate() {
                    if fine.blocks().len() == coarse.blocks().len() + 1 && fine.refines(coarse) {
                        let index = coarse.group_order() / fine.group_order();
                        edges.push((f, c, index));
                    }
                }
            }
            CommensurabilityClass { weights: entry.weights.clone(), partitions, edges }
        })
        .collect()
}
