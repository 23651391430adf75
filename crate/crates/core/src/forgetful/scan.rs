use std::cmp::Ordering;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::enumerate::CatalogEntry;
use crate::partition::{admissible_partitions, SymmetryPartition};
use crate::rational::{ExactRational, ExtendedValue};
use crate::weights::{dual, WeightSystem};

use super::candidate::weight_orbit_alignments;
use super::verdict::{classify_ref, divisibility_sides, ClassificationVerdict, ClassifyOptions};
use super::CandidateRef;

/// Which stages a candidate must pass to be reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanStage {
    /// Compatibility and divisibility only.
    Divisibility,
    /// All three stages.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Compactness {
    Any,
    /// Both source and target are cocompact.
    Cocompact,
    /// A non-compact source of dimension above 2, or a non-compact target of
    /// dimension above 1.
    NonCompact,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanFilter {
    pub source_dims: RangeInclusive<usize>,
    pub target_dims: RangeInclusive<usize>,
    pub compactness: Compactness,
    pub stage: ScanStage,
    /// Keep candidates that forget nothing and keep every weight.
    pub include_trivial: bool,
}

impl Default for ScanFilter {
    fn default() -> Self {
        ScanFilter {
            source_dims: 1..=usize::MAX,
            target_dims: 1..=usize::MAX,
            compactness: Compactness::Any,
            stage: ScanStage::Full,
            include_trivial: false,
        }
    }
}

impl ScanFilter {
    fn admits_pair(&self, src: &CatalogEntry, tgt: &CatalogEntry) -> bool {
        let (m, n) = (src.dimension(), tgt.dimension());
        if n > m || !self.source_dims.contains(&m) || !self.target_dims.contains(&n) {
            return false;
        }
        match self.compactness {
            Compactness::Any => true,
            Compactness::Cocompact => src.cocompact && tgt.cocompact,
            Compactness::NonCompact => (!src.cocompact && m > 2) || (!tgt.cocompact && n > 1),
        }
    }
}

/// One pair of symmetry partitions under which a row's alignment passes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionChoice {
    pub sigma: SymmetryPartition,
    pub tau: SymmetryPartition,
    pub verdict: ClassificationVerdict,
}

/// A reported class: canonical weights, one alignment per orbit of the full
/// weight-symmetry groups, and every admissible `(Σ, Τ)` that passes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScanRow {
    pub source: CatalogEntry,
    pub target: CatalogEntry,
    pub alignment: Vec<usize>,
    pub passing: Vec<PartitionChoice>,
    /// Canonical dual of a 4-point target.
    pub dual_partner: Option<WeightSystem>,
    /// Some passing `Τ` on 4 points contains a bitransposition, which acts
    /// trivially on the cross-ratio.
    pub non_faithful_target: bool,
}

impl ScanRow {
    /// Choices whose partitions are the finest ones on both sides.
    pub fn finest_choice(&self) -> Option<&PartitionChoice> {
        self.passing.iter().find(|c| c.sigma == self.source.finest && c.tau == self.target.finest)
    }
}

fn value(den: u32, sum: u32) -> ExtendedValue {
    if sum == den {
        ExtendedValue::Infinity
    } else {
        ExtendedValue::Finite(ExactRational::new(den as i64, den as i64 - sum as i64))
    }
}

/// Whether some block assignment could make every surviving pair divide;
/// skips alignments that fail for every choice of partitions.
fn may_divide(mu: &WeightSystem, nu: &WeightSystem, a: &[usize], opts: &ClassifyOptions) -> bool {
    let (mn, nn) = (mu.numerators(), nu.numerators());
    for i in 0..nu.len() {
        for j in i + 1..nu.len() {
            let (ai, aj) = (a[i], a[j]);
            if mu.pair_sum_cmp(ai, aj) != Ordering::Less {
                continue;
            }
            let s = value(mu.lcd(), mn[ai] + mn[aj]);
            let t = value(nu.lcd(), nn[i] + nn[j]);
            let tau_options: &[bool] = if nn[i] == nn[j] { &[false, true] } else { &[false] };
            let sigma_options: &[bool] = if mn[ai] == mn[aj] { &[false, true] } else { &[false] };
            let possible = tau_options.iter().any(|&st| {
                sigma_options.iter().filter(|&&ss| st || !ss).any(|&ss| {
                    let (l, r) = divisibility_sides(opts.divisibility, ss, st, t, s);
                    l.divides(&r)
                })
            });
            if !possible {
                return false;
            }
        }
    }
    true
}

fn scan_pair(
    src: &CatalogEntry,
    sigmas: &[SymmetryPartition],
    tgt: &CatalogEntry,
    taus: &[SymmetryPartition],
    filter: &ScanFilter,
    opts: &ClassifyOptions,
) -> Vec<ScanRow> {
    let (mu, nu) = (&src.weights, &tgt.weights);
    let mut rows = Vec::new();
    for a in weight_orbit_alignments(mu, nu) {
        let trivial = mu.len() == nu.len() && a.iter().enumerate().all(|(i, &s)| mu.weight(s) == nu.weight(i));
        if trivial && !filter.include_trivial {
            continue;
        }
        if !may_divide(mu, nu, &a, opts) {
            continue;
        }
        let mut passing = Vec::new();
        for sigma in sigmas {
            for tau in taus {
                let c = CandidateRef { source: mu, sigma, target: nu, tau, alignment: &a };
                let verdict = classify_ref(c, opts);
                let ok = match filter.stage {
                    ScanStage::Divisibility => verdict.passes_divisibility_stage(),
                    ScanStage::Full => verdict.is_orbifold_map(),
                };
                if ok {
                    passing.push(PartitionChoice { sigma: sigma.clone(), tau: tau.clone(), verdict });
                }
            }
        }
        if passing.is_empty() {
            continue;
        }
        let non_faithful_target = nu.len() == 4
            && passing.iter().any(|c| c.tau.blocks().iter().any(|b| b.len() == 4) || c.tau.shape() == [2, 2]);
        rows.push(ScanRow {
            source: src.clone(),
            target: tgt.clone(),
            alignment: a,
            passing,
            dual_partner: dual(nu).ok().map(|d| d.sorted_desc()),
            non_faithful_target,
        });
    }
    rows
}

/// Classifies every source/target pair admitted by `filter`, returning the
/// passing rows in a deterministic order: by source, then target, then
/// alignment. Independent of the number of worker threads.
pub fn scan(
    sources: &[CatalogEntry],
    targets: &[CatalogEntry],
    filter: &ScanFilter,
    opts: &ClassifyOptions,
) -> Vec<ScanRow> {
    let src_parts: Vec<Vec<SymmetryPartition>> =
        sources.par_iter().map(|e| admissible_partitions(&e.weights)).collect();
    let tgt_parts: Vec<Vec<SymmetryPartition>> =
        targets.par_iter().map(|e| admissible_partitions(&e.weights)).collect();
    let pairs: Vec<(usize, usize)> = (0..sources.len())
        .flat_map(|s| (0..targets.len()).map(move |t| (s, t)))
        .filter(|&(s, t)| filter.admits_pair(&sources[s], &targets[t]))
        .collect();
    let mut rows: Vec<ScanRow> = pairs
        .par_iter()
        .flat_map_iter(|&(s, t)| scan_pair(&sources[s], &src_parts[s], &targets[t], &tgt_parts[t], filter, opts))
        .collect();
    rows.sort_by(|a, b| {
        a.source
            .sort_key()
            .cmp(&b.source.sort_key())
            .then_with(|| a.target.sort_key().cmp(&b.target.sort_key()))
            .then_with(|| a.alignment.cmp(&b.alignment))
    });
    rows
}
