//! Forgetful maps between weight systems with symmetry: candidates, the
//! three-stage classification (symmetry compatibility, smooth locus,
//! divisibility), catalog scans, and the cross-ratio picture for 4 points.

mod candidate;
mod geometry;
mod scan;
mod verdict;

use thiserror::Error;

use crate::partition::SymmetryPartition;
use crate::weights::{WeightError, WeightSystem};

pub use candidate::generate_candidates;
pub use geometry::{cross_ratio, divisor_fate, DivisorFate, ProjectivePoint};
pub use scan::{scan, Compactness, PartitionChoice, ScanFilter, ScanRow, ScanStage};
pub use verdict::{
    check_divisibility, check_qprime, check_symmetry_compat, classify_candidate, ClassificationVerdict,
    ClassifyOptions, DivisibilityMode, Stage, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForgetfulError {
    #[error("target has {target_points} points but source only {source_points}")]
    TargetHasMorePoints { source_points: usize, target_points: usize },
    #[error("alignment has {got} entries, target has {expected} points")]
    AlignmentLength { expected: usize, got: usize },
    #[error("alignment entry {0} is not a source index")]
    AlignmentOutOfRange(usize),
    #[error("alignment sends two target slots to source index {0}")]
    AlignmentNotInjective(usize),
    #[error("partition covers {got} indices, weight system has {expected}")]
    PartitionSize { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("cross-ratio is undefined when three or more points coincide")]
    Degenerate,
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// A source `(μ, Σ)`, a target `(ν, Τ)` and an injective alignment sending
/// target slot `i` to source index `alignment[i]`. Source indices outside the
/// image are the forgotten points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForgetfulCandidate {
    pub source: WeightSystem,
    pub sigma: SymmetryPartition,
    pub target: WeightSystem,
    pub tau: SymmetryPartition,
    pub alignment: Vec<usize>,
}

impl ForgetfulCandidate {
    pub fn new(
        source: WeightSystem,
        sigma: SymmetryPartition,
        target: WeightSystem,
        tau: SymmetryPartition,
        alignment: Vec<usize>,
    ) -> Result<Self, ForgetfulError> {
        validate(&source, &sigma, &target, &tau, &alignment)?;
        Ok(ForgetfulCandidate { source, sigma, target, tau, alignment })
    }

    /// The candidate sending `(μ, Σ)` to itself slot by slot.
    pub fn identity(mu: WeightSystem, sigma: SymmetryPartition) -> Result<Self, ForgetfulError> {
        let k = mu.len();
        Self::new(mu.clone(), sigma.clone(), mu, sigma, (0..k).collect())
    }

    pub(crate) fn view(&self) -> CandidateRef<'_> {
        CandidateRef {
            source: &self.source,
            sigma: &self.sigma,
            target: &self.target,
            tau: &self.tau,
            alignment: &self.alignment,
        }
    }

    /// Source indices not hit by the alignment, ascending.
    pub fn forgotten(&self) -> Vec<usize> {
        self.view().forgotten()
    }

    /// Nothing forgotten and every slot keeps its weight: an obvious
    /// commensurability rather than a genuine map.
    pub fn is_trivial(&self) -> bool {
        self.view().is_trivial()
    }
}

fn validate(
    source: &WeightSystem,
    sigma: &SymmetryPartition,
    target: &WeightSystem,
    tau: &SymmetryPartition,
    alignment: &[usize],
) -> Result<(), ForgetfulError> {
    if target.len() > source.len() {
        return Err(ForgetfulError::TargetHasMorePoints { source_points: source.len(), target_points: target.len() });
    }
    if sigma.len() != source.len() {
        return Err(ForgetfulError::PartitionSize { expected: source.len(), got: sigma.len() });
    }
    if tau.len() != target.len() {
        return Err(ForgetfulError::PartitionSize { expected: target.len(), got: tau.len() });
    }
    if alignment.len() != target.len() {
        return Err(ForgetfulError::AlignmentLength { expected: target.len(), got: alignment.len() });
    }
    let mut hit = vec![false; source.len()];
    for &a in alignment {
        if a >= source.len() {
            return Err(ForgetfulError::AlignmentOutOfRange(a));
        }
        if std::mem::replace(&mut hit[a], true) {
            return Err(ForgetfulError::AlignmentNotInjective(a));
        }
    }
    Ok(())
}

/// Borrowed form of a candidate, used by the scan to avoid cloning.
#[derive(Clone, Copy)]
pub(crate) struct CandidateRef<'a> {
    pub source: &'a WeightSystem,
    pub sigma: &'a SymmetryPartition,
    pub target: &'a WeightSystem,
    pub tau: &'a SymmetryPartition,
    pub alignment: &'a [usize],
}

impl CandidateRef<'_> {
    /// Target slot of each source index, `None` for forgotten indices.
    pub fn inverse(&self) -> Vec<Option<usize>> {
        let mut inv = vec![None; self.source.len()];
        for (slot, &a) in self.alignment.iter().enumerate() {
            inv[a] = Some(slot);
        }
        inv
    }

    pub fn forgotten(&self) -> Vec<usize> {
        let inv = self.inverse();
        (0..self.source.len()).filter(|&i| inv[i].is_none()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.source.len() == self.target.len()
            && self.alignment.iter().enumerate().all(|(slot, &a)| self.target.weight(slot) == self.source.weight(a))
    }
}
