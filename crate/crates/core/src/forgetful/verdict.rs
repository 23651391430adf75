use std::cmp::Ordering;
use std::fmt;

use crate::perm::{codim1_fixed_elements, Permutation};
use crate::rational::{ExactRational, ExtendedValue};

use super::{CandidateRef, ForgetfulCandidate, ForgetfulError};

/// How the orbifold weights of a surviving pair must divide each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DivisibilityMode {
    /// `d^{ν,Τ}_ij | d^{μ,Σ}_{a(i)a(j)}`, each side doubled for same-block pairs.
    #[default]
    Literal,
    /// Case split on the blocks: cross/cross `t | s`; same Τ only `t | 2s`;
    /// same Τ and same Σ `2t | 2s`.
    Bullets,
}

impl DivisibilityMode {
    pub fn name(&self) -> &'static str {
        match self {
            DivisibilityMode::Literal => "literal",
            DivisibilityMode::Bullets => "bullets",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassifyOptions {
    pub divisibility: DivisibilityMode,
    /// Treat transpositions as codimension-one fixed elements for 4 points.
    pub k4_fixed_points: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { divisibility: DivisibilityMode::Literal, k4_fixed_points: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    Compatibility,
    QPrime,
    Divisibility,
}

impl Stage {
    pub fn name(&self) -> &'static str {
        match self {
            Stage::Compatibility => "compatibility",
            Stage::QPrime => "qprime",
            Stage::Divisibility => "divisibility",
        }
    }
}

/// Why a stage failed. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    /// A source block that is split between surviving and forgotten points,
    /// or whose survivors land in different target blocks.
    SplitBlock { block: Vec<usize> },
    /// A target group element with codimension-one fixed locus that the
    /// source cannot match.
    FixedElement { element: Permutation },
    /// A target pair whose orbifold weight fails to divide the source one.
    Divisibility { slots: (usize, usize), sources: (usize, usize), lhs: ExtendedValue, rhs: ExtendedValue },
    /// The stage was skipped because an earlier stage failed.
    NotEvaluated,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::SplitBlock { block } => {
                let b: Vec<String> = block.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "split source block {{{}}}", b.join(","))
            }
            Witness::FixedElement { element } => write!(f, "fixed element {element}"),
            Witness::Divisibility { slots, sources, lhs, rhs } => write!(
                f,
                "slots ({},{}) <- ({},{}): {lhs} does not divide {rhs}",
                slots.0 + 1,
                slots.1 + 1,
                sources.0 + 1,
                sources.1 + 1
            ),
            Witness::NotEvaluated => f.write_str("not evaluated"),
        }
    }
}

/// Stage flags plus witnesses for every failed stage. When compatibility
/// fails the other stages are not evaluated and count as failed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassificationVerdict {
    pub symmetry_compatible: bool,
    pub qprime_ok: bool,
    pub divisibility_ok: bool,
    pub witnesses: Vec<(Stage, Witness)>,
}

impl ClassificationVerdict {
    pub fn is_orbifold_map(&self) -> bool {
        self.symmetry_compatible && self.qprime_ok && self.divisibility_ok
    }

    /// Compatibility and divisibility, ignoring the smooth-locus stage.
    pub fn passes_divisibility_stage(&self) -> bool {
        self.symmetry_compatible && self.divisibility_ok
    }

    pub fn stage_ok(&self, stage: Stage) -> bool {
        match stage {
            Stage::Compatibility => self.symmetry_compatible,
            Stage::QPrime => self.qprime_ok,
            Stage::Divisibility => self.divisibility_ok,
        }
    }

    /// The stage flags only, for comparing verdicts across relabelings.
    pub fn flags(&self) -> (bool, bool, bool) {
        (self.symmetry_compatible, self.qprime_ok, self.divisibility_ok)
    }
}

pub(crate) fn compat_witness(c: CandidateRef<'_>) -> Option<Witness> {
    let inv = c.inverse();
    for block in c.sigma.blocks() {
        let slots: Vec<usize> = block.iter().filter_map(|&i| inv[i]).collect();
        if slots.is_empty() {
            continue;
        }
        if slots.len() != block.len() || slots.iter().any(|&s| !c.tau.same_block(s, slots[0])) {
            return Some(Witness::SplitBlock { block: block.clone() });
        }
    }
    None
}

pub(crate) fn qprime_witness(c: CandidateRef<'_>, k4_fixed_points: bool) -> Option<Witness> {
    let kt = c.target.len();
    let elements = codim1_fixed_elements(kt, c.tau, k4_fixed_points);
    if c.source.len() > kt {
        // A forgotten coordinate stays free over any target fixed locus.
        return elements.into_iter().next().map(|element| Witness::FixedElement { element });
    }
    elements
        .into_iter()
        .find(|g| (0..kt).any(|i| !c.sigma.same_block(c.alignment[i], c.alignment[g.apply(i)])))
        .map(|element| Witness::FixedElement { element })
}

fn finite(n: i64, d: i64) -> ExtendedValue {
    ExtendedValue::Finite(ExactRational::new(n, d))
}

/// `(lhs, rhs)` that must satisfy `lhs | rhs` for one surviving pair.
pub(crate) fn divisibility_sides(
    mode: DivisibilityMode,
    same_sigma: bool,
    same_tau: bool,
    t: ExtendedValue,
    s: ExtendedValue,
) -> (ExtendedValue, ExtendedValue) {
    match mode {
        DivisibilityMode::Literal => (if same_tau { t.double() } else { t }, if same_sigma { s.double() } else { s }),
        DivisibilityMode::Bullets => match (same_tau, same_sigma) {
            (false, _) => (t, s),
            (true, false) => (t, s.double()),
            (true, true) => (t.double(), s.double()),
        },
    }
}

pub(crate) fn divisibility_witness(c: CandidateRef<'_>, mode: DivisibilityMode) -> Option<Witness> {
    let kt = c.target.len();
    let (dm, dn) = (c.source.lcd() as i64, c.target.lcd() as i64);
    let (mu, nu) = (c.source.numerators(), c.target.numerators());
    for i in 0..kt {
        for j in i + 1..kt {
            let (ai, aj) = (c.alignment[i], c.alignment[j]);
            if c.source.pair_sum_cmp(ai, aj) != Ordering::Less {
                continue;
            }
            let s = finite(dm, dm - (mu[ai] + mu[aj]) as i64);
            let gap = dn - (nu[i] + nu[j]) as i64;
            let t = if gap == 0 { ExtendedValue::Infinity } else { finite(dn, gap) };
            let same_sigma = c.sigma.same_block(ai, aj);
            let same_tau = c.tau.same_block(i, j);
            debug_assert!(!same_sigma || same_tau || compat_witness(c).is_some());
            let (lhs, rhs) = divisibility_sides(mode, same_sigma, same_tau, t, s);
            if !lhs.divides(&rhs) {
                return Some(Witness::Divisibility { slots: (i, j), sources: (ai, aj), lhs, rhs });
            }
        }
    }
    None
}

pub(crate) fn classify_ref(c: CandidateRef<'_>, opts: &ClassifyOptions) -> ClassificationVerdict {
    if let Some(w) = compat_witness(c) {
        return ClassificationVerdict {
            symmetry_compatible: false,
            qprime_ok: false,
            divisibility_ok: false,
            witnesses: vec![
                (Stage::Compatibility, w),
                (Stage::QPrime, Witness::NotEvaluated),
                (Stage::Divisibility, Witness::NotEvaluated),
            ],
        };
    }
    let mut witnesses = Vec::new();
    let q = qprime_witness(c, opts.k4_fixed_points);
    let d = divisibility_witness(c, opts.divisibility);
    let (qprime_ok, divisibility_ok) = (q.is_none(), d.is_none());
    witnesses.extend(q.map(|w| (Stage::QPrime, w)));
    witnesses.extend(d.map(|w| (Stage::Divisibility, w)));
    ClassificationVerdict { symmetry_compatible: true, qprime_ok, divisibility_ok, witnesses }
}

/// Every source block is either entirely forgotten or lands inside one target block.
pub fn check_symmetry_compat(cand: &ForgetfulCandidate) -> bool {
    compat_witness(cand.view()).is_none()
}

/// Smooth-locus check. With points forgotten it fails exactly when the target
/// group has codimension-one fixed elements; with nothing forgotten each such
/// element, transported through the alignment, must lie in the source group.
pub fn check_qprime(cand: &ForgetfulCandidate, k4_fixed_points: bool) -> Result<bool, ForgetfulError> {
    if !check_symmetry_compat(cand) {
        return Err(ForgetfulError::PreconditionViolated("symmetry compatibility fails"));
    }
    Ok(qprime_witness(cand.view(), k4_fixed_points).is_none())
}

/// Divisibility of orbifold weights over all surviving pairs whose source
/// weights sum below 1. Signs are ignored; `Infinity` on the target side fails.
pub fn check_divisibility(cand: &ForgetfulCandidate, mode: DivisibilityMode) -> Result<bool, ForgetfulError> {
    if !check_symmetry_compat(cand) {
        return Err(ForgetfulError::PreconditionViolated("symmetry compatibility fails"));
    }
    Ok(divisibility_witness(cand.view(), mode).is_none())
}

pub fn classify_candidate(cand: &ForgetfulCandidate, opts: &ClassifyOptions) -> ClassificationVerdict {
    classify_ref(cand.view(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::SymmetryPartition;
    use crate::weights::WeightSystem;

    fn ws(nums: &[i64], den: i64) -> WeightSystem {
        WeightSystem::new(nums, den).unwrap()
    }

    fn part(k: usize, blocks: &[&[usize]]) -> SymmetryPartition {
        let mut all: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        let used: Vec<usize> = all.iter().flatten().copied().collect();
        all.extend((0..k).filter(|i| !used.contains(i)).map(|i| vec![i]));
        SymmetryPartition::new(k, all).unwrap()
    }

    fn cand(
        mu: WeightSystem,
        s: SymmetryPartition,
        nu: WeightSystem,
        t: SymmetryPartition,
        a: &[usize],
    ) -> ForgetfulCandidate {
        ForgetfulCandidate::new(mu, s, nu, t, a.to_vec()).unwrap()
    }

    #[test]
    fn compatibility() {
        let mu = ws(&[2, 2, 3, 3, 1, 1], 6);
        let s = part(6, &[&[4, 5]]);
        let nu = ws(&[1, 7, 7, 9], 12);
        let t = SymmetryPartition::singletons(4);
        assert!(check_symmetry_compat(&cand(mu.clone(), s.clone(), nu.clone(), t.clone(), &[0, 1, 2, 3])));
        let c = cand(mu, s, nu, t, &[0, 1, 2, 4]);
        assert!(!check_symmetry_compat(&c));
        let v = classify_candidate(&c, &ClassifyOptions::default());
        assert_eq!(v.witnesses[0], (Stage::Compatibility, Witness::SplitBlock { block: vec![4, 5] }));
        assert!(matches!(check_qprime(&c, true), Err(ForgetfulError::PreconditionViolated(_))));

        let mu = ws(&[2, 2, 2, 3, 3], 6);
        let c = cand(mu.clone(), part(5, &[&[0, 1, 2]]), mu, part(5, &[&[0, 1]]), &[0, 1, 2, 3, 4]);
        assert!(!check_symmetry_compat(&c));
    }

    #[test]
    fn smooth_locus() {
        let c = cand(
            ws(&[3, 3, 3, 3, 6, 2], 10),
            part(6, &[&[0, 1, 2, 3]]),
            ws(&[3, 3, 3, 3, 8], 10),
            part(5, &[&[0, 1, 2, 3]]),
            &[0, 1, 2, 3, 4],
        );
        assert!(!check_qprime(&c, true).unwrap());
        let v = classify_candidate(&c, &ClassifyOptions::default());
        assert!(v.symmetry_compatible && v.divisibility_ok && !v.qprime_ok);
        match &v.witnesses[..] {
            [(Stage::QPrime, Witness::FixedElement { element })] => assert_eq!(element.cycle_type(), vec![2, 2]),
            other => panic!("unexpected witnesses {other:?}"),
        }

        let c = cand(
            ws(&[3, 3, 3, 3, 3, 1], 8),
            SymmetryPartition::singletons(6),
            ws(&[3, 3, 3, 7], 8),
            SymmetryPartition::singletons(4),
            &[0, 1, 2, 3],
        );
        assert!(check_qprime(&c, true).unwrap());

        let mu = ws(&[2, 2, 2, 3, 3], 6);
        let s = part(5, &[&[0, 1, 2]]);
        assert!(check_qprime(&ForgetfulCandidate::identity(mu, s).unwrap(), true).unwrap());
    }

    #[test]
    fn divisibility() {
        let c = cand(
            ws(&[3, 3, 3, 3, 3, 1], 8),
            SymmetryPartition::singletons(6),
            ws(&[3, 3, 3, 7], 8),
            SymmetryPartition::singletons(4),
            &[0, 1, 2, 3],
        );
        assert!(check_divisibility(&c, DivisibilityMode::Literal).unwrap());
        assert!(check_divisibility(&c, DivisibilityMode::Bullets).unwrap());

        let mu = ws(&[2, 2, 3, 3, 1, 1], 6);
        let s = part(6, &[&[4, 5]]);
        let nu = ws(&[1, 7, 7, 9], 12);
        let t = SymmetryPartition::singletons(4);
        // slots (1/12, 7/12, 7/12, 9/12) <- (2/6, 3/6, 2/6, 3/6)
        let good = cand(mu.clone(), s.clone(), nu.clone(), t.clone(), &[0, 2, 1, 3]);
        assert!(check_divisibility(&good, DivisibilityMode::Literal).unwrap());
        // both 2/6 weights on slots 1/12 and 9/12
        let bad = cand(mu, s, nu, t, &[0, 2, 3, 1]);
        let v = classify_candidate(&bad, &ClassifyOptions::default());
        assert!(!v.divisibility_ok);
        assert!(v
            .witnesses
            .iter()
            .any(|(st, w)| *st == Stage::Divisibility && matches!(w, Witness::Divisibility { sources: (0, 1), .. })));

        let mu = ws(&[2, 2, 2, 3, 3], 6);
        let id = ForgetfulCandidate::identity(mu, part(5, &[&[0, 1, 2]])).unwrap();
        assert!(classify_candidate(&id, &ClassifyOptions::default()).is_orbifold_map());
    }

    #[test]
    fn accepted_examples() {
        let c = cand(
            ws(&[2, 2, 2, 3, 3], 6),
            part(5, &[&[0, 1, 2]]),
            ws(&[2, 2, 2, 1, 5], 6),
            part(5, &[&[0, 1, 2]]),
            &[0, 1, 2, 3, 4],
        );
        assert!(classify_candidate(&c, &ClassifyOptions::default()).is_orbifold_map());
    }

    #[test]
    fn infinite_target_value_fails() {
        // slots 3/6 and 3/6 sum to 1 on the target, source pair 2/6 + 2/6 is constrained
        let c = cand(
            ws(&[2, 2, 2, 2, 2, 2], 6),
            SymmetryPartition::singletons(6),
            ws(&[3, 3, 3, 3], 6),
            SymmetryPartition::singletons(4),
            &[0, 1, 2, 3],
        );
        assert!(!check_divisibility(&c, DivisibilityMode::Literal).unwrap());
    }
}
