//! Symmetry partitions: which equal weights are allowed to be permuted, the
//! half-integrality condition, finest and admissible partitions, and the
//! index between nested partitions.

use std::fmt;

use crate::rational::ExtendedValue;
use crate::weights::{WeightError, WeightSystem};

/// An ordered partition of `{0..k}`. Blocks are sorted internally and listed
/// by their smallest element, so equal partitions compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymmetryPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl SymmetryPartition {
    pub fn new(k: usize, blocks: Vec<Vec<usize>>) -> Result<Self, WeightError> {
        let mut seen = vec![false; k];
        for block in &blocks {
            if block.is_empty() {
                return Err(WeightError::NotAPartition(k));
            }
            for &i in block {
                if i >= k {
                    return Err(WeightError::IndexOutOfRange { index: i, len: k });
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(WeightError::NotAPartition(k));
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(WeightError::NotAPartition(k));
        }
        Ok(Self::normalized(k, blocks))
    }

    /// Builds the partition from a block label per index.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            match groups.iter_mut().find(|(g, _)| *g == l) {
                Some((_, b)) => b.push(i),
                None => groups.push((l, vec![i])),
            }
        }
        Self::normalized(labels.len(), groups.into_iter().map(|(_, b)| b).collect())
    }

    fn normalized(k: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        let mut block_of = vec![0; k];
        for (t, b) in blocks.iter().enumerate() {
            for &i in b {
                block_of[i] = t;
            }
        }
        SymmetryPartition { blocks, block_of }
    }

    /// The trivial partition: every index alone, trivial group.
    pub fn singletons(k: usize) -> Self {
        Self::normalized(k, (0..k).map(|i| vec![i]).collect())
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.block_of[i] == self.block_of[j]
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == self.len()
    }

    /// Order of the product of symmetric groups on the blocks.
    pub fn group_order(&self) -> u64 {
        self.blocks.iter().map(|b| factorial(b.len())).product()
    }

    /// Every block of `self` lies inside a block of `coarse`.
    pub fn refines(&self, coarse: &SymmetryPartition) -> bool {
        self.len() == coarse.len() && self.blocks.iter().all(|b| b.iter().all(|&i| coarse.same_block(i, b[0])))
    }

    /// Every block carries a single weight value.
    pub fn respects(&self, mu: &WeightSystem) -> bool {
        self.len() == mu.len()
            && self.blocks.iter().all(|b| b.iter().all(|&i| mu.numerators()[i] == mu.numerators()[b[0]]))
    }

    /// Sizes of the non-singleton blocks, largest first.
    pub fn shape(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(Vec::len).filter(|&n| n > 1).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// Relabels indices: old index `i` becomes `map[i]`.
    pub fn relabeled(&self, map: &[usize]) -> SymmetryPartition {
        Self::normalized(self.len(), self.blocks.iter().map(|b| b.iter().map(|&i| map[i]).collect()).collect())
    }

    /// Blocks as 1-based index lists.
    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.iter().map(|i| i + 1).collect()).collect()
    }
}

impl fmt::Display for SymmetryPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (t, b) in self.blocks.iter().enumerate() {
            if t > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (p, i) in b.iter().enumerate() {
                if p > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", i + 1)?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SymmetryPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Orbifold weight with symmetry: `d_ij`, doubled when `i` and `j` share a block.
pub fn dij_sym(mu: &WeightSystem, sigma: &SymmetryPartition, i: usize, j: usize) -> Result<ExtendedValue, WeightError> {
    let d = crate::weights::dij(mu, i, j)?;
    if sigma.len() != mu.len() {
        return Err(WeightError::NotAPartition(mu.len()));
    }
    Ok(if sigma.same_block(i, j) { d.double() } else { d })
}

/// Classification of a constrained pair value `d / (d - s)`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum PairKind {
    Unconstrained,
    Integer,
    StrictHalf,
    Other,
}

pub(crate) fn pair_kind(mu: &WeightSystem, i: usize, j: usize) -> PairKind {
    let d = mu.lcd();
    let s = mu.numerators()[i] + mu.numerators()[j];
    if s >= d {
        return PairKind::Unconstrained;
    }
    let gap = d - s;
    if d.is_multiple_of(gap) {
        PairKind::Integer
    } else if (2 * d).is_multiple_of(gap) {
        PairKind::StrictHalf
    } else {
        PairKind::Other
    }
}

/// The half-integrality condition for `(μ, Σ)`: constrained cross-block pairs
/// are integral, constrained same-block pairs lie in ½ℤ. False when `Σ` does
/// not respect the weights.
pub fn check_half_int(mu: &WeightSystem, sigma: &SymmetryPartition) -> bool {
    if !sigma.respects(mu) {
        return false;
    }
    let k = mu.len();
    (0..k).all(|i| {
        (i + 1..k).all(|j| match pair_kind(mu, i, j) {
            PairKind::Unconstrained | PairKind::Integer => true,
            PairKind::StrictHalf => sigma.same_block(i, j),
            PairKind::Other => false,
        })
    })
}

/// The coarsest grouping forced by strictly half-integral pair values, or
/// `None` when no partition makes `μ` half-integral.
pub fn finest_partition(mu: &WeightSystem) -> Option<SymmetryPartition> {
    let k = mu.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..k {
        for j in i + 1..k {
            match pair_kind(mu, i, j) {
                PairKind::Other => return None,
                PairKind::StrictHalf => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
                _ => {}
            }
        }
    }
    let labels: Vec<usize> = (0..k).map(|i| find(&mut parent, i)).collect();
    let p = SymmetryPartition::from_labels(&labels);
    p.respects(mu).then_some(p)
}

/// Every partition making `μ` half-integral: the coarsenings of the finest
/// partition that merge only blocks of equal weight. Sorted.
pub fn admissible_partitions(mu: &WeightSystem) -> Vec<SymmetryPartition> {
    let Some(finest) = finest_partition(mu) else {
        return Vec::new();
    };
    // Group finest blocks by weight; each group is coarsened independently.
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (t, b) in finest.blocks().iter().enumerate() {
        let w = mu.numerators()[b[0]];
        match groups.iter_mut().find(|g| mu.numerators()[finest.blocks()[g[0]][0]] == w) {
            Some(g) => g.push(t),
            None => groups.push(vec![t]),
        }
    }
    let mut out = vec![Vec::<Vec<usize>>::new()];
    for g in &groups {
        let mut next = Vec::new();
        for sp in set_partitions(g.len()) {
            let merged: Vec<Vec<usize>> = sp
                .iter()
                .map(|part| part.iter().flat_map(|&p| finest.blocks()[g[p]].iter().copied()).collect())
                .collect();
            for prefix in &out {
                let mut blocks = prefix.clone();
                blocks.extend(merged.iter().cloned());
                next.push(blocks);
            }
        }
        out = next;
    }
    let mut parts: Vec<SymmetryPartition> =
        out.into_iter().map(|blocks| SymmetryPartition::normalized(mu.len(), blocks)).collect();
    parts.sort();
    parts
}

/// All set partitions of `{0..n}` as lists of blocks (restricted growth strings).
pub(crate) fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(pos: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if pos == rgs.len() {
            let mut blocks = vec![Vec::new(); if rgs.is_empty() { 0 } else { max + 1 }];
            for (i, &b) in rgs.iter().enumerate() {
                blocks[b].push(i);
            }
            out.push(blocks);
            return;
        }
        let limit = if pos == 0 { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs[pos] = b;
            rec(pos + 1, max.max(b), rgs, out);
        }
    }
    rec(0, 0, &mut rgs, &mut out);
    out
}

/// `[group(coarse) : group(fine)]`, the index between the symmetry groups of
/// nested partitions.
pub fn commensurability_index(fine: &SymmetryPartition, coarse: &SymmetryPartition) -> Result<u64, WeightError> {
    if !fine.refines(coarse) {
        return Err(WeightError::NotARefinement);
    }
    Ok(coarse.group_order() / fine.group_order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ExactRational;

    fn ws(nums: &[i64], den: i64) -> WeightSystem {
        WeightSystem::new(nums, den).unwrap()
    }

    fn part(k: usize, blocks: &[&[usize]]) -> SymmetryPartition {
        let mut all: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        let used: Vec<usize> = all.iter().flatten().copied().collect();
        all.extend((0..k).filter(|i| !used.contains(i)).map(|i| vec![i]));
        SymmetryPartition::new(k, all).unwrap()
    }

    #[test]
    fn normal_form_and_display() {
        let p = SymmetryPartition::new(5, vec![vec![4], vec![2, 0, 1], vec![3]]).unwrap();
        assert_eq!(p.to_string(), "{{1,2,3},{4},{5}}");
        assert_eq!(p.group_order(), 6);
        assert!(SymmetryPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(SymmetryPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn symmetric_weights() {
        let mu = ws(&[2, 2, 2, 1, 5], 6);
        let s = part(5, &[&[0, 1, 2]]);
        let v = |n| ExtendedValue::Finite(ExactRational::from_integer(n));
        assert_eq!(dij_sym(&mu, &s, 0, 1).unwrap(), v(6));
        assert_eq!(dij_sym(&mu, &s, 0, 3).unwrap(), v(2));
        let t = SymmetryPartition::singletons(5);
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    assert_eq!(dij_sym(&mu, &t, i, j).unwrap(), crate::weights::dij(&mu, i, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn half_int_condition() {
        let mu = ws(&[3, 3, 3, 3, 6, 2], 10);
        assert!(check_half_int(&mu, &part(6, &[&[0, 1, 2, 3]])));
        assert!(!check_half_int(&mu, &SymmetryPartition::singletons(6)));
        assert!(check_half_int(&ws(&[3, 3, 3, 3, 3, 1], 8), &SymmetryPartition::singletons(6)));
    }

    #[test]
    fn finest() {
        assert_eq!(finest_partition(&ws(&[3, 3, 3, 3, 6, 2], 10)), Some(part(6, &[&[0, 1, 2, 3]])));
        assert_eq!(finest_partition(&ws(&[3, 3, 3, 3, 3, 1], 8)), Some(SymmetryPartition::singletons(6)));
        assert_eq!(finest_partition(&ws(&[2, 2, 3, 3, 1, 1], 6)), Some(part(6, &[&[4, 5]])));
        assert_eq!(finest_partition(&ws(&[1, 1, 2, 2, 2, 2], 5)), None);
    }

    #[test]
    fn admissible() {
        let a = admissible_partitions(&ws(&[3, 3, 3, 3, 6, 2], 10));
        assert_eq!(a, vec![part(6, &[&[0, 1, 2, 3]])]);
        let a = admissible_partitions(&ws(&[3, 3, 3, 3, 3, 1], 8));
        assert_eq!(a.len(), 52);
        assert!(a.iter().all(|p| p.block_of(5) != p.block_of(0) && p.blocks().iter().any(|b| b == &[5])));
        assert!(admissible_partitions(&ws(&[1, 1, 2, 2, 2, 2], 5)).is_empty());
        assert_eq!(set_partitions(4).len(), 15);
        assert_eq!(set_partitions(0).len(), 1);
    }

    #[test]
    fn index() {
        let one = SymmetryPartition::singletons(5);
        let s3 = part(5, &[&[0, 1, 2]]);
        assert_eq!(commensurability_index(&one, &s3).unwrap(), 6);
        assert_eq!(commensurability_index(&part(4, &[&[0, 1], &[2, 3]]), &part(4, &[&[0, 1, 2, 3]])).unwrap(), 6);
        assert_eq!(commensurability_index(&s3, &s3).unwrap(), 1);
        assert!(matches!(commensurability_index(&s3, &one), Err(WeightError::NotARefinement)));
    }
}
