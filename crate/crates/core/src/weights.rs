//! Weight systems on the projective line and the pointwise predicates on them:
//! orbifold weights, the integrality condition, cocompactness, stability of
//! coincidences, contraction and 4-point duality.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::rational::{ExactRational, ExtendedValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("a weight system needs at least 4 points, got {0}")]
    TooFewPoints(usize),
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("weight {0} is not strictly between 0 and 1")]
    WeightOutOfRange(ExactRational),
    #[error("weights sum to {0}, expected 2")]
    BadSum(ExactRational),
    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("indices must be distinct, got {0} twice")]
    RepeatedIndex(usize),
    #[error("contraction subset needs at least 2 indices")]
    BadSubset,
    #[error("contraction is not hyperbolic: subset weight sum {0} is not below 1")]
    NotHyperbolic(ExactRational),
    #[error("duality is only defined for 4 points, got {0}")]
    NotFourPoints(usize),
    #[error("blocks do not form a partition of {0} indices")]
    NotAPartition(usize),
    #[error("partition is not a refinement of the coarser partition")]
    NotARefinement,
}

/// An ordered tuple of rational weights in (0,1) summing to 2.
///
/// Stored as integer numerators over the least common denominator, so
/// `den` is always the lcd of the weights.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightSystem {
    den: u32,
    nums: Vec<u32>,
}

impl WeightSystem {
    /// Builds `nums / den`, reducing to the least common denominator.
    pub fn new(nums: &[i64], den: i64) -> Result<Self, WeightError> {
        if den <= 0 {
            return Err(WeightError::ZeroDenominator);
        }
        if nums.len() < 4 {
            return Err(WeightError::TooFewPoints(nums.len()));
        }
        for &n in nums {
            if n <= 0 || n >= den {
                return Err(WeightError::WeightOutOfRange(ExactRational::new(n, den)));
            }
        }
        let sum: i64 = nums.iter().sum();
        if sum != 2 * den {
            return Err(WeightError::BadSum(ExactRational::new(sum, den)));
        }
        let g = nums.iter().fold(den, |g, &n| g.gcd(&n));
        Ok(WeightSystem { den: (den / g) as u32, nums: nums.iter().map(|&n| (n / g) as u32).collect() })
    }

    pub fn from_rationals(weights: &[ExactRational]) -> Result<Self, WeightError> {
        let lcd = weights.iter().fold(1i64, |l, w| l.lcm(&w.denom()));
        let nums: Vec<i64> = weights.iter().map(|w| w.numer() * (lcd / w.denom())).collect();
        Self::new(&nums, lcd)
    }

    /// Skips validation; callers guarantee the invariants and lowest terms.
    pub(crate) fn from_reduced(nums: Vec<u32>, den: u32) -> Self {
        debug_assert!(nums.iter().map(|&n| n as u64).sum::<u64>() == 2 * den as u64);
        WeightSystem { den, nums }
    }

    /// Number of points `k`.
    pub fn len(&self) -> usize {
        self.nums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nums.is_empty()
    }

    /// Complex dimension `k - 3` of the moduli space.
    pub fn dimension(&self) -> usize {
        self.nums.len() - 3
    }

    pub fn lcd(&self) -> u32 {
        self.den
    }

    /// Numerators at the least common denominator.
    pub fn numerators(&self) -> &[u32] {
        &self.nums
    }

    pub fn weight(&self, i: usize) -> ExactRational {
        ExactRational::new(self.nums[i] as i64, self.den as i64)
    }

    pub fn weights(&self) -> Vec<ExactRational> {
        (0..self.len()).map(|i| self.weight(i)).collect()
    }

    /// Compares `μ_i + μ_j` with 1.
    pub fn pair_sum_cmp(&self, i: usize, j: usize) -> Ordering {
        (self.nums[i] + self.nums[j]).cmp(&self.den)
    }

    /// Sum of the weights indexed by `subset`, compared with 1.
    pub fn subset_sum_cmp(&self, subset: &[usize]) -> Ordering {
        subset.iter().map(|&i| self.nums[i]).sum::<u32>().cmp(&self.den)
    }

    pub fn subset_sum(&self, subset: &[usize]) -> ExactRational {
        let s: u32 = subset.iter().map(|&i| self.nums[i]).sum();
        ExactRational::new(s as i64, self.den as i64)
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<(), WeightError> {
        if i < self.len() {
            Ok(())
        } else {
            Err(WeightError::IndexOutOfRange { index: i, len: self.len() })
        }
    }

    /// `(1 - μ_i - μ_j)^{-1}` without range checks.
    pub(crate) fn pair_value(&self, i: usize, j: usize) -> ExtendedValue {
        let gap = self.den as i64 - (self.nums[i] + self.nums[j]) as i64;
        if gap == 0 {
            ExtendedValue::Infinity
        } else {
            ExtendedValue::Finite(ExactRational::new(self.den as i64, gap))
        }
    }

    /// The same weights sorted non-increasingly.
    pub fn sorted_desc(&self) -> WeightSystem {
        let mut nums = self.nums.clone();
        nums.sort_unstable_by(|a, b| b.cmp(a));
        WeightSystem { den: self.den, nums }
    }

    /// Reorders the weights so that new position `p` holds old weight `order[p]`.
    pub fn permuted(&self, order: &[usize]) -> WeightSystem {
        WeightSystem { den: self.den, nums: order.iter().map(|&i| self.nums[i]).collect() }
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, n) in self.nums.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")/{}", self.den)
    }
}

impl fmt::Debug for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Orbifold weight `d_ij = (1 - μ_i - μ_j)^{-1}`; `Infinity` when the pair
/// sums to exactly 1 and negative when it sums past 1.
pub fn dij(mu: &WeightSystem, i: usize, j: usize) -> Result<ExtendedValue, WeightError> {
    mu.check_index(i)?;
    mu.check_index(j)?;
    if i == j {
        return Err(WeightError::RepeatedIndex(i));
    }
    Ok(mu.pair_value(i, j))
}

/// The integrality condition: every pair with `μ_i + μ_j < 1` has an integral
/// orbifold weight.
pub fn check_int(mu: &WeightSystem) -> bool {
    let d = mu.den;
    let k = mu.len();
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let s = mu.nums[i] + mu.nums[j];
            s >= d || d.is_multiple_of(d - s)
        })
    })
}

/// No nonempty proper subset of the weights sums to exactly 1.
///
/// Subset-sum over the numerators at the lcd.
pub fn is_cocompact(mu: &WeightSystem) -> bool {
    let target = mu.den as usize;
    let mut reachable = vec![false; target + 1];
    reachable[0] = true;
    for &n in &mu.nums {
        let n = n as usize;
        for s in (n..=target).rev() {
            if reachable[s - n] {
                reachable[s] = true;
            }
        }
        if reachable[target] {
            return false;
        }
    }
    true
}

/// Which coincidences of points are allowed for a weight system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoincidencePattern {
    blocks: Vec<Vec<usize>>,
}

impl CoincidencePattern {
    /// `coalesced` lists the groups of points that come together; every other
    /// index becomes a singleton.
    pub fn new(k: usize, coalesced: &[Vec<usize>]) -> Result<Self, WeightError> {
        let mut seen = vec![false; k];
        let mut blocks = Vec::new();
        for block in coalesced {
            let mut b = block.clone();
            b.sort_unstable();
            for &i in &b {
                if i >= k {
                    return Err(WeightError::IndexOutOfRange { index: i, len: k });
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(WeightError::NotAPartition(k));
                }
            }
            if !b.is_empty() {
                blocks.push(b);
            }
        }
        blocks.extend((0..k).filter(|&i| !seen[i]).map(|i| vec![i]));
        blocks.sort();
        Ok(CoincidencePattern { blocks })
    }

    /// The pattern in which only `i` and `j` coincide.
    pub fn pair(k: usize, i: usize, j: usize) -> Result<Self, WeightError> {
        Self::new(k, &[vec![i, j]])
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn point_count(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    StrictlySemistable,
    Unstable,
}

pub fn stability_class(mu: &WeightSystem, pattern: &CoincidencePattern) -> Stability {
    debug_assert_eq!(pattern.point_count(), mu.len());
    let mut boundary = false;
    for block in pattern.blocks().iter().filter(|b| b.len() > 1) {
        match mu.subset_sum_cmp(block) {
            Ordering::Less => {}
            Ordering::Equal => boundary = true,
            Ordering::Greater => return Stability::Unstable,
        }
    }
    if boundary {
        Stability::StrictlySemistable
    } else {
        Stability::Stable
    }
}

/// Merges the weights indexed by `subset` into their sum, placed last; the
/// other weights keep their order. The subset must sum to less than 1.
pub fn contract(mu: &WeightSystem, subset: &[usize]) -> Result<WeightSystem, WeightError> {
    let mut members = vec![false; mu.len()];
    for &i in subset {
        mu.check_index(i)?;
        if std::mem::replace(&mut members[i], true) {
            return Err(WeightError::RepeatedIndex(i));
        }
    }
    if subset.len() < 2 {
        return Err(WeightError::BadSubset);
    }
    if mu.subset_sum_cmp(subset) != Ordering::Less {
        return Err(WeightError::NotHyperbolic(mu.subset_sum(subset)));
    }
    let merged: u32 = subset.iter().map(|&i| mu.nums[i]).sum();
    let mut nums: Vec<i64> = (0..mu.len()).filter(|&i| !members[i]).map(|i| mu.nums[i] as i64).collect();
    nums.push(merged as i64);
    if nums.len() < 4 {
        return Err(WeightError::TooFewPoints(nums.len()));
    }
    WeightSystem::new(&nums, mu.den as i64)
}

/// The dual 4-tuple `(1 - μ_1, ..., 1 - μ_4)`.
pub fn dual(mu: &WeightSystem) -> Result<WeightSystem, WeightError> {
    if mu.len() != 4 {
        return Err(WeightError::NotFourPoints(mu.len()));
    }
    let nums: Vec<u32> = mu.nums.iter().map(|&n| mu.den - n).collect();
    Ok(WeightSystem::from_reduced(nums, mu.den))
}
