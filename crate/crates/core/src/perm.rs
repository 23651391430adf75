//! Permutations of point indices and the group elements whose fixed loci have
//! codimension one in the configuration space.

use std::fmt;

use crate::partition::SymmetryPartition;

/// A permutation of `{0..k}` stored as its image list: `i ↦ image[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation { image: (0..k).collect() }
    }

    /// `None` unless `image` is a bijection of `{0..k}`.
    pub fn from_image(image: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation { image })
    }

    /// Product of disjoint transpositions.
    pub fn from_transpositions(k: usize, pairs: &[(usize, usize)]) -> Self {
        let mut p = Self::identity(k);
        for &(a, b) in pairs {
            p.image.swap(a, b);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Non-trivial cycles, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            let mut c = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                c.push(j);
                j = self.image[j];
            }
            out.push(c);
        }
        out
    }

    /// Lengths of the non-trivial cycles, sorted.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    /// Maps every index into its own block of `p`.
    pub fn preserves(&self, p: &SymmetryPartition) -> bool {
        (0..self.len()).all(|i| p.same_block(i, self.image[i]))
    }
}

/// Cycle notation with 1-based indices; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (p, i) in c.iter().enumerate() {
                if p > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", i + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Number of disjoint transpositions whose fixed locus has codimension one
/// for `k` points, or `None` when no element qualifies.
fn codim1_transposition_count(k: usize, include_k4: bool) -> Option<usize> {
    match k {
        4 if include_k4 => Some(1),
        5 => Some(2),
        6 => Some(3),
        _ => None,
    }
}

/// Elements of the group of `p` with codimension-one fixed locus: single
/// transpositions for 4 points (when `include_k4`), bitranspositions for 5,
/// tritranspositions for 6, nothing otherwise. Sorted.
pub fn codim1_fixed_elements(k: usize, p: &SymmetryPartition, include_k4: bool) -> Vec<Permutation> {
    let Some(r) = codim1_transposition_count(k, include_k4) else {
        return Vec::new();
    };
    let pairs: Vec<(usize, usize)> =
        (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| p.same_block(i, j)).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(r);
    fn rec(
        pairs: &[(usize, usize)],
        from: usize,
        r: usize,
        k: usize,
        used: &mut Vec<bool>,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Permutation>,
    ) {
        if chosen.len() == r {
            out.push(Permutation::from_transpositions(k, chosen));
            return;
        }
        for (n, &(a, b)) in pairs.iter().enumerate().skip(from) {
            if used[a] || used[b] {
                continue;
            }
            used[a] = true;
            used[b] = true;
            chosen.push((a, b));
            rec(pairs, n + 1, r, k, used, chosen, out);
            chosen.pop();
            used[a] = false;
            used[b] = false;
        }
    }
    rec(&pairs, 0, r, k, &mut vec![false; k], &mut chosen, &mut out);
    out.sort();
    out
}
