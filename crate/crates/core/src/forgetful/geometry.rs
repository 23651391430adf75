use std::cmp::Ordering;

use crate::rational::{ExactRational, ExtendedValue};

use super::{ForgetfulCandidate, ForgetfulError};

/// A point of the projective line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProjectivePoint {
    Finite(ExactRational),
    Infinity,
}

impl ProjectivePoint {
    pub fn int(n: i64) -> Self {
        ProjectivePoint::Finite(ExactRational::from_integer(n))
    }

    fn homogeneous(&self) -> (ExactRational, ExactRational) {
        match self {
            ProjectivePoint::Finite(x) => (*x, ExactRational::one()),
            ProjectivePoint::Infinity => (ExactRational::one(), ExactRational::zero()),
        }
    }
}

/// `[p, q] = p_x q_z - q_x p_z`, zero exactly when the points coincide.
fn bracket(p: ProjectivePoint, q: ProjectivePoint) -> ExactRational {
    let ((px, pz), (qx, qz)) = (p.homogeneous(), q.homogeneous());
    px * qz - qx * pz
}

/// `(x3 - x2)(x4 - x1) / ((x3 - x1)(x4 - x2))`, evaluated in homogeneous
/// coordinates so that the point at infinity needs no special case. One
/// coincident pair is allowed: `x1 = x2` or `x3 = x4` gives 1, `x1 = x4` or
/// `x2 = x3` gives 0, `x1 = x3` or `x2 = x4` gives `Infinity`.
pub fn cross_ratio(
    x1: ProjectivePoint,
    x2: ProjectivePoint,
    x3: ProjectivePoint,
    x4: ProjectivePoint,
) -> Result<ExtendedValue, ForgetfulError> {
    let num = bracket(x3, x2) * bracket(x4, x1);
    let den = bracket(x3, x1) * bracket(x4, x2);
    if num.is_zero() && den.is_zero() {
        return Err(ForgetfulError::Degenerate);
    }
    Ok(match den.recip() {
        Some(r) => ExtendedValue::Finite(num * r),
        None => ExtendedValue::Infinity,
    })
}

/// Where a source divisor `D_ij` goes under a forgetful map. Target pairs are
/// 0-based slot pairs in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DivisorFate {
    /// A forgotten point is involved; the divisor maps onto the whole target.
    Surjective,
    /// Onto the divisor of the aligned target pair.
    OntoDivisor((usize, usize)),
    /// The aligned target pair sums to exactly 1: onto a cusp.
    ToCusp((usize, usize)),
    /// The aligned target pair is unstable; on 4 points the divisor is
    /// contracted to the point where the complementary pair coincides.
    ContractedTo((usize, usize)),
    /// Unstable target pair on 5 or more points; the image is determined by
    /// the extension of the map.
    ExtensionDetermined,
}

pub fn divisor_fate(cand: &ForgetfulCandidate, i: usize, j: usize) -> Result<DivisorFate, ForgetfulError> {
    let k = cand.source.len();
    if i >= k || j >= k || i == j {
        return Err(ForgetfulError::PreconditionViolated("source pair must be two distinct source indices"));
    }
    if cand.source.pair_sum_cmp(i, j) != Ordering::Less {
        return Err(ForgetfulError::PreconditionViolated("source pair must sum below 1"));
    }
    let inv = cand.view().inverse();
    let (Some(p), Some(q)) = (inv[i], inv[j]) else {
        return Ok(DivisorFate::Surjective);
    };
    let pair = (p.min(q), p.max(q));
    Ok(match cand.target.pair_sum_cmp(p, q) {
        Ordering::Less => DivisorFate::OntoDivisor(pair),
        Ordering::Equal => DivisorFate::ToCusp(pair),
        Ordering::Greater if cand.target.len() == 4 => {
            let rest: Vec<usize> = (0..4).filter(|&s| s != p && s != q).collect();
            DivisorFate::ContractedTo((rest[0], rest[1]))
        }
        Ordering::Greater => DivisorFate::ExtensionDetermined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::SymmetryPartition;
    use crate::weights::WeightSystem;

    fn pt(n: i64) -> ProjectivePoint {
        ProjectivePoint::int(n)
    }

    fn v(n: i64, d: i64) -> ExtendedValue {
        ExtendedValue::Finite(ExactRational::new(n, d))
    }

    #[test]
    fn cross_ratio_values() {
        assert_eq!(cross_ratio(pt(0), pt(1), pt(2), pt(3)).unwrap(), v(3, 4));
        assert_eq!(cross_ratio(pt(5), pt(5), pt(2), pt(3)).unwrap(), v(1, 1));
        assert_eq!(cross_ratio(pt(0), pt(1), pt(7), pt(7)).unwrap(), v(1, 1));
        assert_eq!(cross_ratio(pt(0), pt(1), pt(1), pt(3)).unwrap(), v(0, 1));
        assert_eq!(cross_ratio(pt(0), pt(1), pt(0), pt(3)).unwrap(), ExtendedValue::Infinity);
        assert_eq!(cross_ratio(ProjectivePoint::Infinity, pt(0), pt(1), pt(2)).unwrap(), v(1, 2));
        assert!(matches!(cross_ratio(pt(1), pt(1), pt(1), pt(3)), Err(ForgetfulError::Degenerate)));
    }

    #[test]
    fn fates_for_the_accepted_map() {
        let c = ForgetfulCandidate::new(
            WeightSystem::new(&[3, 3, 3, 3, 3, 1], 8).unwrap(),
            SymmetryPartition::singletons(6),
            WeightSystem::new(&[3, 3, 3, 7], 8).unwrap(),
            SymmetryPartition::singletons(4),
            vec![0, 1, 2, 3],
        )
        .unwrap();
        for i in 0..4 {
            assert_eq!(divisor_fate(&c, i, 4).unwrap(), DivisorFate::Surjective);
            assert_eq!(divisor_fate(&c, i, 5).unwrap(), DivisorFate::Surjective);
        }
        assert_eq!(divisor_fate(&c, 0, 1).unwrap(), DivisorFate::OntoDivisor((0, 1)));
        assert_eq!(divisor_fate(&c, 2, 3).unwrap(), DivisorFate::ContractedTo((0, 1)));
        assert_eq!(divisor_fate(&c, 0, 3).unwrap(), DivisorFate::ContractedTo((1, 2)));
        assert!(divisor_fate(&c, 0, 0).is_err());
    }

    #[test]
    fn cusp_and_extension() {
        let c = ForgetfulCandidate::new(
            WeightSystem::new(&[2, 2, 2, 3, 3], 6).unwrap(),
            SymmetryPartition::singletons(5),
            WeightSystem::new(&[2, 2, 2, 1, 5], 6).unwrap(),
            SymmetryPartition::singletons(5),
            vec![0, 1, 2, 3, 4],
        )
        .unwrap();
        // source 2/6 + 3/6 < 1 onto slots 1/6 + 5/6 = 1
        let c2 = ForgetfulCandidate { alignment: vec![0, 1, 3, 2, 4], ..c.clone() };
        assert_eq!(divisor_fate(&c2, 2, 4).unwrap(), DivisorFate::ToCusp((3, 4)));
        // slots 2/6 + 5/6 > 1 on five points
        assert_eq!(divisor_fate(&c, 0, 4).unwrap(), DivisorFate::ExtensionDetermined);
        assert!(matches!(divisor_fate(&c, 3, 4), Err(ForgetfulError::PreconditionViolated(_))));
    }
}
