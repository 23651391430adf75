//! Exact enumeration of weight systems on the projective line satisfying the
//! integral and half-integral conditions, and classification of the forgetful
//! maps between the corresponding ball-quotient moduli data.
//!
//! Indices are 0-based throughout the library; text formats and the command
//! line use 1-based indices.

pub mod enumerate;
pub mod forgetful;
pub mod geodesic;
pub mod partition;
pub mod perm;
pub mod rational;
pub mod weights;

pub use enumerate::{
    canonicalize, enumerate_catalog, standard_catalog, verify_lcd_bound, CatalogEntry, IntegralityMode, LcdReport,
    FOUR_POINT_MAX_DEN, MANY_POINT_MAX_DEN, MAX_POINTS,
};
pub use forgetful::{
    check_divisibility, check_qprime, check_symmetry_compat, classify_candidate, cross_ratio, divisor_fate,
    generate_candidates, scan, ClassificationVerdict, ClassifyOptions, Compactness, DivisibilityMode, DivisorFate,
    ForgetfulCandidate, ForgetfulError, PartitionChoice, ProjectivePoint, ScanFilter, ScanRow, ScanStage, Stage,
    Witness,
};
pub use geodesic::{
    commensurability_classes, hyperbolic_contractions, inclusion_dag, CommensurabilityClass, InclusionDag,
    InclusionEdge,
};
pub use partition::{
    admissible_partitions, check_half_int, commensurability_index, dij_sym, finest_partition, SymmetryPartition,
};
pub use perm::{codim1_fixed_elements, Permutation};
pub use rational::{ExactRational, ExtendedValue};
pub use weights::{
    check_int, contract, dij, dual, is_cocompact, stability_class, CoincidencePattern, Stability, WeightError,
    WeightSystem,
};
