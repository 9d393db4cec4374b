//! Scattered linear sets: defining maps, families, searches, and exhaustive
//! verification of points, weights and line intersections.

pub mod ambient;
pub mod enumerate;
pub mod families;
pub mod linpoly;
pub mod profile;
pub mod spec;
pub mod vecspace;

pub use ambient::{OmegaSpec, PlaneAmbient};
pub use enumerate::{
    adjoint_image_property, build_u, enumerate_points, is_scattered, oracle_scattered_pairs,
    oracle_scattered_qf, LinearSet, ProjPoint, WeightedPoint,
};
pub use families::{
    build_family, check_binomial_condition, check_binomial_q2_conditions,
    check_family2_conditions, check_monomial_conditions, search_binomial_b, FamilyParams,
    SearchMode,
};
pub use linpoly::LinPoly;
pub use profile::{intersection_numbers, rank_bounds, two_intersection_profile};
pub use spec::{ConditionCheck, ConditionReport, FamilyTag, LinearSetSpec};
pub use vecspace::{
    agrees_with_plane_enumeration, direct_sum, enumerate_vector_linear_set, plane_subspace,
    pseudoregulus_line_u, VecSubspace, VectorLinearSet,
};
