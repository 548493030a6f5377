//! Plane regions and point sets: hypocycloids `H_k`, polygons `P_k`,
//! Minkowski sums and products, dihedral closures, outer boundaries, and the
//! Laurent polynomials whose images contain prime-power supercharacters.

mod curves;
mod distance;
mod laurent;
mod minkowski;
mod region;

pub use curves::{
    cusp_count, hypocycloid_boundary, minkowski_power_boundary, polygon_boundary, product_polygon_boundary,
    product_polygon_segments, BoundaryCurve,
};
pub use distance::{dedup_points, directed_hausdorff, hausdorff_distance, sets_match, PointIndex};
pub use laurent::{laurent_eval, laurent_witness, LaurentMapSpec};
pub use minkowski::{
    backward_cone, dihedral_closure, minkowski_product, minkowski_sum, outer_boundary, outer_boundary_of_product,
    outer_boundary_of_sum, DihedralClosure, DEFAULT_BUDGET,
};
pub use region::{contains, region_from_boundary, Region, DEFAULT_BINS};

/// Bin index of `z` among `bins` equal angular sectors starting at angle 0.
pub(crate) fn angle_bin(z: crate::C64, bins: usize) -> usize {
    let t = crate::math::angle(z) / core::f64::consts::TAU;
    ((t * bins as f64) as usize).min(bins - 1)
}
