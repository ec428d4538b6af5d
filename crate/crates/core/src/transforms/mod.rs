//! Grid-based convex-function machinery: Legendre transforms, relative
//! extremal convex images, toric geodesics, capacities and Reinhardt volumes.

pub mod grid;
pub mod legendre;
pub mod toric;

pub use grid::{GridBox, GridFn, DEFAULT_NODES_PER_AXIS};
pub use legendre::{conjugate_1d, legendre_grid};
pub use toric::{
    capacity, extremal_convex_image, extremal_gap, geodesic_convex_image, grid_tolerance,
    legendre_duality_residual, multiplicative_combination, reinhardt_volume, ExtremalGap,
    GeodesicSolver, ReinhardtSpec, ReinhardtVolume,
};
