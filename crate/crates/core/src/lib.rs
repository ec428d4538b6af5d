//! Copolar duality and copolar addition on cobounded complete convex subsets
//! of the positive orthant, with exact covolumes, Monge-Ampère capacities of
//! toric Reinhardt compacts, Newton numbers, and grid-based toric geodesics.
//!
//! The polyhedral calculus is generic over [`Scalar`]: `f64` for everyday
//! work, `f32`, and [`BigRational`] for exact arithmetic. The grid machinery
//! in [`transforms`] works in `f64`.

pub mod body;
pub mod covolume;
pub mod error;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod newton;
pub mod scalar;
pub mod transforms;
pub mod vertex;

pub use body::{
    copolar_combination, copolar_of_body, copolar_of_dual, copolar_sum, dual_combination,
    hull_complete, hull_complete_negative, hull_complete_positive, minkowski_combination, Cone,
    CopolarBody, DualGenerators, Hull, SupportFunction,
};
pub use covolume::covolume;
pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use scalar::{Extended, Scalar};
pub use newton::{newton_number, newton_polyhedron, ExponentSet, IndicatorWeights, NewtonNumber};
pub use transforms::{GridBox, GridFn, ReinhardtSpec};
pub use vertex::{Halfspace, VertexSet};

/// Double-precision body.
pub type Body = CopolarBody<f64>;
/// Double-precision dual set.
pub type Dual = DualGenerators<f64>;
/// Exact rational body.
pub type ExactBody = CopolarBody<BigRational>;
/// Exact rational dual set.
pub type ExactDual = DualGenerators<BigRational>;
/// Single-precision body.
pub type Body32 = CopolarBody<f32>;
