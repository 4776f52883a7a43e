//! Double-precision geometry of the upper half-plane: distances, geodesics,
//! Mobius isometries, trirectangles and the Riemannian center of mass.

pub mod io;
pub mod isometry;
pub mod karcher;
pub mod point;
pub mod trirectangle;

pub use isometry::Isometry2;
pub use karcher::{
    average_maps, karcher_gradient, karcher_mean, karcher_mean_detailed, product_karcher_mean, KarcherResult,
    MassDistribution,
};
pub use point::{HPoint, ProductPoint, Tangent};
pub use trirectangle::{realize_group, solve_trirectangle, GroupRealization, Trirectangle};
