//! Exact arithmetic in real quadratic fields and their quadratic extensions,
//! minimal polynomials, certified real embeddings, house and Mahler measure.

pub mod enclosure;
pub mod poly;
pub mod quad;
pub mod radical;
pub mod rational;
pub mod roots;
pub mod tower;
pub mod units;

pub use enclosure::{Interval, RealEnclosure};
pub use poly::IntPolynomial;
pub use quad::{BaseEmbedding, QuadElem, QuadField};
pub use radical::{RadicalElem, RadicalExt};
pub use rational::Rational;
pub use roots::{disk_components, house, house_bounds, mahler_bounds, mahler_measure, Certified, RootDisk};
pub use tower::{TowerElem, TowerEmbedding};
pub use units::fundamental_unit;
