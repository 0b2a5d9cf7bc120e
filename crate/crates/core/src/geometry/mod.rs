//! Star-shaped domain representation, surface/volume quadrature,
//! collocation-point generation and geometric descriptors.

mod collocation;
mod descriptors;
mod mesh;
mod quadrature;
mod shape;

pub use collocation::{latitude_count, CollocationSet};
pub use descriptors::{descriptors, is_convex_sampled, Descriptors};
pub use mesh::to_obj;
pub use quadrature::{gauss_legendre, QuadKind, QuadNode, QuadratureRule};
pub use shape::{ShapeCoefficients, SurfaceFrame, DEFAULT_L_MAX, DEFAULT_L_MAX_AXISYM};
