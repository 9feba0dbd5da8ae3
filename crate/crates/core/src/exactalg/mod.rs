//! Exact arithmetic: Gaussian rationals, truncated multivariate polynomials,
//! dense linear algebra and first-order jets.

mod jet;
mod matrix;
mod poly;
mod rat;
mod ring;
mod scalar;

pub use jet::{Direction, Jet};
pub use matrix::{kernel_image, solve_linear, span_dim, KernelImage, Matrix, SpanBasis};
pub use poly::{variables, Monomial, PolyScalar};
pub use ring::Coeff;
pub use scalar::Scalar;
