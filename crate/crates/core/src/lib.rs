pub mod dgla;
pub mod error;
pub mod exactalg;
pub mod kostant;
pub mod liecore;
pub mod principal;
pub mod report;
pub mod sampling;
pub mod slice_triv;

pub use dgla::{Dgla, FormalElement};
pub use error::{Error, Result};
pub use exactalg::{Coeff, Jet, Matrix, PolyScalar, Scalar};
pub use liecore::{Element, LieAlgebra, LieType};
pub use principal::Principal;

/// An algebra element with exact scalar coordinates.
pub type ScalarElement = liecore::Element<Scalar>;
/// An algebra element with polynomial coordinates, for generic points.
pub type PolyElement = liecore::Element<PolyScalar>;
/// A dense matrix over the scalar field.
pub type ScalarMatrix = exactalg::Matrix<Scalar>;
/// A dense matrix with polynomial entries.
pub type PolyMatrix = exactalg::Matrix<PolyScalar>;
