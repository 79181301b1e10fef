//! Exact exterior calculus on coordinate charts, centered on the tangent
//! lift `d_T` of forms, multivector fields and Poisson structures.

pub mod bialgebra;
pub mod canonical;
pub mod cartan;
pub mod chart;
pub mod dsl;
pub mod error;
pub mod exterior;
pub mod fixtures;
pub mod linalg;
pub mod poisson;
pub mod polymap;
pub mod random;
pub mod scalar;
pub mod tangent;
pub mod tensor;
pub mod verify;

pub use chart::Chart;
pub use error::{Error, Result};
pub use scalar::{Rational, RationalPoint, Scalar};
pub use tensor::{Form, Multivector};
