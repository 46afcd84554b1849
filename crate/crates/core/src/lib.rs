//! Gröbner bases in the Weyl algebra and the algorithms built on them:
//! b-functions, restriction of D-modules, tensor products, localization and
//! local cohomology.

pub mod bfunction;
pub mod coef;
pub mod dfunctors;
pub mod error;
pub mod groebner;
pub mod mono;
pub mod operator;
pub mod order;
pub mod restriction;
pub mod ring;
pub mod text;
pub mod upoly;

pub use coef::Coef;
pub use error::{DmodError, Result};
pub use operator::{Operator, ShiftVector, WeightVector};
pub use order::OrderSpec;
pub use ring::{Extension, Ring, RingSpec};
