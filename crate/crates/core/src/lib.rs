pub mod error;
pub mod experiments;
pub mod families;
pub mod field;
pub mod derivations;
pub mod gb;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod resolution;
pub mod strength;

pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, FieldElem};
pub use poly::{HomDegree, Monomial, MonomialOrder, Poly, Ring, RingCtx};
