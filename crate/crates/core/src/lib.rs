//! Igusa's p-adic zeta functions of integer polynomials over `Q_p`,
//! computed exactly and cross-checked against solution counts mod `p^i`.

pub mod arith;
pub mod charts;
pub mod context;
pub mod count;
pub mod divisibility;
pub mod error;
pub mod families;
pub mod poly;
pub mod resolve;

pub use arith::laurent::{laurent_at, ResidueValue};
pub use arith::poincare::{poincare_from_zeta, PoincareSeries};
pub use arith::qpoly::QPoly;
pub use arith::radical::RadicalScalar;
pub use arith::zeta::ZetaRational;
pub use arith::Q;
pub use context::PadicContext;
pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/counting.md")]
    pub struct Counting;
    #[doc = include_str!("../../../book/src/zeta-functions.md")]
    pub struct ZetaFunctions;
    #[doc = include_str!("../../../book/src/plane-engine.md")]
    pub struct PlaneEngine;
    #[doc = include_str!("../../../book/src/resolution.md")]
    pub struct Resolution;
    #[doc = include_str!("../../../book/src/families.md")]
    pub struct Families;
    #[doc = include_str!("../../../book/src/divisibility.md")]
    pub struct Divisibility;
}
