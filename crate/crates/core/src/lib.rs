//! Entropic cones of nonsignaling, local, hybrid, bilocal and
//! information-causality correlations.
//!
//! The polyhedral kernel ([`exactgeom`]) is generic over [`Scalar`]; the
//! entropic machinery works over exact rationals, with `f64` used for
//! entropies of quantum boxes.

pub mod boxes;
pub mod classify;
pub mod entropy;
pub mod error;
pub mod exactgeom;
pub mod io;
pub mod scalar;
pub mod scenarios;

pub use error::{Error, Result};
pub use scalar::{int, rat, Rational, Scalar};

pub type HConeQ = exactgeom::HCone<Rational>;
pub type VConeQ = exactgeom::VCone<Rational>;
pub type LinearFormQ = exactgeom::LinearForm<Rational>;
pub type CertificateQ = exactgeom::Certificate<Rational>;
pub type HConeF64 = exactgeom::HCone<f64>;
pub type VConeF64 = exactgeom::VCone<f64>;
pub type HConeF32 = exactgeom::HCone<f32>;
pub type EntropyVectorQ = entropy::EntropyVector<Rational>;
pub type EntropyVectorF64 = entropy::EntropyVector<f64>;
pub type BoxQ = boxes::ProbBox<Rational>;
pub type BoxF64 = boxes::ProbBox<f64>;
