//! Exact construction and certification of free actions of free groups on
//! compact tori, Hopf surfaces and quotients of SL2(C).

pub mod constructions;
pub mod error;
pub mod exact;
pub mod json;
pub mod quaternion;
pub mod schottky;
pub mod torus;
pub mod words;

pub use error::{ConstructionError, ExactError, ParseError, SchottkyError, TorusError, WordError};

pub use constructions::{FreenessCertificate, HopfDatum, SearchConfig};
pub use exact::{GaussianMatrix, GaussianRational, Rational, RationalMatrix};
pub use schottky::{PingPongCertificate, PingPongTable, ProjectiveInterval, ProjectivePoint};
pub use torus::{AffineTorusMap, FixedPointDecision};
pub use words::ReducedWord;
