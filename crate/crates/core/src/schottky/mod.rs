//! Linear parts: classification of SO(1, 2) and SL2 elements, exact ping-pong
//! certificates on RP¹, and order tests.

pub mod classify;
pub mod order;
pub mod pingpong;
pub mod projective;

pub use classify::{
    classify_isometry, classify_sl2, classify_so12, induced_moebius, projectively_equal, sym_square,
    ConicModel, ElementClassification, Quadratic,
};
pub use order::{bounded_nontriviality, order_test, NontrivialityReport, OrderReport};
pub use pingpong::{
    propose_pingpong_table, propose_with_retries, verify_pingpong, ContainmentRecord, GeneratorData,
    PingPongCertificate, PingPongRejection, PingPongTable, PINGPONG_VERSION,
};
pub use projective::{ProjectiveInterval, ProjectivePoint};
