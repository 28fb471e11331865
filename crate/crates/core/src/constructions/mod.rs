//! End-to-end constructions: affine deformations of Schottky pairs on tori,
//! abelian threefolds, Hopf surfaces, `SL2(C)/Λ` and the expanded torus.

pub mod certificate;
pub mod deformation;
pub mod hopf;
pub mod quotients;

pub use certificate::{
    verify_certificate, AnyCertificate, CertificateEntry, CertificateRejection, FreenessCertificate,
    FREENESS_VERSION,
};
pub use deformation::{
    build_abelian_threefold_action, certify_free_torus_action, projective_action, run_search,
    search_affine_deformation, search_complex_deformation, CertifyOutcome, ComplexDeformationParameters,
    Counterexample, DeformationParameters, DeformationProblem, Exhaustion, Parameters, Score, SearchConfig,
    SearchOutcome, SearchReport, Strategy,
};
pub use hopf::{gaussian_eigenvalues, hopf_fixed_point_free, hopf_group_check, HopfDatum, HopfDecision, HopfReport, HopfViolation};
pub use quotients::{expanded_torus_check, sl2_lattice_free, ExpandedTorusDecision, LatticeVerdict};
