//! Matrix complexes on Grassmannian charts, line bundle cohomology, and the
//! fiberwise section counts built from them.

pub mod cohomology;
pub mod complex;
pub mod proxies;

pub use cohomology::{
    adjunction_checks, bplus_restriction_type, exceptionality_table, lb_cohomology, AdjunctionReport, BplusRestriction, DivisorClass,
    ExceptionalityTable, VarietyTag,
};
pub use complex::{
    build_clifford_resolution, build_koszul, certify_complex, filtration_check, ComplexCertificate, ComplexKind, FiltrationReport,
    MatrixComplex, PointHomology,
};
pub use proxies::{
    pushforward_rank_proxy, restriction_type_on_conic, restriction_type_on_plane, ConicRestriction, PlaneRestriction, PushforwardReport,
};
