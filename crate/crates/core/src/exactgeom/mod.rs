//! Polyhedral kernel: cones in both representations, double description,
//! Fourier-Motzkin projection, redundancy removal, LP with certificates and
//! infeasible-subsystem extraction.

mod bitset;
pub mod certificate;
pub mod cone;
pub mod dd;
pub mod fm;
pub mod iis;
pub mod linalg;
pub mod lp;
pub mod redundancy;
pub mod simplex;

pub use certificate::{
    certificate_mismatch, verify_certificate, verify_certificate_with_pins, verify_in_program,
    AffineProgram, AffineRow, Certificate, Pin, Pins,
};
pub use cone::{canonical_line, canonical_ray, HCone, LinearForm, Relation, RowRef, VCone};
pub use dd::{dd_enumerate, facets_of, Adjacency, DdConfig, DdProgress};
pub use fm::{fm_eliminate, project_onto, FmConfig};
pub use iis::{iis_shrink, Subsystem};
pub use lp::{feasibility, lp_check, minimize, LpOutcome};
pub use redundancy::remove_redundant;
