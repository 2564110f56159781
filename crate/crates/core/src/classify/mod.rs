//! Symmetry reduction and LP-based classification of entropic rays, the
//! registry of named inequalities, validity checks and derivations.

pub mod certificates;
pub mod membership;
pub mod registry;
pub mod report;
pub mod symmetry;
pub mod validity;

pub use certificates::{builtin_certificates, verify_all, BuiltinCertificate, CertificateCheck, CertificateReport};
pub use membership::{is_bilocal, is_local, Classifier, EmbeddedSystem, Label, Point, FLOAT_PIN_TOLERANCE};
pub use registry::{gtnl_nine_term, named_inequality, registry, NamedInequality, Sense};
pub use report::{classify_rays, ClassCounts, ClassEntry, ClassificationReport, ClassifyProgress};
pub use symmetry::{canonical_form, orbit_classes, RayClass, SymmetryGroup};
pub use validity::{check_validity, derive_inequality, Derived, NoiseSchedule, Validity};
