//! Entropy coordinates, Shannon elemental inequalities, symbolic entropy
//! expressions and entropy vectors of probability tables.

pub mod elemental;
pub mod functional;
pub mod space;
pub mod vector;

pub use elemental::{
    elemental_count, elemental_for, elemental_inequalities, elemental_list, shannon_cone, Elemental,
};
pub use functional::{functional, Expr, Term};
pub use space::{CoordinateSpace, VarSet};
pub use vector::{entropy_vector, exact_entropy_vector, shannon_entropy, EntropyVector};
