//! Exact computations around the prehomogeneous space `(GSp6 x GL1^2, ∧³V6)`:
//! scalar fields, quadratic forms, composition algebras, the trivector
//! module and its invariants, orbit canonicalization, flag extraction,
//! Freudenthal algebras and a finite-field orbit census.

pub mod census;
pub mod checks;
pub mod composition;
pub mod flags;
pub mod freudenthal;
pub mod invariants;
pub mod matrix;
pub mod orbits;
pub mod qforms;
pub mod scalars;
pub mod wedge;
