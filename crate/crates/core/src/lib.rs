//! Executable quantaloid-enriched order theory on finite instances:
//! quantaloids and quantales, enriched categories and distributors,
//! presheaf calculus, ideal classification, cocompleteness and
//! continuity/algebraicity decisions, standard models and a classical
//! poset oracle for cross-validation.

pub mod category;
pub mod continuity;
pub mod distributor;
pub mod error;
pub mod ideal;
pub mod json;
pub mod lattice;
pub mod models;
pub mod oracle;
pub mod presheaf;
pub mod quantaloid;
