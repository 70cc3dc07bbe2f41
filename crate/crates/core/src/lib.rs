//! Equational-theory workbench for finite monoids.

pub mod factor;
pub mod family;
pub mod lattice;
pub mod matcher;
pub mod monitor;
pub mod monoid;
pub mod rewrite;
pub mod suite;
pub mod word;
