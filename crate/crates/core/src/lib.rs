//! Minimal codes in semisimple abelian group algebras.

pub mod abelian_group;
pub mod cli;
pub mod codes;
pub mod finite_field;
pub mod group_algebra;
