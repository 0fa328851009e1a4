//! Universal algebras of finite-dimensional Poisson algebras, their coacting bialgebras,
//! and the morphism, automorphism, grading and module computations built on them.

pub mod algebra;
pub mod bialgebra;
pub mod error;
pub mod gradings;
pub mod modules;
pub mod oracle;
pub mod poisson;
pub mod samples;
pub mod search;
pub mod universal;

pub use error::{Error, Result};
