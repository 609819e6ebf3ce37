//! Last-fall-degree machinery for zero-dimensional polynomial systems over
//! small finite fields: constructible spaces V_i, both Weil descent models,
//! a MutantXL-style solver, a Buchberger ground-truth oracle and a multi-HFE
//! experiment lab.

pub mod caps;
pub mod constructible;
pub mod descent;
pub mod error;
pub mod field;
pub mod gen;
pub mod groebner;
pub mod hfe;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod solver;
pub mod sysfile;
pub mod unipoly;
pub mod verify;

pub use error::{Error, Result};
