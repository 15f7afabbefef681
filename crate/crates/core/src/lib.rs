pub mod arith;
pub mod cli;
pub mod cyclotomic;
pub mod eisenstein;
pub mod error;
pub mod fp;
pub mod linalg;
pub mod localfield;
pub mod orders;
pub mod pipelines;
pub mod poly;
pub mod symbols;

pub use error::{Error, Result};
