pub mod bench;
pub mod bitmat;
pub mod cli;
pub mod cnf;
pub mod dataset;
pub mod encode;
mod error;
pub mod factor;
pub mod oll;
pub mod report;
pub mod sat;

pub use bitmat::{boolean_product, read_matrix, write_matrix, BoolMatrix, FactorPair};
pub use error::{Error, Result};
