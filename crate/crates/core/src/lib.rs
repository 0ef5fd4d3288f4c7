pub mod error;
pub mod exactnum;
pub mod forms;
pub mod lattice;
pub mod linalg;
pub mod witt;
pub mod bench;
pub mod dirichlet;
pub use error::{Error, Result};
