pub mod datagen;
pub mod error;
pub mod invariants;
pub mod io;
pub mod forms;
pub mod linalg;
pub mod loci;
pub mod poly;
pub mod projective;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;
