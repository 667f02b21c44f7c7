pub mod cover;
pub mod error;
pub mod graph;
pub mod mp2;
pub mod pipeline;
pub mod planarity;
pub mod solver;
pub mod transform;

pub use error::{Error, Result};
