pub mod cli;
pub mod embeddings;
pub mod error;
pub mod exact_linalg;
pub mod groves_dimers;
pub mod lam_action;
pub mod network;
pub mod noncrossing;
pub mod symplectic_concordance;

pub use error::{Error, Result};
