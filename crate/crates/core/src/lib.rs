pub mod error;
pub mod fingroup;
pub mod linear;
pub mod perm;
pub mod pipeline;
pub mod semidirect;
pub mod words;

pub use error::{Error, Result};
