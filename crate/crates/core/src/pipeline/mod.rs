pub mod birman;
pub mod centerless;
pub mod certificate;
pub mod run;
pub mod spec;
mod util;
pub mod witness;

pub use util::random_word;
