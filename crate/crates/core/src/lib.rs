pub mod algebra;
pub mod charts;
pub mod error;
pub mod family;
pub mod geometry;
pub mod io;
pub mod local;
pub mod nondegeneracy;
pub mod par;
pub mod sample;

pub use error::{Error, Result};
