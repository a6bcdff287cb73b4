pub mod cpinf;
pub mod error;
pub mod io;
pub mod laws;
pub mod model;
pub mod morphism;
pub mod object;
pub mod rng;
pub mod structural;
pub mod suite;

pub use error::{Error, Result};
