pub mod coeffring;
pub mod enveloping;
pub mod error;
pub mod linalg;
pub mod projector;
pub mod stability;
pub mod weights;
pub mod zn;

pub use error::{Error, Result};
