pub mod catalan;
pub mod enumerate;
pub mod error;
pub mod fps;
pub mod multisets;
pub mod numeric;
pub mod paths;
pub mod render;
pub mod structure;
pub mod trees;
pub mod verify;

pub use enumerate::{Label, DEFAULT_CAP};
pub use error::{Error, Result};
