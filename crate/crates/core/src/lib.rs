pub mod builtins;
pub mod certroots;
pub mod error;
pub mod factor;
pub mod fixpoint;
pub mod interval;
pub mod k3;
pub mod matrix;
pub mod numfield;
pub mod poly;
pub mod sturm;
pub mod surfgeom;

pub use error::{Error, Result};
