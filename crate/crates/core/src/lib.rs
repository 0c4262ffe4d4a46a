pub mod acceptance;
pub mod atlas;
pub mod codes;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod gf;
pub mod invariants;
pub mod pg;
pub mod report;
pub mod verify;
pub mod veronese;

pub use error::{Error, Result};
