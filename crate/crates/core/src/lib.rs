//! Support tilting posets of Dynkin path algebras, computed from exact
//! quiver representations, and the recovery of the tilting subposet from
//! the bare order structure.

pub mod error;
pub mod indec;
pub mod io;
pub mod iso;
pub mod matrix;
pub mod pair;
pub mod pipeline;
pub mod poset;
pub mod quiver;
pub mod reconstruct;
pub mod rep;
pub mod stilt;

pub use error::{Error, Result};
