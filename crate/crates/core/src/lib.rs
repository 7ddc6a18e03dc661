pub mod entanglement;
pub mod error;
pub mod fermionic;
pub mod fixtures;
mod linalg;
pub mod oracle;
pub mod partners;
pub mod phase_space;
pub mod random;
pub mod state;
pub mod subsystem;
pub mod sweep;
pub mod tolerance;

pub use error::{Error, Result};
