pub mod combinatorics;
pub mod constants;
pub mod error;
pub mod identities;
pub mod numerics;
pub mod oracle;
pub mod report;

pub use error::{Error, Result};
pub use numerics::{RealWithError, TailModel};
