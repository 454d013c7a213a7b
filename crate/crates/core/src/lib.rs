pub mod algebra;
pub mod error;
pub mod fiber;
pub mod field;
pub mod gluing;
pub mod linalg;
pub mod local_ring;
pub mod oracle;
pub mod poly;
pub mod resolution;
pub mod session;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
