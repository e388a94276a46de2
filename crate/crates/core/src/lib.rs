//! Exact algebra for the matrix system XAX = BXB, XBX = AXA.

pub mod families;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod polyalg;
mod serde_util;
pub mod ybe;
