pub mod classes;
pub mod error;
pub mod index;
mod io;
pub mod mapping;
pub mod net;
pub mod nftrie;
pub mod oracle;
pub mod range_distinct;
pub mod renum;
pub mod rlbwt;
pub mod text;
pub mod verify;

pub use classes::Classes;
pub use error::{Error, Result};
