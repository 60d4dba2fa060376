pub mod cli;
pub mod error;
pub mod exactq;
pub mod hardy;
pub mod moments;
pub mod survey;
pub mod zfun;

pub use error::{Error, Result};
