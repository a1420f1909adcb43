//! Building blocks of the `geodiscord` command-line tool.

pub mod compute;
pub mod error;
pub mod input;
pub mod sweep;
pub mod verify;

pub use error::CliError;
