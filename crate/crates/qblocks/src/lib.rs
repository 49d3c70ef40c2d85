//! Verification harness, JSON formats and series selectors built on
//! [`qblocks_core`].
//!
//! The `qblocks` binary ([`cli`]) wraps these as the `expand`, `eval`, `check`,
//! `lattice` and `superalg` subcommands.

pub mod cli;
pub mod error;
pub mod json;
pub mod selector;
pub mod verify;

pub use error::{Error, Result};
