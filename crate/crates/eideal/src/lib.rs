//! File formats, reports and batch drivers around [`eideal_core`].
//!
//! The `eideal` binary is a thin clap front end over these modules.

pub mod compose;
pub mod format;
pub mod generate;
pub mod oracle;
pub mod report;
pub mod verify;

pub use eideal_core as core;
