//! File formats, SVG rendering and subcommands for the `diffuse` binary.

pub mod commands;
pub mod format;
pub mod ledger;
pub mod svg;

pub use commands::{Cli, CmdError, ExitCode};
pub use format::{FormatError, PolygonFile};
pub use ledger::LedgerDocument;
