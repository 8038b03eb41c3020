//! Manifest-driven front end for the `tsgeom` verification engine.

pub mod commands;
pub mod manifest;
pub mod report;

pub use commands::{run_command, Command, CommandError};
pub use manifest::{load_manifest, parse_manifest, Format, Manifest, ManifestError};
pub use report::{Report, Status};
