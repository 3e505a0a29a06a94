//! File formats, the grid-sampling oracle and the command-line front end
//! around [`signcert_core`].

pub mod io;
pub mod oracle;

pub use signcert_core as core;
