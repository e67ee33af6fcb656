//! Model files and the `pdg` command-line front end over [`pdg_core`].

pub mod cli;
pub mod modelfile;

pub use cli::{run, CliConfig, Outcome};
