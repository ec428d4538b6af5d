//! Command-line front end for the `copolar` library, the randomized
//! verification harness, and independent covolume oracles.

mod app;
pub mod oracle;
pub mod verify;

pub use app::{run, run_with, EXIT_FAILED, EXIT_INPUT, EXIT_OK};
