//! Command line and HTTP front ends for the tangle engine, plus the game
//! session store behind the square-dance endpoints.

pub mod cli;
pub mod http;
pub mod report;
pub mod store;
