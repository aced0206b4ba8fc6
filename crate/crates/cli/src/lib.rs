//! Front end for the `adinkra` library: pin specs, exploration sessions, the census
//! cache and the HTTP service.

pub mod census;
pub mod commands;
pub mod pins;
pub mod server;
pub mod session;
