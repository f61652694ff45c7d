//! Command line and local JSON service over `tubular-core`.

pub mod api;
pub mod http;
