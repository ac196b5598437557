//! Experiment harness: configuration, trace caching, the growth experiment
//! with CSV and SVG output, and the oracle verification suites.

pub mod cache;
pub mod config;
pub mod error;
pub mod experiment;
pub mod svg;
pub mod verify;

pub use error::{HarnessError, Result};

/// The bundled demo configuration.
pub const DEMO_CONFIG: &str = include_str!("../configs/demo.conf");

/// The demo configuration, parsed.
pub fn demo_config() -> config::ExperimentConfig {
    config::parse_config(DEMO_CONFIG).expect("bundled demo config is valid")
}
