//! Std companion to `oss-core`: scene and configuration files, the
//! `.epepdb` database container, rayon drivers, CSV/PNG output and the
//! command pipeline behind the `oss` binary.

pub use oss_core as core;

pub mod config;
pub mod dbfile;
pub mod error;
pub mod hash;
pub mod output;
pub mod parallel;
pub mod pipeline;
pub mod scene_io;

pub use error::{OssError, Result};
pub use pipeline::{Options, RunResult, Setup};
