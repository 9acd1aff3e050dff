//! Groverian entanglement of few-qubit pure states, plus perfect two-party
//! teleportation and superdense coding over three-qubit resources.
//!
//! The crate is split into four layers:
//!
//! - [`qcore`]: dense states, operators, partial traces and overlaps.
//! - [`groverian`]: `P_max` by alternating (HOPM), reduced and Bloch-tensor
//!   iterations, plus the closed forms for generalized W and four-term states.
//! - [`protocols`]: teleportation feasibility, protocol construction and
//!   simulation, and the superdense coding Gram check.
//! - [`conjlab`]: state families, grid scans, the κ sweep across the
//!   right-triangle circle and the `P_max = 1/2` conjecture report.
//!
//! Multistart restarts and scan points run through [`Exec`], which uses rayon
//! when the `parallel` feature is enabled.

pub mod config;
pub mod conjlab;
mod error;
pub mod exec;
pub mod groverian;
pub mod protocols;
pub mod qcore;

pub use config::Tolerances;
pub use error::{Error, Result};
pub use exec::Exec;
pub use num_complex::Complex64;
