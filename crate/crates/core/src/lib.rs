//! Iteration, closed-form iterates and topological conjugacy for maps of an
//! interval, with a logistic-map random number generator on top.
//!
//! ```
//! use conjugate_core::map_core::{iterate, MapDescriptor};
//!
//! let x = iterate(&MapDescriptor::Logistic, 0.2, 1).unwrap();
//! assert!((x - 0.64).abs() < 1e-15);
//! ```

// `!(x < y)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod chaos_rng;
pub mod closed_form;
pub mod conjugacy;
pub mod error;
pub mod interval;
pub mod map_core;

pub use conjugacy::{Homeomorphism, Mobius};
pub use error::{Error, Result};
pub use interval::Interval;
pub use map_core::{MapDescriptor, Orbit};
