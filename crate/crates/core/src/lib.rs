//! Metric distortion of multiwinner voting when an agent's cost for a
//! committee is her distance to its q-th closest member.
//!
//! The crate provides the instance model ([`model`]), the committee voting
//! rules ([`rules`]), an exact worst-case distortion oracle built on a
//! rational simplex solver ([`oracle`]), generators for the hard instance
//! families ([`generators`]), and a batch experiment harness ([`harness`]).

pub mod error;
pub mod generators;
pub mod harness;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod rules;

pub use error::{Error, Result};
