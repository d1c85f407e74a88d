//! Verification engine for the solution automorphisms of Ramanujan's
//! differential equations and of the `k = 3/2` generalised Chazy system.
//!
//! Identities that live in `q`-series are certified exactly with
//! [`series::PuiseuxSeries`]; claims about solutions of differential
//! equations are certified numerically by pushing Taylor jets of integrated
//! trajectories through the maps ([`dynamics`]).

pub mod algebra;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod hypergeometric;
pub mod modular;
pub mod report;
pub mod series;
pub mod suites;
pub mod theorem1;
pub mod theorem2;

pub use error::{Error, Result};
