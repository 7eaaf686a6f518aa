//! Monte Carlo simulator for two-tier cellular IoT links, comparing a
//! conventional micro cell with one that serves its devices through an
//! intelligent reflecting surface (IRS).
//!
//! The crate is organised bottom-up:
//!
//! - [`geometry`], [`carrier`], [`random`]: positions, wavelength, seeded
//!   streams and exponential fading.
//! - [`channel`]: direct and reflected received power, noise, interference.
//! - [`metrics`]: SINR, Shannon throughput, spectral efficiency, delay.
//! - [`association`]: micro/macro association probability and served load.
//! - [`scenario`]: network description, the replication engine,
//!   conventional-vs-IRS comparison and parameter sweeps.
//! - [`config`], [`output`], [`cli`]: TOML scenarios with units, CSV/JSON
//!   artifacts and the command-line front end.
//!
//! All quantities are linear SI internally (W, Hz, m, s, bit/s).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod association;
pub mod carrier;
pub mod channel;
pub mod cli;
pub mod config;
pub mod error;
pub mod geometry;
pub mod metrics;
pub mod output;
pub mod random;
pub mod scenario;
pub mod stats;
pub mod units;

pub use error::{Error, Result};
