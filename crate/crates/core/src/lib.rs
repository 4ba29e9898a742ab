//! Cycle-accurate simulation of a distributed Union-Find surface-code decoder
//! running on a grid of processing elements (PEs), together with a serial
//! Union-Find reference decoder, noise samplers and an experiment harness.
//!
//! The usual flow is: build a [`graph::DecodingGraph`], sample a syndrome with
//! [`noise`], decode it with [`serial_uf::decode_serial`] or
//! [`helios::decode_distributed`], and validate the correction with
//! [`corrector`].

pub mod corrector;
pub mod error;
pub mod graph;
pub mod harness;
pub mod helios;
pub mod noise;
pub mod serial_uf;

pub use error::{Error, Result};
