//! Harmonic self-maps of the unit disk.
//!
//! Boundary correspondences ([`circle_maps`]) are extended by the Poisson
//! integral ([`poisson`]); the area of the image of a concentric disk is
//! computed by several independent routes ([`area`]) and checked against
//! `π r²` and related bounds ([`verify`], [`proof_checks`]). [`sweep`] and
//! [`report`] drive batches and serialize verdicts.

// `!(x < bound)` is used deliberately so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod area;
pub mod circle_maps;
pub mod error;
mod fft;
pub mod poisson;
pub mod proof_checks;
pub mod report;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex;
