//! Guided-wave decomposition and damage-localisation toolkit.
//!
//! The crate covers the desk-scale workflow end to end:
//!
//! - [`dispersion`] — Rayleigh-Lamb phase/group-velocity curves for
//!   isotropic plates.
//! - [`wavesynth`] — synthetic dispersive wavefields from Hann tone bursts,
//!   with point reflectors and seeded measurement noise.
//! - [`field2d`] — forward-backward 2-D Fourier processing that separates
//!   wave modes in frequency-wavenumber space and builds the nominal wave
//!   dictionary.
//! - [`blr`] — conjugate Bayesian linear regression over dictionary
//!   waveforms: posterior weights, predictive variance, predictive
//!   log-likelihood, and the single-sensor signal decomposition.
//! - [`onset`] — residual signals and AIC-minimum arrival-time picking.
//! - [`triangulate`] — 1-D collinear and 2-D difference-of-time-of-arrival
//!   source estimates via Nelder-Mead.
//! - [`io`] — binary field/dictionary formats and the sensor manifest.
//! - [`pipeline`] — the end-to-end run: baseline field → dictionary →
//!   per-sensor decomposition → onsets → localisation.

pub mod blr;
pub mod config;
pub mod dispersion;
pub mod field2d;
pub mod io;
pub mod onset;
pub mod pipeline;
pub mod triangulate;
pub mod wavesynth;
