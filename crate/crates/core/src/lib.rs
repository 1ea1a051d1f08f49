//! Exact spectral analysis of four-point-condition and 2-Steiner distance
//! matrices of trees.
//!
//! Every quantity here is an integer or a rational; nothing passes through
//! floating point.

pub mod embed;
pub mod fourpc;
pub mod linalg;
pub mod path_steiner;
pub mod report;
pub mod spectra;
pub mod suite;
pub mod tree;
