//! Desk-scale verification toolkit for singular-value and eigenvalue sequence
//! inequalities: decreasing rearrangements and sequence transforms, the three
//! submajorization orders, Schur/Ringrose spectral splitting, constructive
//! triangular realizations of prescribed spectra, principal-ideal membership
//! models and an exact big-integer layer for dyadic step sequences.

pub mod config;
pub mod dyadic;
pub mod ideals;
pub mod io;
pub mod orders;
pub mod sampling;
pub mod seq;
pub mod spectral;
pub mod suite;

pub use config::Tolerances;
pub use orders::{OrderStatus, OrderVerdict};
pub use seq::{NonincreasingSeq, RealSeq};
pub use spectral::DenseMatrix;
