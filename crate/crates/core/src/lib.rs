//! Perfect state transfer and periodicity of Grover walks on graphs.
//!
//! The pipeline is: build a graph ([`graph`]), assemble the arc-space walk
//! and discriminant ([`walk`]), decompose the discriminant with exact
//! eigenvalue recognition ([`spectra`], [`algebraic`]), decide transfer by
//! the scheme / distance-regular / Chebyshev criteria ([`scheme`], [`pst`]),
//! and cross-check everything against direct unitary evolution ([`oracle`]).

pub mod algebraic;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod oracle;
pub mod pst;
pub mod report;
pub mod scalar;
pub mod scheme;
pub mod spectra;
pub mod walk;

pub use error::{Error, Result};

/// Dense float matrix (walk operators, projectors).
pub type MatF = matrix::Matrix<f64>;
/// Dense integer matrix (adjacency, distance and scheme classes).
pub type MatInt = matrix::Matrix<i64>;
/// Dense big-integer matrix (exact scaled Chebyshev route).
pub type MatBig = matrix::Matrix<num_bigint::BigInt>;
/// Dense big-rational matrix (exact discriminant of regular graphs).
pub type MatRat = matrix::Matrix<num_rational::BigRational>;
