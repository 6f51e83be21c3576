//! Scalar abstraction for the dense matrix kernel.
//!
//! Walk matrices live in `f64`, adjacency and scheme classes in `i64`, and the
//! exact Chebyshev route in `BigInt`/`BigRational`; all share one matrix type.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, One, Zero};

/// Entry type usable in [`crate::matrix::Matrix`]: a commutative ring with
/// exact equality semantics (floats compare bitwise, which is what the
/// structural 0/1 checks need).
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + Zero + One + Num {}

impl Scalar for f64 {}
impl Scalar for i64 {}
impl Scalar for BigInt {}
impl Scalar for BigRational {}
impl Scalar for Rational64 {}
