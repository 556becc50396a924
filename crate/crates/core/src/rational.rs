//! Exact rational values.
//!
//! All Lubell, `f`, epsilon and table values in this crate are exact
//! rationals backed by arbitrary-precision integers. Rendering is always
//! `p/q`; floats never appear.

pub use num_bigint::BigInt;

/// Arbitrary-precision rational; always stored reduced with a positive
/// denominator.
pub type Rational = num_rational::Ratio<BigInt>;

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The reduced fraction `num/den`. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The reduced fraction `num/den` from big integers. Panics if `den == 0`.
pub fn big_frac(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}
