//! Arbitrary-precision integer and rational scalars plus the combinatorial
//! functions (factorials, binomials, rising factorials) used everywhere else.
//!
//! `BigRat` is the coefficient field of the whole crate. Values are always
//! stored in lowest terms with a positive denominator, so equality is
//! structural.

pub use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact rational scalar; numerator and denominator are arbitrary precision,
/// the denominator is strictly positive and the fraction is reduced.
pub type BigRat = num_rational::BigRational;

/// Shorthand for an integer-valued `BigRat`.
pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q` as a `BigRat`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> BigRat {
    BigRat::new(BigInt::from(p), BigInt::from(q))
}

/// `n!`.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// `n!!` for odd `n`: `n (n-2) ... 1`, with `(-1)!! = 1` as the empty product.
///
/// Panics on even or lesser input.
pub fn double_factorial(n: i64) -> BigInt {
    assert!(n >= -1, "double_factorial: n must be >= -1, got {n}");
    assert!(n % 2 != 0, "double_factorial: n must be odd, got {n}");
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    acc
}

/// Binomial coefficient `C(n, k)` with the vanishing convention: the result
/// is `0` whenever `k < 0` or `k > n`. Only nonnegative upper arguments are
/// supported; half-integer arguments are handled through [`rising`] instead.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Rising factorial `(x)_m = x (x+1) ... (x+m-1)`, `1` for `m = 0`.
///
/// Defined for any rational `x`; this is how half-integer Gamma-function
/// ratios stay inside the rationals.
pub fn rising(x: &BigRat, m: u64) -> BigRat {
    let mut acc = BigRat::one();
    let mut term = x.clone();
    for _ in 0..m {
        acc *= &term;
        term += BigRat::one();
    }
    acc
}

/// `2^e` for a possibly negative exponent, as an exact rational.
pub fn pow2(e: i64) -> BigRat {
    let two = rat(2);
    let mut acc = BigRat::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &two;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// `(-1)^e`.
pub fn neg_one_pow(e: u64) -> BigRat {
    if e % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// Format a rational as `p/q` with the denominator always spelled out.
pub fn fraction_string(x: &BigRat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// True if the rational is a (possibly negative) integer.
pub fn is_integer(x: &BigRat) -> bool {
    x.denom().is_one() || x.numer().is_zero()
}
