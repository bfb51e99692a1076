//! Ramanujan sums c_n(k) by three independent methods.
//!
//! The library default is the prime-power product (fastest). The divisor
//! sum is the exact reference, and the exponential definition is a
//! floating-point oracle kept for cross-checking only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{divisors, factorize, mobius};
use crate::error::{Error, Result};

/// Largest order accepted by the exponential oracle.
pub const EXPONENTIAL_GUARD: u64 = 100_000;

const TOLERANCE: f64 = 1e-6;

/// c_n(k). Delegates to the prime-power method.
///
/// `k = 0` is accepted with the convention gcd(0, n) = n, so c_n(0) = phi(n).
pub fn c(n: u64, k: u64) -> Result<BigInt> {
    c_prime_power_method(n, k)
}

/// Product over p^a || n of the three-case prime-power formula.
pub fn c_prime_power_method(n: u64, k: u64) -> Result<BigInt> {
    let f = factorize(n)?;
    let mut acc = BigInt::one();
    for &(p, a) in f.factors() {
        let pa = p.pow(a);
        let pa1 = pa / p;
        if k % pa == 0 {
            acc *= BigInt::from(pa - pa1);
        } else if k % pa1 == 0 {
            acc *= -BigInt::from(pa1);
        } else {
            return Ok(BigInt::zero());
        }
    }
    Ok(acc)
}

/// Divisor-sum form: sum of d * mu(n/d) over d | gcd(k, n).
pub fn c_divisor(n: u64, k: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let g = if k == 0 { n } else { k.gcd(&n) };
    let mut sum = BigInt::zero();
    for d in divisors(g)? {
        sum += BigInt::from(d) * mobius(n / d)?;
    }
    Ok(sum)
}

/// Sum of k-th powers of the primitive n-th roots of unity, evaluated in
/// floating point and rounded. Oracle only; fails loudly on precision loss.
pub fn c_exponential(n: u64, k: u64) -> Result<BigInt> {
    if n == 0 || k == 0 {
        return Err(Error::ZeroInput);
    }
    if n > EXPONENTIAL_GUARD {
        return Err(Error::GuardExceeded(format!(
            "c_exponential needs n <= {EXPONENTIAL_GUARD}, got {n}"
        )));
    }
    let mut re = 0.0f64;
    let mut im = 0.0f64;
    for j in 1..=n {
        if j.gcd(&n) != 1 {
            continue;
        }
        let t = ((j as u128 * k as u128) % n as u128) as f64 / n as f64;
        let angle = std::f64::consts::TAU * t;
        re += angle.cos();
        im += angle.sin();
    }
    let rounded = re.round();
    if im.abs() > TOLERANCE || (re - rounded).abs() > TOLERANCE {
        return Err(Error::PrecisionLoss(format!(
            "c_{n}({k}) evaluated to {re} + {im}i"
        )));
    }
    Ok(BigInt::from(rounded as i64))
}

/// c_n(k) as i64, for internal table building. Values satisfy
/// |c_n(k)| <= n, so this cannot overflow for u64-range orders.
pub(crate) fn c_small(n: u64, k: u64) -> Result<i64> {
    Ok(c_prime_power_method(n, k)?
        .to_i64()
        .expect("|c_n(k)| <= n fits in i64"))
}
