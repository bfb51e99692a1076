//! Empirical average-order checks for the diagonal f_r: the Euler-product
//! constant C_r with a rigorous truncation tail bound, exact partial sums
//! of f_r, and their ratio against C_r x^r / r.
//!
//! The constant is computed in fixed-point decimal arithmetic over BigInt
//! (60 fractional digits), not hardware floating point; only the final
//! ratio is reported as f64.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::arith::{big, big_pow, Rational};
use crate::error::{Error, Result};
use crate::orbicyclic::h_poly_big;

/// Fractional decimal digits carried by [`Fixed`].
pub const PRECISION_DIGITS: u32 = 60;

/// Largest x accepted by the partial-sum evaluator.
pub const PARTIAL_SUM_GUARD: u64 = 100_000;

fn scale() -> &'static BigInt {
    static SCALE: OnceLock<BigInt> = OnceLock::new();
    SCALE.get_or_init(|| big(10).pow(PRECISION_DIGITS))
}

/// Nonnegative fixed-point decimal with [`PRECISION_DIGITS`] fractional
/// digits: the stored integer is value * 10^60.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed(BigInt);

impl Fixed {
    pub fn one() -> Self {
        Fixed(scale().clone())
    }

    pub fn from_ratio(r: &Rational) -> Self {
        debug_assert!(!r.numer().is_negative());
        Fixed((r.numer() * scale()).div_floor(r.denom()))
    }

    pub fn mul(&self, other: &Fixed) -> Fixed {
        Fixed((&self.0 * &other.0).div_floor(scale()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY) / 1e60
    }

    /// Decimal string with the given number of fractional digits
    /// (truncated, at most [`PRECISION_DIGITS`]).
    pub fn to_decimal_string(&self, frac_digits: usize) -> String {
        let frac_digits = frac_digits.min(PRECISION_DIGITS as usize);
        let digits = self.0.to_string();
        let width = PRECISION_DIGITS as usize + 1;
        let padded = if digits.len() < width {
            format!("{}{}", "0".repeat(width - digits.len()), digits)
        } else {
            digits
        };
        let split = padded.len() - PRECISION_DIGITS as usize;
        let (int_part, frac_part) = padded.split_at(split);
        if frac_digits == 0 {
            int_part.to_string()
        } else {
            format!("{int_part}.{}", &frac_part[..frac_digits])
        }
    }

    /// Absolute difference as f64, for tolerance checks.
    pub fn abs_diff_f64(&self, other: &Fixed) -> f64 {
        let d = &self.0 - &other.0;
        d.magnitude().to_f64().unwrap_or(f64::INFINITY) / 1e60
    }
}

/// Primes up to `bound`, by a plain sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        let mut q = p * p;
        while q <= n {
            composite[q] = true;
            q += p;
        }
    }
    primes
}

/// Smallest-prime-factor table for 0..=n (entry 0 and 1 unused).
fn smallest_prime_factors(n: u64) -> Vec<u32> {
    let n = n as usize;
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Truncated Euler product for C_r with a tail bound on the relative
/// truncation error.
#[derive(Clone, Debug)]
pub struct EulerProductEstimate {
    pub r: u32,
    pub prime_bound: u64,
    pub value: Fixed,
    pub tail_bound: f64,
}

/// Local factor 1 + ((p-1) h_r(p) - p^{r-1}) / p^r as an exact rational.
pub fn euler_local_factor(r: u32, p: u64) -> Result<Rational> {
    let num = (big(p) - BigInt::one()) * h_poly_big(r, &big(p))? - big_pow(p, r - 1);
    Ok(Rational::one() + Rational::new(num, big_pow(p, r)))
}

/// Product of local factors over primes p <= prime_bound.
///
/// Tail bound: |(p-1) h_r(p) - p^{r-1}| <= (r+1) p^{r-2}, so the log of
/// each omitted factor is at most 3r/p^2 in magnitude and the omitted
/// primes contribute a relative error below exp(3r/(P-1)) - 1.
pub fn euler_constant(r: u32, prime_bound: u64) -> Result<EulerProductEstimate> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!(
            "euler_constant needs r >= 2, got {r}"
        )));
    }
    if prime_bound < 100 {
        return Err(Error::InvalidArgument(format!(
            "euler_constant needs prime_bound >= 100, got {prime_bound}"
        )));
    }
    let mut value = Fixed::one();
    for p in primes_up_to(prime_bound) {
        value = value.mul(&Fixed::from_ratio(&euler_local_factor(r, p)?));
    }
    let tail_bound = (3.0 * r as f64 / (prime_bound as f64 - 1.0)).exp_m1();
    Ok(EulerProductEstimate {
        r,
        prime_bound,
        value,
        tail_bound,
    })
}

/// Exact partial sum of f_r up to x, with the Euler-product prediction
/// C_r x^r / r and their ratio when a constant is available (r >= 2).
#[derive(Clone, Debug)]
pub struct PartialSumReport {
    pub r: u32,
    pub x: u64,
    pub exact_sum: BigInt,
    pub predicted: Option<Fixed>,
    pub ratio: Option<f64>,
}

/// Exact sum of f_r(m) for m <= x, via a smallest-prime-factor sieve.
pub fn exact_partial_sum(r: u32, x: u64) -> Result<BigInt> {
    if r == 0 || x == 0 {
        return Err(Error::ZeroInput);
    }
    if x > PARTIAL_SUM_GUARD {
        return Err(Error::GuardExceeded(format!(
            "partial_sum needs x <= {PARTIAL_SUM_GUARD}, got {x}"
        )));
    }
    let spf = smallest_prime_factors(x);
    let mut h_cache: HashMap<u64, BigInt> = HashMap::new();
    let mut sum = BigInt::one(); // f_r(1) = 1
    if x == 1 {
        return Ok(sum);
    }
    for m in 2..=x {
        let mut rest = m;
        let mut local = BigInt::one();
        while rest > 1 {
            let p = spf[rest as usize] as u64;
            let mut a = 0u32;
            while rest % p == 0 {
                rest /= p;
                a += 1;
            }
            let h = h_cache
                .entry(p)
                .or_insert_with(|| h_poly_big(r, &big(p)).expect("p >= 2"));
            if h.is_zero() {
                local = BigInt::zero();
                break;
            }
            local *= big_pow(p, (a - 1) * (r - 1)) * (big(p) - BigInt::one()) * &*h;
        }
        sum += local;
    }
    Ok(sum)
}

fn report_with(r: u32, x: u64, est: Option<&EulerProductEstimate>) -> Result<PartialSumReport> {
    let exact_sum = exact_partial_sum(r, x)?;
    let predicted = est.map(|e| {
        let lead = Rational::new(big_pow(x, r), big(r as u64));
        e.value.mul(&Fixed::from_ratio(&lead))
    });
    let ratio = predicted.as_ref().map(|p| {
        exact_sum.to_f64().unwrap_or(f64::INFINITY) / p.to_f64()
    });
    Ok(PartialSumReport {
        r,
        x,
        exact_sum,
        predicted,
        ratio,
    })
}

/// Partial sum with the prediction from a prime bound of 10^5.
pub fn partial_sum(r: u32, x: u64) -> Result<PartialSumReport> {
    let est = if r >= 2 {
        Some(euler_constant(r, 100_000)?)
    } else {
        None
    };
    report_with(r, x, est.as_ref())
}

/// Reports for several x sharing one Euler-product evaluation.
pub fn asymptotic_report(
    r: u32,
    xs: &[u64],
    prime_bound: u64,
) -> Result<Vec<PartialSumReport>> {
    let est = if r >= 2 {
        Some(euler_constant(r, prime_bound)?)
    } else {
        None
    };
    xs.iter().map(|&x| report_with(r, x, est.as_ref())).collect()
}

/// The Dirichlet factor g_r with f_r = g_r * id_{r-1}: multiplicative,
/// g_r(p) = (p-1) h_r(p) - p^{r-1} and zero at higher prime powers.
pub fn g_r(r: u32, n: u64) -> Result<BigInt> {
    let f = crate::arith::factorize(n)?;
    let mut out = BigInt::one();
    for &(p, a) in f.factors() {
        if a >= 2 {
            return Ok(BigInt::zero());
        }
        out *= (big(p) - BigInt::one()) * h_poly_big(r, &big(p))? - big_pow(p, r - 1);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{divisors, euler_phi};
    use crate::orbicyclic::f_r_diagonal;

    #[test]
    fn fixed_point_basics() {
        let half = Fixed::from_ratio(&Rational::new(BigInt::one(), big(2)));
        assert_eq!(half.to_f64(), 0.5);
        let quarter = half.mul(&half);
        assert_eq!(quarter.to_f64(), 0.25);
        assert_eq!(quarter.to_decimal_string(4), "0.2500");
        assert_eq!(Fixed::one().to_decimal_string(0), "1");
    }

    #[test]
    fn local_factor_examples() {
        // r = 2: h_2 = 1 gives 1 - 1/p^2
        assert_eq!(
            euler_local_factor(2, 5).unwrap(),
            Rational::new(big(24), big(25))
        );
        // r = 3 at p = 2: 1 + (2 - 6)/8 = 1/2
        assert_eq!(
            euler_local_factor(3, 2).unwrap(),
            Rational::new(BigInt::one(), big(2))
        );
        // r = 3 at p = 3: 20/27
        assert_eq!(
            euler_local_factor(3, 3).unwrap(),
            Rational::new(big(20), big(27))
        );
    }

    #[test]
    fn c2_approaches_basel_constant() {
        let est = euler_constant(2, 20_000).unwrap();
        let basel = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
        assert!((est.value.to_f64() - basel).abs() < 1e-4);
    }

    #[test]
    fn euler_constant_stability() {
        let a = euler_constant(3, 2_000).unwrap();
        let b = euler_constant(3, 4_000).unwrap();
        assert!(a.value.abs_diff_f64(&b.value) <= a.tail_bound * a.value.to_f64());
    }

    #[test]
    fn partial_sum_examples() {
        // r = 2: sum of phi(m) for m <= 10 is 32
        assert_eq!(exact_partial_sum(2, 10).unwrap(), BigInt::from(32));
        // r = 1: f_1 = epsilon
        assert_eq!(exact_partial_sum(1, 100).unwrap(), BigInt::one());
        // even m contribute 0 for r = 3
        let direct: BigInt = (1..=10u64)
            .map(|m| f_r_diagonal(m, 3).unwrap())
            .sum();
        assert_eq!(exact_partial_sum(3, 10).unwrap(), direct);
    }

    #[test]
    fn partial_sum_matches_diagonal_termwise() {
        for x in [1u64, 7, 60] {
            let direct: BigInt = (1..=x).map(|m| f_r_diagonal(m, 3).unwrap()).sum();
            assert_eq!(exact_partial_sum(3, x).unwrap(), direct, "x = {x}");
        }
    }

    #[test]
    fn g_r_reconstructs_f_r() {
        for m in 1..=200u64 {
            let mut s = BigInt::zero();
            for d in divisors(m).unwrap() {
                s += g_r(3, d).unwrap() * big_pow(m / d, 2);
            }
            assert_eq!(s, f_r_diagonal(m, 3).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn r2_control_ratio() {
        // sum of phi(m) ~ (6/pi^2) x^2 / 2
        let rep = partial_sum(2, 3000).unwrap();
        let ratio = rep.ratio.unwrap();
        assert!((ratio - 1.0).abs() < 0.01, "ratio = {ratio}");
        let _ = euler_phi(1).unwrap();
    }
}
