//! The gcd-sum function A(m_1, ..., m_r): defining mean, convolution and
//! divisor forms, the prime-power closed form, the diagonal A_r, and the
//! inequalities relating A to E.
//!
//! A is rational-valued in general (A(2,4) = 7/2), so every result is an
//! exact [`Rational`]. The brute-force mean is treated as ground truth;
//! the closed forms are the formulas under test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{
    big, big_pow, divisors, euler_phi, factorize, multiplicity, try_for_each_tuple, Accumulator,
    ArgTuple, Rational,
};
use crate::error::{Error, Result};
use crate::orbicyclic::e_multiplicative;

/// Largest lcm accepted by the defining-sum oracle.
pub const DEFINITION_GUARD: u64 = 1_000_000;

/// Defining mean (1/m) sum_k gcd(k, m_1) ... gcd(k, m_r).
pub fn a_definition(t: &ArgTuple) -> Result<Rational> {
    let m = t.lcm();
    if m > DEFINITION_GUARD {
        return Err(Error::GuardExceeded(format!(
            "a_definition needs lcm <= {DEFINITION_GUARD}, got {m}"
        )));
    }
    let mut acc = Accumulator::new();
    for k in 1..=m {
        let mut prod: u128 = 1;
        let mut overflowed = false;
        for &mi in t.args() {
            match prod.checked_mul(k.gcd(&mi) as u128) {
                Some(p) => prod = p,
                None => {
                    overflowed = true;
                    break;
                }
            }
        }
        if overflowed || prod > i128::MAX as u128 {
            let mut bp = BigInt::one();
            for &mi in t.args() {
                bp *= BigInt::from(k.gcd(&mi));
            }
            acc.add_big(bp);
        } else {
            acc.add_i128(prod as i128);
        }
    }
    Ok(Rational::new(acc.finish(), big(m)))
}

/// Convolution form: sum over divisor tuples of
/// phi(d_1)...phi(d_r) / lcm[d_1,...,d_r].
pub fn a_convolution(t: &ArgTuple) -> Result<Rational> {
    let l = t.lcm();
    let div_lists: Vec<Vec<u64>> = t
        .args()
        .iter()
        .map(|&m| divisors(m))
        .collect::<Result<_>>()?;
    let phi_lists: Vec<Vec<u64>> = div_lists
        .iter()
        .map(|ds| ds.iter().map(|&d| euler_phi(d)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let lens: Vec<usize> = div_lists.iter().map(|d| d.len()).collect();
    // accumulate numerators over the common denominator l
    let mut acc = Accumulator::new();
    try_for_each_tuple(&lens, |idx| {
        let mut prod: u128 = 1;
        let mut ld: u64 = 1;
        let mut big_path = false;
        for (i, &j) in idx.iter().enumerate() {
            let d = div_lists[i][j];
            let g = ld.gcd(&d);
            ld = ld / g * d; // divides l
            match prod.checked_mul(phi_lists[i][j] as u128) {
                Some(p) => prod = p,
                None => {
                    big_path = true;
                    break;
                }
            }
        }
        let scale = l / ld;
        if big_path {
            let mut bp = BigInt::one();
            for (i, &j) in idx.iter().enumerate() {
                bp *= BigInt::from(phi_lists[i][j]);
            }
            acc.add_big(bp * big(scale));
        } else {
            match prod.checked_mul(scale as u128) {
                Some(v) if v <= i128::MAX as u128 => acc.add_i128(v as i128),
                _ => {
                    let mut bp = BigInt::one();
                    for (i, &j) in idx.iter().enumerate() {
                        bp *= BigInt::from(phi_lists[i][j]);
                    }
                    acc.add_big(bp * big(scale));
                }
            }
        }
        Ok(())
    })?;
    Ok(Rational::new(acc.finish(), big(l)))
}

/// Divisor form: (1/m) sum over d | m of gcd(d, m_1)...gcd(d, m_r) phi(m/d).
pub fn a_divisor(t: &ArgTuple) -> Result<Rational> {
    let m = t.lcm();
    let mut sum = BigInt::zero();
    for d in divisors(m)? {
        let mut prod = BigInt::from(euler_phi(m / d)?);
        for &mi in t.args() {
            prod *= BigInt::from(d.gcd(&mi));
        }
        sum += prod;
    }
    Ok(Rational::new(sum, big(m)))
}

/// Closed form at a single prime: exponents are sorted ascending
/// internally (A is symmetric in its arguments).
pub fn a_prime_power(p: u64, exponents: &[u32]) -> Result<Rational> {
    if exponents.is_empty() {
        return Err(Error::EmptyInput);
    }
    if exponents.iter().any(|&a| a == 0) {
        return Err(Error::ZeroInput);
    }
    let mut a: Vec<u32> = exponents.to_vec();
    a.sort_unstable();
    let r = a.len();
    // prefix(l) = a_0 + a_1 + ... + a_{l-1} with a_0 = 0, 1-based l
    let prefix = |l: usize| -> u32 { a[..l.saturating_sub(1)].iter().sum() };
    let first = big_pow(p, prefix(r));
    let mut inner = BigInt::zero();
    for l in 1..=r {
        let lo = if l == 1 { 0 } else { a[l - 2] };
        let hi = a[l - 1];
        let mut geom = BigInt::zero();
        for j in lo..hi {
            geom += big_pow(p, (r - l) as u32 * j);
        }
        inner += big_pow(p, prefix(l)) * geom;
    }
    let one_minus = Rational::new(big(p - 1), big(p));
    Ok(Rational::from_integer(first) + one_minus * Rational::from_integer(inner))
}

/// Multiplicative evaluation: product of prime-power closed forms over
/// the primes dividing the lcm, on the sub-tuple of nonzero exponents.
pub fn a_multiplicative(t: &ArgTuple) -> Result<Rational> {
    let f = factorize(t.lcm())?;
    let mut out = Rational::one();
    for &(p, _) in f.factors() {
        let exps: Vec<u32> = t
            .args()
            .iter()
            .map(|&mi| multiplicity(mi, p))
            .filter(|&e| e > 0)
            .collect();
        out *= a_prime_power(p, &exps)?;
    }
    Ok(out)
}

/// Diagonal A_r(m) = (1/m) sum over d | m of d^r phi(m/d).
pub fn a_r_diagonal(m: u64, r: u32) -> Result<Rational> {
    let mut sum = BigInt::zero();
    for d in divisors(m)? {
        sum += big_pow(d, r) * euler_phi(m / d)?;
    }
    Ok(Rational::new(sum, big(m)))
}

/// E(t) <= A(t), by exact rational comparison.
pub fn check_e_le_a(t: &ArgTuple) -> Result<bool> {
    let e = Rational::from_integer(e_multiplicative(t)?);
    Ok(e <= a_convolution(t)?)
}

/// A(t) >= A(m_1)...A(m_r), with equality on pairwise-coprime tuples.
pub fn check_product_lower_bound(t: &ArgTuple) -> Result<bool> {
    let lhs = a_convolution(t)?;
    let mut rhs = Rational::one();
    for &mi in t.args() {
        rhs *= a_convolution(&ArgTuple::new(vec![mi])?)?;
    }
    Ok(lhs >= rhs)
}
