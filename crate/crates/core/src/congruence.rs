//! Counting solutions of x_1 + ... + x_r = n (mod M) with gcd(x_i, M)
//! constrained to a divisor set, by brute force, the general
//! Ramanujan-sum formula, and the singleton-constraint identities.
//!
//! Residues are represented in [0, M) with gcd(0, M) = M, so the
//! constraint {M} selects x = 0. Brute force is the ground truth for the
//! closed formulas.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{big, divisors, exact_div};
use crate::error::{Error, Result};
use crate::ramanujan::c_prime_power_method;

/// Largest M^r the brute-force enumerator will touch.
pub const BRUTE_GUARD: u64 = 10_000_000;

/// Largest M accepted by the exponential-sum method.
pub const EXPONENTIAL_GUARD: u64 = 100_000;

/// Largest M accepted by the orthogonality spot check.
pub const ORTHOGONALITY_GUARD: u64 = 10_000;

const TOLERANCE: f64 = 1e-6;

/// Nonempty set of allowed gcd values, each a divisor of the modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSet {
    allowed: BTreeSet<u64>,
}

impl DivisorSet {
    pub fn new(allowed: impl IntoIterator<Item = u64>) -> Result<Self> {
        let allowed: BTreeSet<u64> = allowed.into_iter().collect();
        if allowed.is_empty() {
            return Err(Error::EmptyInput);
        }
        if allowed.contains(&0) {
            return Err(Error::ZeroInput);
        }
        Ok(DivisorSet { allowed })
    }

    pub fn singleton(d: u64) -> Result<Self> {
        Self::new([d])
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.allowed.iter().copied()
    }

    pub fn contains(&self, d: u64) -> bool {
        self.allowed.contains(&d)
    }
}

/// A congruence counting instance (M, n, D_1, ..., D_r). The target is
/// reduced mod M on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceInstance {
    modulus: u64,
    target: u64,
    constraints: Vec<DivisorSet>,
}

impl CongruenceInstance {
    pub fn new(modulus: u64, target: u64, constraints: Vec<DivisorSet>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroInput);
        }
        if constraints.is_empty() {
            return Err(Error::EmptyInput);
        }
        for set in &constraints {
            for d in set.iter() {
                if modulus % d != 0 {
                    return Err(Error::NotADivisor {
                        value: d,
                        modulus,
                    });
                }
            }
        }
        Ok(CongruenceInstance {
            modulus,
            target: target % modulus,
            constraints,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn constraints(&self) -> &[DivisorSet] {
        &self.constraints
    }

    pub fn arity(&self) -> usize {
        self.constraints.len()
    }
}

fn gcd0(x: u64, m: u64) -> u64 {
    if x == 0 {
        m
    } else {
        x.gcd(&m)
    }
}

/// Direct enumeration of all admissible residue tuples.
pub fn count_bruteforce(inst: &CongruenceInstance) -> Result<u64> {
    let m = inst.modulus;
    let r = inst.arity() as u32;
    let size = m
        .checked_pow(r)
        .filter(|&s| s <= BRUTE_GUARD)
        .ok_or_else(|| {
            Error::GuardExceeded(format!(
                "count_bruteforce needs M^r <= {BRUTE_GUARD}, got {m}^{r}"
            ))
        })?;
    let _ = size;
    let allowed: Vec<Vec<u64>> = inst
        .constraints
        .iter()
        .map(|set| (0..m).filter(|&x| set.contains(gcd0(x, m))).collect())
        .collect();

    fn rec(allowed: &[Vec<u64>], m: u64, target: u64, acc: u64) -> u64 {
        match allowed {
            [last] => last
                .iter()
                .filter(|&&x| (acc + x) % m == target)
                .count() as u64,
            [first, rest @ ..] => first
                .iter()
                .map(|&x| rec(rest, m, target, (acc + x) % m))
                .sum(),
            [] => unreachable!("constraints are nonempty"),
        }
    }
    Ok(rec(&allowed, m, inst.target, 0))
}

/// General formula:
/// N = (1/M) sum over d | M of c_{M/d}(n) * prod_i sum_{e in D_i} c_{M/e}(d).
pub fn count_formula(inst: &CongruenceInstance) -> Result<BigInt> {
    let m = inst.modulus;
    let mut total = BigInt::zero();
    for d in divisors(m)? {
        let mut prod = c_prime_power_method(m / d, inst.target)?;
        for set in &inst.constraints {
            if prod.is_zero() {
                break;
            }
            let mut inner = BigInt::zero();
            for e in set.iter() {
                inner += c_prime_power_method(m / e, d)?;
            }
            prod *= inner;
        }
        total += prod;
    }
    let count = exact_div(total, &big(m));
    assert!(!count.is_negative(), "solution count must be nonnegative");
    Ok(count)
}

fn validate_singletons(m: u64, ds: &[u64]) -> Result<()> {
    if m == 0 {
        return Err(Error::ZeroInput);
    }
    if ds.is_empty() {
        return Err(Error::EmptyInput);
    }
    for &d in ds {
        if d == 0 || m % d != 0 {
            return Err(Error::NotADivisor {
                value: d,
                modulus: m,
            });
        }
    }
    Ok(())
}

/// Singleton-constraint count via the exponential sum
/// (1/M) sum_k c_{M/d_1}(k)...c_{M/d_r}(k) exp(-2 pi i k n / M).
/// Floating-point; mirrors the identity's proof and is used as an oracle.
pub fn count_singleton_exponential(m: u64, n: u64, ds: &[u64]) -> Result<u64> {
    validate_singletons(m, ds)?;
    if m > EXPONENTIAL_GUARD {
        return Err(Error::GuardExceeded(format!(
            "count_singleton_exponential needs M <= {EXPONENTIAL_GUARD}, got {m}"
        )));
    }
    let n = n % m;
    // c_{M/d_i}(k) tabulated over one full period of k
    let tables: Vec<Vec<f64>> = ds
        .iter()
        .map(|&d| {
            (1..=m)
                .map(|k| {
                    c_prime_power_method(m / d, k).map(|v| v.to_f64().expect("finite"))
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let mut re = 0.0f64;
    let mut im = 0.0f64;
    for k in 1..=m {
        let mut prod = 1.0f64;
        for tab in &tables {
            prod *= tab[(k - 1) as usize];
        }
        if prod == 0.0 {
            continue;
        }
        let t = ((k as u128 * n as u128) % m as u128) as f64 / m as f64;
        let angle = -std::f64::consts::TAU * t;
        re += prod * angle.cos();
        im += prod * angle.sin();
    }
    let val = re / m as f64;
    let rounded = val.round();
    if im.abs() / m as f64 > TOLERANCE || (val - rounded).abs() > TOLERANCE || rounded < -0.5 {
        return Err(Error::PrecisionLoss(format!(
            "exponential count evaluated to {val} + {im}i/M"
        )));
    }
    Ok(rounded as u64)
}

/// Singleton-constraint count via the exact divisor sum
/// (1/M) sum over delta | M of c_{M/d_1}(delta)...c_{M/d_r}(delta) c_{M/delta}(n).
pub fn count_singleton_divisor(m: u64, n: u64, ds: &[u64]) -> Result<BigInt> {
    validate_singletons(m, ds)?;
    let n = n % m;
    let mut total = BigInt::zero();
    for delta in divisors(m)? {
        let mut prod = c_prime_power_method(m / delta, n)?;
        for &d in ds {
            if prod.is_zero() {
                break;
            }
            prod *= c_prime_power_method(m / d, delta)?;
        }
        total += prod;
    }
    let count = exact_div(total, &big(m));
    assert!(!count.is_negative(), "solution count must be nonnegative");
    Ok(count)
}

/// Spot check of sum_{k=1..M} exp(2 pi i k n / M) = M when M | n, else 0.
pub fn exp_orthogonality_check(m: u64, n: i64) -> Result<bool> {
    if m == 0 {
        return Err(Error::ZeroInput);
    }
    if m > ORTHOGONALITY_GUARD {
        return Err(Error::GuardExceeded(format!(
            "exp_orthogonality_check needs M <= {ORTHOGONALITY_GUARD}, got {m}"
        )));
    }
    let nr = n.rem_euclid(m as i64) as u64;
    let mut re = 0.0f64;
    let mut im = 0.0f64;
    for k in 1..=m {
        let t = ((k as u128 * nr as u128) % m as u128) as f64 / m as f64;
        let angle = std::f64::consts::TAU * t;
        re += angle.cos();
        im += angle.sin();
    }
    let expected = if nr == 0 { m as f64 } else { 0.0 };
    Ok((re - expected).abs() < TOLERANCE && im.abs() < TOLERANCE)
}
