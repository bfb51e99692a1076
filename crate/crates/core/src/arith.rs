//! Exact integer arithmetic, factorization, and the classical one-variable
//! multiplicative functions everything else is built on.
//!
//! All public results are exact: integers are [`BigInt`], rationals are
//! always-reduced [`Rational`] values. Inputs are desk scale (`u64`);
//! intermediate and output values may grow without bound.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, kept reduced with positive denominator.
pub type Rational = BigRational;

pub(crate) fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

pub(crate) fn big_pow(base: u64, exp: u32) -> BigInt {
    big(base).pow(exp)
}

/// Prime factorization as `(prime, exponent)` pairs with strictly
/// increasing primes. The empty list represents 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Reconstructs the factored integer.
    pub fn value(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, &(p, a)| acc * big_pow(p, a))
    }
}

/// Trial division up to sqrt(n). Inputs are desk scale, so nothing more
/// elaborate is needed.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut n = n;
    let mut factors = Vec::new();
    let mut p: u64 = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut a = 0u32;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            factors.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Ok(Factorization { factors })
}

/// Exponent of `p` in `n`.
pub(crate) fn multiplicity(mut n: u64, p: u64) -> u32 {
    let mut a = 0;
    while n % p == 0 {
        n /= p;
        a += 1;
    }
    a
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut divs = vec![1u64];
    for &(p, a) in f.factors() {
        let mut next = Vec::with_capacity(divs.len() * (a as usize + 1));
        for &d in &divs {
            let mut q = d;
            next.push(q);
            for _ in 0..a {
                q *= p;
                next.push(q);
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Ok(divs)
}

pub fn gcd_all(xs: &[u64]) -> Result<u64> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(xs.iter().fold(0u64, |g, &x| g.gcd(&x)))
}

pub fn lcm_all(xs: &[u64]) -> Result<u64> {
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut l: u64 = 1;
    for &x in xs {
        if x == 0 {
            return Err(Error::ZeroInput);
        }
        let g = l.gcd(&x);
        l = (l / g).checked_mul(x).ok_or(Error::Overflow("lcm"))?;
    }
    Ok(l)
}

/// Moebius function; -1, 0 or 1.
pub fn mobius(n: u64) -> Result<i64> {
    let f = factorize(n)?;
    if f.factors().iter().any(|&(_, a)| a > 1) {
        return Ok(0);
    }
    Ok(if f.factors().len() % 2 == 0 { 1 } else { -1 })
}

/// Euler totient, computed from the factorization.
pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.factors().iter().fold(n, |acc, &(p, _)| acc / p * (p - 1)))
}

/// Number of divisors.
pub fn tau(n: u64) -> Result<u64> {
    Ok(factorize(n)?
        .factors()
        .iter()
        .map(|&(_, a)| a as u64 + 1)
        .product())
}

/// A multiplicative function of one variable, defined by its values at
/// prime powers. The value at `p^0` is implicitly 1.
#[derive(Clone)]
pub struct MultiplicativeRule {
    name: String,
    rule: Arc<dyn Fn(u64, u32) -> Rational + Send + Sync>,
}

impl MultiplicativeRule {
    pub fn new<F>(name: impl Into<String>, rule: F) -> Self
    where
        F: Fn(u64, u32) -> Rational + Send + Sync + 'static,
    {
        MultiplicativeRule {
            name: name.into(),
            rule: Arc::new(rule),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn at_prime_power(&self, p: u64, a: u32) -> Rational {
        if a == 0 {
            Rational::one()
        } else {
            (self.rule)(p, a)
        }
    }

    pub fn one() -> Self {
        Self::new("1", |_, _| Rational::one())
    }

    pub fn id() -> Self {
        Self::id_k(1)
    }

    pub fn id_k(k: u32) -> Self {
        Self::new(format!("id_{k}"), move |p, a| {
            Rational::from_integer(big_pow(p, a * k))
        })
    }

    pub fn epsilon() -> Self {
        Self::new("eps", |_, _| Rational::zero())
    }

    pub fn tau() -> Self {
        Self::new("tau", |_, a| Rational::from_integer(BigInt::from(a + 1)))
    }

    pub fn phi() -> Self {
        Self::new("phi", |p, a| {
            Rational::from_integer(big_pow(p, a - 1) * (big(p) - 1))
        })
    }

    pub fn mobius() -> Self {
        Self::new("mu", |_, a| {
            if a == 1 {
                -Rational::one()
            } else {
                Rational::zero()
            }
        })
    }
}

/// Product of the rule's prime-power values over the factorization of `n`.
pub fn eval_multiplicative(rule: &MultiplicativeRule, n: u64) -> Result<Rational> {
    let f = factorize(n)?;
    Ok(f.factors()
        .iter()
        .fold(Rational::one(), |acc, &(p, a)| {
            acc * rule.at_prime_power(p, a)
        }))
}

/// Argument tuple (m_1, ..., m_r) with its lcm cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArgTuple {
    args: Vec<u64>,
    lcm: u64,
}

impl ArgTuple {
    pub fn new(args: Vec<u64>) -> Result<Self> {
        if args.is_empty() {
            return Err(Error::EmptyInput);
        }
        let lcm = lcm_all(&args)?;
        Ok(ArgTuple { args, lcm })
    }

    pub fn args(&self) -> &[u64] {
        &self.args
    }

    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

/// Visits every index tuple of the given cartesian shape. The callback may
/// fail; the first error aborts the walk.
pub(crate) fn try_for_each_tuple<F>(lens: &[usize], mut f: F) -> Result<()>
where
    F: FnMut(&[usize]) -> Result<()>,
{
    let r = lens.len();
    if lens.iter().any(|&l| l == 0) {
        return Ok(());
    }
    let mut idx = vec![0usize; r];
    loop {
        f(&idx)?;
        let mut i = 0;
        loop {
            if i == r {
                return Ok(());
            }
            idx[i] += 1;
            if idx[i] < lens[i] {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Integer accumulator that stays in `i128` until it would overflow.
pub(crate) struct Accumulator {
    small: i128,
    big: BigInt,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator {
            small: 0,
            big: BigInt::zero(),
        }
    }

    pub fn add_i128(&mut self, v: i128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                self.big += BigInt::from(self.small);
                self.small = v;
            }
        }
    }

    pub fn add_big(&mut self, v: BigInt) {
        self.big += v;
    }

    pub fn finish(self) -> BigInt {
        self.big + BigInt::from(self.small)
    }
}

/// Exact division; panics if `b` does not divide `a`. The callers use this
/// as an integrity check on identities that guarantee divisibility.
pub(crate) fn exact_div(a: BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "expected {b} to divide exactly");
    q
}
