//! The common generalization F_f for Apostol-type kernels
//! f(k, n) = sum over d | gcd(k, n) of g(d) h(n/d).
//!
//! Choosing (g, h) = (id, mu) recovers E, (phi, 1) recovers A, and
//! (1, 1) gives F_tau. g and h may be arbitrary value tables, not just
//! multiplicative functions; multiplicativity-dependent shortcuts are
//! gated on the declared flag.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{big, divisors, euler_phi, try_for_each_tuple, Accumulator, ArgTuple, Rational};
use crate::error::{Error, Result};

/// Largest lcm accepted by the defining-sum path.
pub const DEFINITION_GUARD: u64 = 1_000_000;

/// A one-variable function on the positive integers with exact rational
/// values. Table-backed instances fail on missing entries.
#[derive(Clone)]
pub struct OneVarFn {
    name: String,
    multiplicative: bool,
    func: Arc<dyn Fn(u64) -> Result<Rational> + Send + Sync>,
}

impl OneVarFn {
    pub fn new<F>(name: impl Into<String>, multiplicative: bool, func: F) -> Self
    where
        F: Fn(u64) -> Result<Rational> + Send + Sync + 'static,
    {
        OneVarFn {
            name: name.into(),
            multiplicative,
            func: Arc::new(func),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_multiplicative(&self) -> bool {
        self.multiplicative
    }

    pub fn eval(&self, n: u64) -> Result<Rational> {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        (self.func)(n)
    }

    pub fn one() -> Self {
        Self::new("1", true, |_| Ok(Rational::one()))
    }

    pub fn id() -> Self {
        Self::new("id", true, |n| Ok(Rational::from_integer(big(n))))
    }

    pub fn id_k(k: u32) -> Self {
        Self::new(format!("id_{k}"), true, move |n| {
            Ok(Rational::from_integer(num_traits::Pow::pow(big(n), k)))
        })
    }

    pub fn epsilon() -> Self {
        Self::new("eps", true, |n| {
            Ok(if n == 1 {
                Rational::one()
            } else {
                Rational::zero()
            })
        })
    }

    pub fn mobius() -> Self {
        Self::new("mu", true, |n| {
            Ok(Rational::from_integer(BigInt::from(crate::arith::mobius(
                n,
            )?)))
        })
    }

    pub fn phi() -> Self {
        Self::new("phi", true, |n| {
            Ok(Rational::from_integer(big(euler_phi(n)?)))
        })
    }

    pub fn tau() -> Self {
        Self::new("tau", true, |n| {
            Ok(Rational::from_integer(big(crate::arith::tau(n)?)))
        })
    }

    /// Explicit value table; entries not present are an error, not a default.
    pub fn from_table(name: impl Into<String>, table: BTreeMap<u64, Rational>) -> Self {
        Self::new(name, false, move |n| {
            table.get(&n).cloned().ok_or(Error::MissingTableEntry(n))
        })
    }
}

/// The pair (g, h) defining an Apostol-type kernel.
#[derive(Clone)]
pub struct ApostolPair {
    pub g: OneVarFn,
    pub h: OneVarFn,
}

impl ApostolPair {
    pub fn new(g: OneVarFn, h: OneVarFn) -> Self {
        ApostolPair { g, h }
    }

    /// (id, mu): f(k, n) = c_n(k), so F_f = E.
    pub fn ramanujan() -> Self {
        Self::new(OneVarFn::id(), OneVarFn::mobius())
    }

    /// (phi, 1): f(k, n) = gcd(k, n), so F_f = A.
    pub fn gcd() -> Self {
        Self::new(OneVarFn::phi(), OneVarFn::one())
    }

    /// (1, 1): f(k, n) = tau(gcd(k, n)), so F_f = F_tau.
    pub fn tau_kernel() -> Self {
        Self::new(OneVarFn::one(), OneVarFn::one())
    }

    /// (tau, mu).
    pub fn tau_mobius() -> Self {
        Self::new(OneVarFn::tau(), OneVarFn::mobius())
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "ramanujan" | "id,mu" => Ok(Self::ramanujan()),
            "gcd" | "phi,1" => Ok(Self::gcd()),
            "tau" | "1,1" => Ok(Self::tau_kernel()),
            "tau,mu" => Ok(Self::tau_mobius()),
            _ => Err(Error::UnknownName {
                kind: "kernel pair",
                name: name.into(),
            }),
        }
    }

    pub fn is_multiplicative(&self) -> bool {
        self.g.is_multiplicative() && self.h.is_multiplicative()
    }
}

/// f(k, n) = sum over d | gcd(k, n) of g(d) h(n/d). `k = 0` uses
/// gcd(0, n) = n.
pub fn f_two_var(pair: &ApostolPair, k: u64, n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let g = if k == 0 { n } else { k.gcd(&n) };
    let mut sum = Rational::zero();
    for d in divisors(g)? {
        sum += pair.g.eval(d)? * pair.h.eval(n / d)?;
    }
    Ok(sum)
}

/// One period of f(., n), scaled to a common integer denominator.
struct ScaledPeriod {
    ints: Vec<BigInt>,
    denom: BigInt,
    small: Option<Vec<i64>>,
}

fn scaled_period(pair: &ApostolPair, n: u64) -> Result<ScaledPeriod> {
    let mut vals = Vec::with_capacity(n as usize);
    for k in 0..n {
        vals.push(f_two_var(pair, if k == 0 { n } else { k }, n)?);
    }
    let denom = vals
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = vals
        .iter()
        .map(|v| v.numer() * (&denom / v.denom()))
        .collect();
    let small = ints
        .iter()
        .map(|v| v.to_i64())
        .collect::<Option<Vec<i64>>>();
    Ok(ScaledPeriod { ints, denom, small })
}

/// Defining sum F_f(m_1,...,m_r) = (1/m) sum_k f(k, m_1)...f(k, m_r).
pub fn f_general_definition(pair: &ApostolPair, t: &ArgTuple) -> Result<Rational> {
    let m = t.lcm();
    if m > DEFINITION_GUARD {
        return Err(Error::GuardExceeded(format!(
            "f_general_definition needs lcm <= {DEFINITION_GUARD}, got {m}"
        )));
    }
    let periods: Vec<ScaledPeriod> = t
        .args()
        .iter()
        .map(|&mi| scaled_period(pair, mi))
        .collect::<Result<_>>()?;
    let mut acc = Accumulator::new();
    let all_small = periods.iter().all(|p| p.small.is_some());
    for k in 1..=m {
        if all_small {
            let mut prod: i128 = 1;
            let mut overflowed = false;
            for (p, &mi) in periods.iter().zip(t.args()) {
                let v = p.small.as_ref().unwrap()[(k % mi) as usize] as i128;
                if v == 0 {
                    prod = 0;
                    break;
                }
                match prod.checked_mul(v) {
                    Some(q) => prod = q,
                    None => {
                        overflowed = true;
                        break;
                    }
                }
            }
            if !overflowed {
                if prod != 0 {
                    acc.add_i128(prod);
                }
                continue;
            }
        }
        let mut bp = BigInt::one();
        for (p, &mi) in periods.iter().zip(t.args()) {
            bp *= &p.ints[(k % mi) as usize];
        }
        acc.add_big(bp);
    }
    let denom = periods
        .iter()
        .fold(big(m), |acc, p| acc * &p.denom);
    Ok(Rational::new(acc.finish(), denom))
}

/// Convolution form: sum over divisor tuples of
/// g(d_1)...g(d_r) / lcm * h(m_1/d_1)...h(m_r/d_r).
pub fn f_general_convolution(pair: &ApostolPair, t: &ArgTuple) -> Result<Rational> {
    let div_lists: Vec<Vec<u64>> = t
        .args()
        .iter()
        .map(|&m| divisors(m))
        .collect::<Result<_>>()?;
    let g_lists: Vec<Vec<Rational>> = div_lists
        .iter()
        .map(|ds| ds.iter().map(|&d| pair.g.eval(d)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let h_lists: Vec<Vec<Rational>> = t
        .args()
        .iter()
        .zip(&div_lists)
        .map(|(&m, ds)| ds.iter().map(|&d| pair.h.eval(m / d)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let lens: Vec<usize> = div_lists.iter().map(|d| d.len()).collect();
    let mut sum = Rational::zero();
    try_for_each_tuple(&lens, |idx| {
        let mut term = Rational::one();
        let mut ld: u64 = 1;
        for (i, &j) in idx.iter().enumerate() {
            let g = &g_lists[i][j];
            let h = &h_lists[i][j];
            if g.is_zero() || h.is_zero() {
                return Ok(());
            }
            term *= g;
            term *= h;
            let d = div_lists[i][j];
            let gcd = ld.gcd(&d);
            ld = ld / gcd * d;
        }
        sum += term / Rational::from_integer(big(ld));
        Ok(())
    })?;
    Ok(sum)
}

/// Divisor form: (1/m) sum over d | m of f(d, m_1)...f(d, m_r) phi(m/d),
/// where f(d, m_i) depends on d only through gcd(d, m_i).
pub fn f_general_divisor(pair: &ApostolPair, t: &ArgTuple) -> Result<Rational> {
    let m = t.lcm();
    let mut sum = Rational::zero();
    for d in divisors(m)? {
        let mut prod = Rational::from_integer(big(euler_phi(m / d)?));
        for &mi in t.args() {
            if prod.is_zero() {
                break;
            }
            prod *= f_two_var(pair, d, mi)?;
        }
        sum += prod;
    }
    Ok(sum / Rational::from_integer(big(m)))
}

/// F_tau(m_1,...,m_r) = sum over divisor tuples of 1 / lcm[d_1,...,d_r].
pub fn f_tau(t: &ArgTuple) -> Result<Rational> {
    let l = t.lcm();
    let div_lists: Vec<Vec<u64>> = t
        .args()
        .iter()
        .map(|&m| divisors(m))
        .collect::<Result<_>>()?;
    let lens: Vec<usize> = div_lists.iter().map(|d| d.len()).collect();
    let mut acc = Accumulator::new();
    try_for_each_tuple(&lens, |idx| {
        let mut ld: u64 = 1;
        for (i, &j) in idx.iter().enumerate() {
            let d = div_lists[i][j];
            let g = ld.gcd(&d);
            ld = ld / g * d;
        }
        acc.add_i128((l / ld) as i128);
        Ok(())
    })?;
    Ok(Rational::new(acc.finish(), big(l)))
}
