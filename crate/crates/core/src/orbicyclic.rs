//! The orbicyclic function E(m_1, ..., m_r) by four independent
//! strategies, the polynomial h_s, the diagonal f_r, and the
//! Moebius-inversion identity for the divisor sums of E.
//!
//! The public entry point [`e`] dispatches to the multiplicative
//! prime-power evaluation; the other strategies exist for verification
//! and benchmarking.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::arith::{
    big, big_pow, divisors, exact_div, factorize, mobius, multiplicity, try_for_each_tuple,
    Accumulator, ArgTuple,
};
use crate::error::{Error, Result};
use crate::ramanujan::{c_prime_power_method, c_small};

/// Largest M accepted by the defining-sum oracle, before dividing by r.
pub const DEFINITION_GUARD: u64 = 1_000_000;

/// Largest number of divisor tuples the inversion check will enumerate.
pub const INVERSION_GUARD: u64 = 1_000_000;

/// h_s(x) = ((x-1)^(s-1) + (-1)^s) / x, an integer for every integer x != 0.
pub fn h_poly(s: u32, x: i64) -> Result<BigInt> {
    h_poly_big(s, &BigInt::from(x))
}

pub(crate) fn h_poly_big(s: u32, x: &BigInt) -> Result<BigInt> {
    if s == 0 {
        return Err(Error::ZeroInput);
    }
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sign = if s % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let num = (x - BigInt::one()).pow(s - 1) + sign;
    Ok(exact_div(num, x))
}

/// Exponent vector of one prime across the argument tuple. Zero entries
/// correspond to arguments not divisible by p and drop out of the local
/// evaluation.
#[derive(Clone, Debug)]
pub struct PrimeLocalArgs {
    p: u64,
    exponents: Vec<u32>,
}

impl PrimeLocalArgs {
    pub fn new(p: u64, exponents: Vec<u32>) -> Self {
        PrimeLocalArgs { p, exponents }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }
}

/// Local value E(p^{a_1}, ..., p^{a_r}) = p^v (p-1)^{r'-s+1} h_s(p),
/// computed on the nonzero exponents r'. All exponents zero gives 1.
pub fn e_prime_power(pl: &PrimeLocalArgs) -> BigInt {
    let mut nz: Vec<u32> = pl.exponents.iter().copied().filter(|&a| a > 0).collect();
    if nz.is_empty() {
        return BigInt::one();
    }
    nz.sort_unstable_by(|a, b| b.cmp(a));
    let a = nz[0];
    let s = nz.iter().take_while(|&&e| e == a).count() as u32;
    let rp = nz.len() as u32;
    let total: u32 = nz.iter().sum();
    // total >= a + (rp - 1), so this stays nonnegative in this order
    let v = total + 1 - rp - a;
    let p = big(pl.p);
    let h = h_poly_big(s, &p).expect("prime is nonzero");
    big_pow(pl.p, v) * (p - BigInt::one()).pow(rp - s + 1) * h
}

/// Defining sum (1/M) sum_k c_{m_1}(k) ... c_{m_r}(k). Oracle: requires
/// lcm | M and M <= guard / r. The result is independent of M.
pub fn e_definition(t: &ArgTuple, modulus: u64) -> Result<BigInt> {
    let r = t.arity() as u64;
    if modulus == 0 || modulus % t.lcm() != 0 {
        return Err(Error::LcmNotDividing {
            lcm: t.lcm(),
            modulus,
        });
    }
    let limit = DEFINITION_GUARD / r;
    if modulus > limit {
        return Err(Error::GuardExceeded(format!(
            "e_definition needs M <= {limit} for r = {r}, got {modulus}"
        )));
    }
    // c_{m_i} is periodic mod m_i; slot 0 holds the value at k = m_i.
    let mut tables: Vec<Vec<i64>> = Vec::with_capacity(t.arity());
    for &mi in t.args() {
        let mut tab = Vec::with_capacity(mi as usize);
        for k in 0..mi {
            tab.push(c_small(mi, if k == 0 { mi } else { k })?);
        }
        tables.push(tab);
    }
    let mut acc = Accumulator::new();
    for k in 1..=modulus {
        let mut prod: i128 = 1;
        let mut overflowed = false;
        for (tab, &mi) in tables.iter().zip(t.args()) {
            let v = tab[(k % mi) as usize] as i128;
            if v == 0 {
                prod = 0;
                break;
            }
            match prod.checked_mul(v) {
                Some(p) => prod = p,
                None => {
                    overflowed = true;
                    break;
                }
            }
        }
        if overflowed {
            let mut bp = BigInt::one();
            for (tab, &mi) in tables.iter().zip(t.args()) {
                bp *= BigInt::from(tab[(k % mi) as usize]);
            }
            acc.add_big(bp);
        } else if prod != 0 {
            acc.add_i128(prod);
        }
    }
    Ok(exact_div(acc.finish(), &big(modulus)))
}

/// Convolution form: sum over divisor tuples of
/// d_1...d_r / lcm[d_1,...,d_r] * mu(m_1/d_1)...mu(m_r/d_r).
pub fn e_convolution(t: &ArgTuple) -> Result<BigInt> {
    let div_lists: Vec<Vec<u64>> = t
        .args()
        .iter()
        .map(|&m| divisors(m))
        .collect::<Result<_>>()?;
    let mu_lists: Vec<Vec<i64>> = t
        .args()
        .iter()
        .zip(&div_lists)
        .map(|(&m, ds)| ds.iter().map(|&d| mobius(m / d)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let lens: Vec<usize> = div_lists.iter().map(|d| d.len()).collect();
    let mut acc = Accumulator::new();
    try_for_each_tuple(&lens, |idx| {
        let mut mu: i64 = 1;
        let mut prod: u128 = 1;
        let mut l: u64 = 1;
        let mut big_path = false;
        for (i, &j) in idx.iter().enumerate() {
            let m = mu_lists[i][j];
            if m == 0 {
                mu = 0;
                break;
            }
            mu *= m;
            let d = div_lists[i][j];
            let g = l.gcd(&d);
            l = l / g * d; // divides t.lcm(), cannot overflow
            match prod.checked_mul(d as u128) {
                Some(p) => prod = p,
                None => {
                    big_path = true;
                    break;
                }
            }
        }
        if mu == 0 {
            return Ok(());
        }
        if big_path {
            let mut bp = BigInt::one();
            for (i, &j) in idx.iter().enumerate() {
                bp *= BigInt::from(div_lists[i][j]);
            }
            let term = exact_div(bp, &big(l));
            acc.add_big(if mu > 0 { term } else { -term });
        } else {
            assert!(prod % l as u128 == 0, "lcm must divide the divisor product");
            let q = (prod / l as u128) as i128;
            acc.add_i128(if mu > 0 { q } else { -q });
        }
        Ok(())
    })?;
    Ok(acc.finish())
}

/// Divisor form: (1/m) sum over d | m of c_{m_1}(d)...c_{m_r}(d) phi(m/d).
pub fn e_divisor(t: &ArgTuple) -> Result<BigInt> {
    let m = t.lcm();
    let mut sum = BigInt::zero();
    for d in divisors(m)? {
        let mut prod = BigInt::from(crate::arith::euler_phi(m / d)?);
        for &mi in t.args() {
            if prod.is_zero() {
                break;
            }
            prod *= c_prime_power_method(mi, d)?;
        }
        sum += prod;
    }
    Ok(exact_div(sum, &big(m)))
}

/// Product of local prime-power values over the primes dividing the lcm.
pub fn e_multiplicative(t: &ArgTuple) -> Result<BigInt> {
    let f = factorize(t.lcm())?;
    let mut result = BigInt::one();
    for &(p, _) in f.factors() {
        let exps: Vec<u32> = t.args().iter().map(|&mi| multiplicity(mi, p)).collect();
        let local = e_prime_power(&PrimeLocalArgs::new(p, exps));
        if local.is_zero() {
            return Ok(BigInt::zero());
        }
        result *= local;
    }
    Ok(result)
}

/// E(m_1, ..., m_r); default dispatch.
pub fn e(t: &ArgTuple) -> Result<BigInt> {
    e_multiplicative(t)
}

/// Diagonal f_r(m) = E(m, ..., m), evaluated locally as
/// p^{(a-1)(r-1)} (p-1) h_r(p) at each p^a || m.
pub fn f_r_diagonal(m: u64, r: u32) -> Result<BigInt> {
    if r == 0 {
        return Err(Error::ZeroInput);
    }
    let f = factorize(m)?;
    let mut out = BigInt::one();
    for &(p, a) in f.factors() {
        let h = h_poly_big(r, &big(p))?;
        if h.is_zero() {
            return Ok(BigInt::zero());
        }
        out *= big_pow(p, (a - 1) * (r - 1)) * (big(p) - BigInt::one()) * h;
    }
    Ok(out)
}

/// Checks sum over divisor tuples of E(d_1,...,d_r) == m_1...m_r / lcm.
pub fn verify_moebius_inversion(t: &ArgTuple) -> Result<bool> {
    let div_lists: Vec<Vec<u64>> = t
        .args()
        .iter()
        .map(|&m| divisors(m))
        .collect::<Result<_>>()?;
    let mut tuples: u64 = 1;
    for d in &div_lists {
        tuples = tuples.saturating_mul(d.len() as u64);
    }
    if tuples > INVERSION_GUARD {
        return Err(Error::GuardExceeded(format!(
            "inversion check would enumerate {tuples} tuples (limit {INVERSION_GUARD})"
        )));
    }
    let lens: Vec<usize> = div_lists.iter().map(|d| d.len()).collect();
    let mut sum = BigInt::zero();
    try_for_each_tuple(&lens, |idx| {
        let sub: Vec<u64> = idx
            .iter()
            .enumerate()
            .map(|(i, &j)| div_lists[i][j])
            .collect();
        sum += e_multiplicative(&ArgTuple::new(sub)?)?;
        Ok(())
    })?;
    let prod = t.args().iter().fold(BigInt::one(), |acc, &m| acc * big(m));
    let expected = exact_div(prod, &big(t.lcm()));
    Ok(sum == expected)
}
