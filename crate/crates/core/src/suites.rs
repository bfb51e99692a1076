//! Named property suites behind the CLI `verify` command. Each suite
//! sweeps a bounded grid plus a deterministic seeded random sample and
//! reports pass/fail counts with the first counterexample found.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{euler_phi, ArgTuple, Rational};
use crate::congruence::{
    count_bruteforce, count_formula, count_singleton_divisor, count_singleton_exponential,
    CongruenceInstance, DivisorSet,
};
use crate::error::{Error, Result};
use crate::gcdsum::{
    a_convolution, a_definition, a_divisor, a_prime_power, check_e_le_a,
    check_product_lower_bound,
};
use crate::orbicyclic::{
    e_convolution, e_definition, e_divisor, e_multiplicative, h_poly, verify_moebius_inversion,
    DEFINITION_GUARD,
};
use crate::ramanujan::{c, c_divisor, c_exponential};
use crate::unified::{
    f_general_convolution, f_general_definition, f_general_divisor, f_tau, ApostolPair,
};

pub const SUITES: &[&str] = &[
    "ramanujan",
    "orbicyclic",
    "gcdsum",
    "unified",
    "congruence",
    "inversion",
    "all",
];

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub passed: u64,
    pub failed: u64,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

struct Checker {
    passed: u64,
    failed: u64,
    first: Option<String>,
}

impl Checker {
    fn new() -> Self {
        Checker {
            passed: 0,
            failed: 0,
            first: None,
        }
    }

    fn check<F: FnOnce() -> String>(&mut self, ok: bool, describe: F) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
    }

    fn report(self, suite: &'static str) -> SuiteReport {
        SuiteReport {
            suite,
            passed: self.passed,
            failed: self.failed,
            first_failure: self.first,
        }
    }
}

/// Runs a named suite. `max` bounds the argument grid, `r` the tuple
/// arity, `seed` the random sample. "all" runs every suite.
pub fn run(suite: &str, max: u64, r: usize, seed: u64) -> Result<Vec<SuiteReport>> {
    match suite {
        "ramanujan" => Ok(vec![ramanujan_suite(max, seed)?]),
        "orbicyclic" => Ok(vec![orbicyclic_suite(max, r, seed)?]),
        "gcdsum" => Ok(vec![gcdsum_suite(max, r, seed)?]),
        "unified" => Ok(vec![unified_suite(max, r, seed)?]),
        "congruence" => Ok(vec![congruence_suite(max, r, seed)?]),
        "inversion" => Ok(vec![inversion_suite(max, r, seed)?]),
        "all" => {
            let mut out = Vec::new();
            for s in SUITES.iter().filter(|&&s| s != "all") {
                out.extend(run(s, max, r, seed)?);
            }
            Ok(out)
        }
        _ => Err(Error::UnknownName {
            kind: "suite",
            name: suite.into(),
        }),
    }
}

/// Grid of r-tuples over [1, max]; full cross product when small enough,
/// otherwise a seeded sample of `cap` tuples.
fn tuple_grid(max: u64, r: usize, seed: u64, cap: usize) -> Vec<Vec<u64>> {
    let total = (max as u128).pow(r as u32);
    if total <= cap as u128 {
        let mut out = Vec::with_capacity(total as usize);
        let mut idx = vec![1u64; r];
        loop {
            out.push(idx.clone());
            let mut i = 0;
            loop {
                if i == r {
                    return out;
                }
                idx[i] += 1;
                if idx[i] <= max {
                    break;
                }
                idx[i] = 1;
                i += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cap)
        .map(|_| (0..r).map(|_| rng.gen_range(1..=max)).collect())
        .collect()
}

fn ramanujan_suite(max: u64, seed: u64) -> Result<SuiteReport> {
    let mut ck = Checker::new();
    let max = max.max(2);
    for n in 1..=max {
        for k in 1..=2 * max {
            let pp = c(n, k)?;
            let dv = c_divisor(n, k)?;
            let ex = c_exponential(n, k)?;
            ck.check(pp == dv && dv == ex, || {
                format!("c_{n}({k}): prime-power {pp}, divisor {dv}, exponential {ex}")
            });
            let g = k.gcd(&n);
            ck.check(pp.magnitude() <= &g.into(), || {
                format!("|c_{n}({k})| > gcd = {g}")
            });
            ck.check(pp == c(n, g)?, || format!("c_{n}({k}) != c_{n}(gcd)"));
            ck.check(pp == c(n, k + n)?, || format!("c_{n}({k}) not periodic"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let (n1, k1, n2, k2) = (
            rng.gen_range(1..=max),
            rng.gen_range(1..=max),
            rng.gen_range(1..=max),
            rng.gen_range(1..=max),
        );
        if (n1 * k1).gcd(&(n2 * k2)) != 1 {
            continue;
        }
        let lhs = c(n1 * n2, k1 * k2)?;
        let rhs = c(n1, k1)? * c(n2, k2)?;
        ck.check(lhs == rhs, || {
            format!("c not two-variable multiplicative at ({n1},{k1}) x ({n2},{k2})")
        });
    }
    Ok(ck.report("ramanujan"))
}

fn orbicyclic_suite(max: u64, r: usize, seed: u64) -> Result<SuiteReport> {
    let mut ck = Checker::new();
    for args in tuple_grid(max, r, seed, if r <= 2 { usize::MAX } else { 300 }) {
        let t = ArgTuple::new(args.clone())?;
        let mult = e_multiplicative(&t)?;
        let conv = e_convolution(&t)?;
        let div = e_divisor(&t)?;
        ck.check(mult == conv && conv == div, || {
            format!("E{args:?}: multiplicative {mult}, convolution {conv}, divisor {div}")
        });
        ck.check(mult >= BigInt::zero(), || format!("E{args:?} negative"));
        let guard = DEFINITION_GUARD / r as u64;
        for mult_m in [1u64, 2] {
            let modulus = t.lcm() * mult_m;
            if modulus <= guard {
                let def = e_definition(&t, modulus)?;
                ck.check(def == mult, || {
                    format!("E{args:?}: definition at M={modulus} gives {def}, expected {mult}")
                });
            }
        }
        let mut sorted = args.clone();
        sorted.sort_unstable();
        ck.check(e_multiplicative(&ArgTuple::new(sorted)?)? == mult, || {
            format!("E{args:?} not symmetric")
        });
    }
    for s in 1..=12u32 {
        for x in 2..=100i64 {
            ck.check(h_poly(s, x).is_ok(), || format!("h_{s}({x}) not integral"));
        }
    }
    Ok(ck.report("orbicyclic"))
}

fn gcdsum_suite(max: u64, r: usize, seed: u64) -> Result<SuiteReport> {
    let mut ck = Checker::new();
    for args in tuple_grid(max, r, seed, if r <= 2 { usize::MAX } else { 200 }) {
        let t = ArgTuple::new(args.clone())?;
        let def = a_definition(&t)?;
        let conv = a_convolution(&t)?;
        let div = a_divisor(&t)?;
        ck.check(def == conv && conv == div, || {
            format!("A{args:?}: definition {def}, convolution {conv}, divisor {div}")
        });
        ck.check(check_e_le_a(&t)?, || format!("E > A at {args:?}"));
        ck.check(check_product_lower_bound(&t)?, || {
            format!("A < product bound at {args:?}")
        });
        let pairwise_coprime = (0..args.len()).all(|i| {
            (i + 1..args.len()).all(|j| args[i].gcd(&args[j]) == 1)
        });
        if pairwise_coprime {
            let mut prod = Rational::one();
            for &mi in t.args() {
                prod *= a_convolution(&ArgTuple::new(vec![mi])?)?;
            }
            ck.check(conv == prod, || {
                format!("A{args:?} != product on coprime tuple")
            });
        }
    }
    for p in [2u64, 3, 5] {
        for exps in tuple_grid(4, r.min(3), seed, usize::MAX) {
            let exps: Vec<u32> = exps.iter().map(|&e| e as u32).collect();
            let args: Vec<u64> = exps.iter().map(|&e| p.pow(e)).collect();
            let closed = a_prime_power(p, &exps)?;
            let brute = a_definition(&ArgTuple::new(args.clone())?)?;
            ck.check(closed == brute, || {
                format!("A prime-power p={p} {exps:?}: closed {closed}, brute {brute}")
            });
        }
    }
    Ok(ck.report("gcdsum"))
}

fn unified_suite(max: u64, r: usize, seed: u64) -> Result<SuiteReport> {
    let mut ck = Checker::new();
    let pairs = [
        ApostolPair::ramanujan(),
        ApostolPair::gcd(),
        ApostolPair::tau_kernel(),
        ApostolPair::tau_mobius(),
    ];
    for args in tuple_grid(max, r, seed, if r <= 2 { usize::MAX } else { 200 }) {
        let t = ArgTuple::new(args.clone())?;
        for pair in &pairs {
            let def = f_general_definition(pair, &t)?;
            let conv = f_general_convolution(pair, &t)?;
            let div = f_general_divisor(pair, &t)?;
            ck.check(def == conv && conv == div, || {
                format!(
                    "F_({},{}){args:?}: definition {def}, convolution {conv}, divisor {div}",
                    pair.g.name(),
                    pair.h.name()
                )
            });
        }
        let e_val = Rational::from_integer(e_multiplicative(&t)?);
        ck.check(
            f_general_convolution(&ApostolPair::ramanujan(), &t)? == e_val,
            || format!("F_(id,mu){args:?} != E"),
        );
        let a_val = a_convolution(&t)?;
        ck.check(
            f_general_convolution(&ApostolPair::gcd(), &t)? == a_val,
            || format!("F_(phi,1){args:?} != A"),
        );
        ck.check(
            f_tau(&t)? == f_general_convolution(&ApostolPair::tau_kernel(), &t)?,
            || format!("F_tau{args:?} mismatch"),
        );
    }
    Ok(ck.report("unified"))
}

fn congruence_suite(max: u64, r: usize, seed: u64) -> Result<SuiteReport> {
    let mut ck = Checker::new();
    for m in 1..=max {
        let divs = crate::arith::divisors(m)?;
        for combo in tuple_grid(divs.len() as u64, r, seed, 2000) {
            let ds: Vec<u64> = combo.iter().map(|&i| divs[(i - 1) as usize]).collect();
            for n in 0..m {
                let sets = ds
                    .iter()
                    .map(|&d| DivisorSet::singleton(d))
                    .collect::<Result<Vec<_>>>()?;
                let inst = CongruenceInstance::new(m, n, sets)?;
                let brute = BigInt::from(count_bruteforce(&inst)?);
                let formula = count_formula(&inst)?;
                let divisor = count_singleton_divisor(m, n, &ds)?;
                let expo = BigInt::from(count_singleton_exponential(m, n, &ds)?);
                ck.check(
                    brute == formula && formula == divisor && divisor == expo,
                    || {
                        format!(
                            "N_{n}({m},{ds:?}): brute {brute}, formula {formula}, \
                             divisor {divisor}, exponential {expo}"
                        )
                    },
                );
            }
        }
        // partition identity: summing over all singleton combinations
        // gives M^(r-1) for each residue
        if (divs.len() as u128).pow(r as u32) <= 4096 {
            for n in 0..m {
                let mut total = BigInt::zero();
                for combo in tuple_grid(divs.len() as u64, r, seed, usize::MAX) {
                    let ds: Vec<u64> =
                        combo.iter().map(|&i| divs[(i - 1) as usize]).collect();
                    total += count_singleton_divisor(m, n, &ds)?;
                }
                let expected = BigInt::from(m).pow((r - 1) as u32);
                ck.check(total == expected, || {
                    format!("partition identity fails at M={m} n={n}: {total}")
                });
            }
        }
    }
    // random non-singleton instances against brute force
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mbound = max.min(16);
    for _ in 0..100 {
        let m = rng.gen_range(1..=mbound);
        let divs = crate::arith::divisors(m)?;
        let n = rng.gen_range(0..m);
        let sets: Vec<DivisorSet> = (0..r)
            .map(|_| {
                let picked: Vec<u64> = divs
                    .iter()
                    .copied()
                    .filter(|_| rng.gen_bool(0.5))
                    .collect();
                let picked = if picked.is_empty() { vec![divs[0]] } else { picked };
                DivisorSet::new(picked)
            })
            .collect::<Result<_>>()?;
        let inst = CongruenceInstance::new(m, n, sets)?;
        let brute = BigInt::from(count_bruteforce(&inst)?);
        let formula = count_formula(&inst)?;
        ck.check(brute == formula, || {
            format!("random instance M={m} n={n}: brute {brute}, formula {formula}")
        });
    }
    Ok(ck.report("congruence"))
}

fn inversion_suite(max: u64, r: usize, seed: u64) -> Result<SuiteReport> {
    let mut ck = Checker::new();
    for args in tuple_grid(max, r, seed, 4000) {
        let t = ArgTuple::new(args.clone())?;
        ck.check(verify_moebius_inversion(&t)?, || {
            format!("Moebius inversion fails at {args:?}")
        });
    }
    // one-variable sanity: the inversion collapses to Gauss's identity
    for m in 1..=max {
        let t = ArgTuple::new(vec![m])?;
        let mut sum = BigInt::zero();
        for d in crate::arith::divisors(m)? {
            sum += e_multiplicative(&ArgTuple::new(vec![d])?)?;
        }
        ck.check(sum == BigInt::one(), || {
            format!("one-variable divisor sum of E at {m}")
        });
        let _ = euler_phi(t.lcm())?;
    }
    Ok(ck.report("inversion"))
}
