//! End-to-end acceptance checks. Each test covers one numbered criterion,
//! prints a single PASS/FAIL line, and fails the build on any violation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orbicyclic::arith::{divisors, euler_phi};
use orbicyclic::asymptotics::{euler_constant, exact_partial_sum, g_r};
use orbicyclic::congruence::{
    count_bruteforce, count_formula, count_singleton_divisor, count_singleton_exponential,
    CongruenceInstance, DivisorSet,
};
use orbicyclic::gcdsum::{
    a_convolution, a_definition, a_divisor, a_prime_power, check_e_le_a, check_product_lower_bound,
};
use orbicyclic::orbicyclic::{
    e_convolution, e_definition, e_divisor, e_multiplicative, f_r_diagonal, h_poly,
    verify_moebius_inversion, DEFINITION_GUARD,
};
use orbicyclic::ramanujan::{c_divisor, c_exponential, c_prime_power_method};
use orbicyclic::unified::{f_general_convolution, f_general_definition, f_general_divisor, f_tau, ApostolPair};
use orbicyclic::{ArgTuple, Rational};

fn report(id: u32, name: &str, outcome: Result<(), String>) {
    match outcome {
        Ok(()) => println!("criterion {id:02} {name}: PASS"),
        Err(msg) => {
            println!("criterion {id:02} {name}: FAIL ({msg})");
            panic!("criterion {id:02} {name} failed: {msg}");
        }
    }
}

fn tup(args: &[u64]) -> ArgTuple {
    ArgTuple::new(args.to_vec()).unwrap()
}

/// Full cross product of r-tuples over [1, max].
fn grid(max: u64, r: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
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

#[test]
fn criterion_01_ramanujan_three_way() {
    report(1, "ramanujan-three-way", (|| {
        for n in 1..=60u64 {
            for k in 1..=120u64 {
                let pp = c_prime_power_method(n, k).map_err(|e| e.to_string())?;
                let dv = c_divisor(n, k).map_err(|e| e.to_string())?;
                let ex = c_exponential(n, k).map_err(|e| e.to_string())?;
                if pp != dv || dv != ex {
                    return Err(format!("c_{n}({k}): {pp} / {dv} / {ex}"));
                }
            }
        }
        Ok(())
    })());
}

fn check_e_four_way(args: &[u64]) -> Result<(), String> {
    let t = ArgTuple::new(args.to_vec()).map_err(|e| e.to_string())?;
    let mult = e_multiplicative(&t).map_err(|e| e.to_string())?;
    let conv = e_convolution(&t).map_err(|e| e.to_string())?;
    let div = e_divisor(&t).map_err(|e| e.to_string())?;
    if mult != conv || conv != div {
        return Err(format!("E{args:?}: {mult} / {conv} / {div}"));
    }
    if mult.is_negative() {
        return Err(format!("E{args:?} = {mult} is negative"));
    }
    let guard = DEFINITION_GUARD / args.len() as u64;
    for factor in [1u64, 2] {
        let modulus = t.lcm() * factor;
        if modulus <= guard {
            let def = e_definition(&t, modulus).map_err(|e| e.to_string())?;
            if def != mult {
                return Err(format!("E{args:?} at M={modulus}: {def} vs {mult}"));
            }
        }
    }
    Ok(())
}

#[test]
fn criterion_02_orbicyclic_four_way() {
    report(2, "orbicyclic-four-way", (|| {
        for args in grid(30, 1) {
            check_e_four_way(&args)?;
        }
        for args in grid(30, 2) {
            check_e_four_way(&args)?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x0E4_2026);
        for _ in 0..10_000 {
            let r = if rng.gen_bool(0.5) { 3 } else { 4 };
            let args: Vec<u64> = (0..r).map(|_| rng.gen_range(1..=30)).collect();
            check_e_four_way(&args)?;
        }
        Ok(())
    })());
}

#[test]
fn criterion_03_low_arity_laws() {
    report(3, "low-arity-laws", (|| {
        for m in 1..=200u64 {
            let e1 = e_multiplicative(&tup(&[m])).map_err(|e| e.to_string())?;
            let want = if m == 1 { BigInt::one() } else { BigInt::zero() };
            if e1 != want {
                return Err(format!("E({m}) = {e1}"));
            }
        }
        for m1 in 1..=200u64 {
            for m2 in 1..=200u64 {
                let e2 = e_multiplicative(&tup(&[m1, m2])).map_err(|e| e.to_string())?;
                let want = if m1 == m2 {
                    BigInt::from(euler_phi(m1).map_err(|e| e.to_string())?)
                } else {
                    BigInt::zero()
                };
                if e2 != want {
                    return Err(format!("E({m1},{m2}) = {e2}, expected {want}"));
                }
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_04_moebius_inversion() {
    report(4, "moebius-inversion", (|| {
        for r in 1..=3usize {
            for args in grid(20, r) {
                let t = ArgTuple::new(args.clone()).map_err(|e| e.to_string())?;
                if !verify_moebius_inversion(&t).map_err(|e| e.to_string())? {
                    return Err(format!("inversion fails at {args:?}"));
                }
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_05_gcdsum_three_way() {
    report(5, "gcdsum-three-way", (|| {
        let mut tuples: Vec<Vec<u64>> = Vec::new();
        tuples.extend(grid(30, 1));
        tuples.extend(grid(30, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(0xA_2026);
        for _ in 0..600 {
            tuples.push((0..3).map(|_| rng.gen_range(1..=30)).collect());
        }
        for args in &tuples {
            let t = ArgTuple::new(args.clone()).map_err(|e| e.to_string())?;
            let def = a_definition(&t).map_err(|e| e.to_string())?;
            let conv = a_convolution(&t).map_err(|e| e.to_string())?;
            let div = a_divisor(&t).map_err(|e| e.to_string())?;
            if def != conv || conv != div {
                return Err(format!("A{args:?}: {def} / {conv} / {div}"));
            }
        }
        for p in [2u64, 3, 5] {
            for r in 1..=3usize {
                for exps in grid(4, r) {
                    let exps: Vec<u32> = exps.iter().map(|&e| e as u32).collect();
                    let args: Vec<u64> = exps.iter().map(|&e| p.pow(e)).collect();
                    let closed = a_prime_power(p, &exps).map_err(|e| e.to_string())?;
                    let brute =
                        a_definition(&tup(&args)).map_err(|e| e.to_string())?;
                    if closed != brute {
                        return Err(format!("p={p} {exps:?}: {closed} vs {brute}"));
                    }
                }
            }
        }
        let spot = a_convolution(&tup(&[2, 4])).map_err(|e| e.to_string())?;
        if spot != Rational::new(BigInt::from(7), BigInt::from(2)) {
            return Err(format!("A(2,4) = {spot}, expected 7/2"));
        }
        Ok(())
    })());
}

#[test]
fn criterion_06_inequalities() {
    report(6, "inequalities", (|| {
        let mut tuples: Vec<Vec<u64>> = Vec::new();
        tuples.extend(grid(30, 1));
        tuples.extend(grid(30, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(0x1E_2026);
        for _ in 0..500 {
            let r = if rng.gen_bool(0.5) { 3 } else { 4 };
            tuples.push((0..r).map(|_| rng.gen_range(1..=30)).collect());
        }
        for args in &tuples {
            let t = ArgTuple::new(args.clone()).map_err(|e| e.to_string())?;
            if !check_e_le_a(&t).map_err(|e| e.to_string())? {
                return Err(format!("E > A at {args:?}"));
            }
            if !check_product_lower_bound(&t).map_err(|e| e.to_string())? {
                return Err(format!("A below product bound at {args:?}"));
            }
            let pairwise_coprime = (0..args.len()).all(|i| {
                (i + 1..args.len())
                    .all(|j| num_integer::gcd(args[i], args[j]) == 1)
            });
            if pairwise_coprime {
                let lhs = a_convolution(&t).map_err(|e| e.to_string())?;
                let mut rhs = Rational::one();
                for &mi in t.args() {
                    rhs *= a_convolution(&tup(&[mi])).map_err(|e| e.to_string())?;
                }
                if lhs != rhs {
                    return Err(format!("coprime equality fails at {args:?}"));
                }
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_07_unified_recovery() {
    report(7, "unified-recovery", (|| {
        for r in 1..=3usize {
            for args in grid(20, r) {
                let t = ArgTuple::new(args.clone()).map_err(|e| e.to_string())?;
                let e_val = Rational::from_integer(
                    e_multiplicative(&t).map_err(|e| e.to_string())?,
                );
                let f_e = f_general_convolution(&ApostolPair::ramanujan(), &t)
                    .map_err(|e| e.to_string())?;
                if f_e != e_val {
                    return Err(format!("F_(id,mu){args:?} != E"));
                }
                let a_val = a_convolution(&t).map_err(|e| e.to_string())?;
                let f_a = f_general_convolution(&ApostolPair::gcd(), &t)
                    .map_err(|e| e.to_string())?;
                if f_a != a_val {
                    return Err(format!("F_(phi,1){args:?} != A"));
                }
                let pair = ApostolPair::tau_kernel();
                let d1 = f_general_definition(&pair, &t).map_err(|e| e.to_string())?;
                let d2 = f_general_convolution(&pair, &t).map_err(|e| e.to_string())?;
                let d3 = f_general_divisor(&pair, &t).map_err(|e| e.to_string())?;
                let d4 = f_tau(&t).map_err(|e| e.to_string())?;
                if d1 != d2 || d2 != d3 || d3 != d4 {
                    return Err(format!("F_tau{args:?}: {d1} / {d2} / {d3} / {d4}"));
                }
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_08_congruence_counting() {
    report(8, "congruence-counting", (|| {
        for m in 1..=20u64 {
            let divs = divisors(m).map_err(|e| e.to_string())?;
            for r in 1..=3usize {
                for combo in grid(divs.len() as u64, r) {
                    let ds: Vec<u64> =
                        combo.iter().map(|&i| divs[(i - 1) as usize]).collect();
                    for n in 0..m {
                        let sets = ds
                            .iter()
                            .map(|&d| DivisorSet::singleton(d))
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|e| e.to_string())?;
                        let inst = CongruenceInstance::new(m, n, sets)
                            .map_err(|e| e.to_string())?;
                        let brute = BigInt::from(
                            count_bruteforce(&inst).map_err(|e| e.to_string())?,
                        );
                        let formula =
                            count_formula(&inst).map_err(|e| e.to_string())?;
                        let dv = count_singleton_divisor(m, n, &ds)
                            .map_err(|e| e.to_string())?;
                        let ex = BigInt::from(
                            count_singleton_exponential(m, n, &ds)
                                .map_err(|e| e.to_string())?,
                        );
                        if brute != formula || formula != dv || dv != ex {
                            return Err(format!(
                                "N_{n}({m},{ds:?}): {brute} / {formula} / {dv} / {ex}"
                            ));
                        }
                    }
                }
                // partition identity across all singleton combinations
                for n in 0..m {
                    let mut total = BigInt::zero();
                    for combo in grid(divs.len() as u64, r) {
                        let ds: Vec<u64> =
                            combo.iter().map(|&i| divs[(i - 1) as usize]).collect();
                        total += count_singleton_divisor(m, n, &ds)
                            .map_err(|e| e.to_string())?;
                    }
                    let expected = BigInt::from(m).pow((r - 1) as u32);
                    if total != expected {
                        return Err(format!(
                            "partition identity at M={m} r={r} n={n}: {total} vs {expected}"
                        ));
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0_2026);
        for _ in 0..500 {
            let m = rng.gen_range(1..=16u64);
            let divs = divisors(m).map_err(|e| e.to_string())?;
            let n = rng.gen_range(0..m);
            let r = rng.gen_range(1..=3usize);
            let sets: Vec<DivisorSet> = (0..r)
                .map(|_| {
                    let mut picked: Vec<u64> = divs
                        .iter()
                        .copied()
                        .filter(|_| rng.gen_bool(0.6))
                        .collect();
                    if picked.is_empty() {
                        picked.push(divs[rng.gen_range(0..divs.len())]);
                    }
                    DivisorSet::new(picked)
                })
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let inst =
                CongruenceInstance::new(m, n, sets).map_err(|e| e.to_string())?;
            let brute =
                BigInt::from(count_bruteforce(&inst).map_err(|e| e.to_string())?);
            let formula = count_formula(&inst).map_err(|e| e.to_string())?;
            if brute != formula {
                return Err(format!(
                    "random instance M={m} n={n} {:?}: {brute} vs {formula}",
                    inst.constraints()
                ));
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_09_congruence_links_to_e() {
    report(9, "congruence-links-to-e", (|| {
        for r in 1..=3usize {
            for args in grid(12, r) {
                let t = ArgTuple::new(args.clone()).map_err(|e| e.to_string())?;
                let m = t.lcm();
                let ds: Vec<u64> = args.iter().map(|&mi| m / mi).collect();
                let count =
                    count_singleton_divisor(m, 0, &ds).map_err(|e| e.to_string())?;
                let e_val = e_multiplicative(&t).map_err(|e| e.to_string())?;
                if count != e_val {
                    return Err(format!("{args:?}: N = {count}, E = {e_val}"));
                }
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_10_asymptotics() {
    report(10, "asymptotics", (|| {
        let c2 = euler_constant(2, 100_000).map_err(|e| e.to_string())?;
        let target = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
        let got = c2.value.to_f64();
        if (got - target).abs() >= 1e-6 {
            return Err(format!("C_2 = {got}, expected {target}"));
        }
        let c3 = euler_constant(3, 100_000).map_err(|e| e.to_string())?;
        let x = 5000u64;
        let s = exact_partial_sum(3, x).map_err(|e| e.to_string())?;
        let s_f64 = {
            use num_traits::ToPrimitive;
            s.to_f64().ok_or("partial sum out of f64 range")?
        };
        let predicted = c3.value.to_f64() * (x as f64).powi(3) / 3.0;
        let ratio = s_f64 / predicted;
        if (ratio - 1.0).abs() > 0.02 {
            return Err(format!("r=3 partial-sum ratio {ratio}"));
        }
        // g_r * id_{r-1} reconstructs the diagonal f_r exactly
        for r in 2..=4u32 {
            for m in 1..=500u64 {
                let mut sum = BigInt::zero();
                for d in divisors(m).map_err(|e| e.to_string())? {
                    sum += g_r(r, d).map_err(|e| e.to_string())?
                        * BigInt::from(m / d).pow(r - 1);
                }
                let direct = f_r_diagonal(m, r).map_err(|e| e.to_string())?;
                if sum != direct {
                    return Err(format!("f_{r}({m}): {sum} vs {direct}"));
                }
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_11_h_integrality() {
    report(11, "h-integrality", (|| {
        for s in 1..=12u32 {
            for x in 2..=100i64 {
                let h = h_poly(s, x).map_err(|e| e.to_string())?;
                match s {
                    1 if !h.is_zero() => return Err(format!("h_1({x}) = {h}")),
                    2 if !h.is_one() => return Err(format!("h_2({x}) = {h}")),
                    _ => {}
                }
            }
        }
        Ok(())
    })());
}
