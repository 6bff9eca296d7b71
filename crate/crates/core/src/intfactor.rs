//! Integer factorization support for the rational-root search.
//!
//! Trial division, deterministic Miller-Rabin, and Brent's variant of
//! Pollard rho. Enough to enumerate divisors of the integer coefficients
//! that actually occur in this crate; inputs that resist factorization are
//! reported as errors rather than silently dropping root candidates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const TRIAL_BOUND: u64 = 10_000;
const RHO_MAX_STEPS: u64 = 1 << 20;
const MAX_DIVISORS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorLimit;

fn miller_rabin(n: &BigInt) -> bool {
    // n odd, n > 3. Deterministic for n < 3.3e24 with these witnesses.
    let one = BigInt::one();
    let two = BigInt::from(2);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigInt::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigInt) -> Option<BigInt> {
    // Brent's cycle detection; deterministic start values.
    for c in 1u64..20 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = BigInt::one();
        let mut steps = 0u64;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
            steps += 1;
            if steps > RHO_MAX_STEPS {
                break;
            }
        }
        if !d.is_one() && &d != n {
            return Some(d);
        }
    }
    None
}

/// Prime factorization of |n| for n != 0, as prime -> exponent.
pub fn factorize(n: &BigInt) -> Result<BTreeMap<BigInt, u32>, FactorLimit> {
    assert!(!n.is_zero());
    let mut n = n.abs();
    let mut factors: BTreeMap<BigInt, u32> = BTreeMap::new();
    let push = |factors: &mut BTreeMap<BigInt, u32>, p: BigInt, e: u32| {
        *factors.entry(p).or_insert(0) += e;
    };
    for p in 2u64..=TRIAL_BOUND {
        if n.is_one() {
            break;
        }
        let pb = BigInt::from(p);
        if (&pb * &pb) > n {
            break;
        }
        while (&n % &pb).is_zero() {
            n /= &pb;
            push(&mut factors, pb.clone(), 1);
        }
    }
    // Whatever is left is free of prime factors <= TRIAL_BOUND.
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        let r = m.sqrt();
        if &(&r * &r) == &m {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        if miller_rabin(&m) {
            push(&mut factors, m, 1);
            continue;
        }
        match pollard_rho(&m) {
            Some(d) => {
                stack.push(&m / &d);
                stack.push(d);
            }
            None => return Err(FactorLimit),
        }
    }
    Ok(factors)
}

/// All positive divisors of |n|, unsorted order not guaranteed.
pub fn divisors(n: &BigInt) -> Result<Vec<BigInt>, FactorLimit> {
    let factors = factorize(n)?;
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        if next.len() > MAX_DIVISORS {
            return Err(FactorLimit);
        }
        divs = next;
    }
    Ok(divs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        let f = factorize(&BigInt::from(600)).unwrap();
        let expect: Vec<(i64, u32)> = vec![(2, 3), (3, 1), (5, 2)];
        let got: Vec<(i64, u32)> = f
            .iter()
            .map(|(p, e)| (i64::try_from(p).unwrap(), *e))
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn factor_large_semiprime() {
        // 1000003 * 1000033, both prime and above the trial bound.
        let n = BigInt::from(1000003u64) * BigInt::from(1000033u64);
        let f = factorize(&n).unwrap();
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn divisors_of_twelve() {
        let mut ds: Vec<i64> = divisors(&BigInt::from(12))
            .unwrap()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        ds.sort();
        assert_eq!(ds, vec![1, 2, 3, 4, 6, 12]);
    }
}
