//! Integer factorization, just strong enough to enumerate divisors of
//! the outer coefficients in the rational root search.  Trial division
//! handles everything small; Miller-Rabin plus Brent's cycle variant
//! of Pollard's rho deal with the occasional large cofactor.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

const TRIAL_LIMIT: u64 = 1_000_000;

/// All positive divisors of `n > 0`, unsorted.
pub(crate) fn divisors(n: &BigUint) -> Vec<BigUint> {
    assert!(!n.is_zero());
    let mut out = vec![BigUint::one()];
    for (p, e) in factorize(n.clone()) {
        let base = out.clone();
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk = &pk * &p;
            out.extend(base.iter().map(|d| d * &pk));
        }
    }
    out
}

fn factorize(mut n: BigUint) -> Vec<(BigUint, u32)> {
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut push = |p: BigUint, e: u32| {
        if let Some(f) = factors.iter_mut().find(|f| f.0 == p) {
            f.1 += e;
        } else {
            factors.push((p, e));
        }
    };
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && !n.is_one() {
        let db = BigUint::from(d);
        if &db * &db > n {
            break;
        }
        let mut e = 0u32;
        while n.is_multiple_of(&db) {
            n /= &db;
            e += 1;
        }
        if e > 0 {
            push(db, e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // whatever survives trial division is prime or a product of two
    // or more primes above the trial limit; split it recursively
    let mut stack = Vec::new();
    if !n.is_one() {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_probable_prime(&m) {
            push(m, 1);
            continue;
        }
        let f = pollard_rho(&m);
        stack.push(&m / &f);
        stack.push(f);
    }
    factors
}

/// Miller-Rabin with a fixed base set, deterministic far beyond any
/// coefficient this crate will ever see.
fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let pb = BigUint::from(p);
        if n == &pb {
            return true;
        }
        if n.is_multiple_of(&pb) {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of composite odd `n`.
fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    for c in 1u64.. {
        let cb = BigUint::from(c);
        let step = |x: &BigUint| (x * x + &cb) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        loop {
            x = step(&x);
            y = step(&step(&y));
            if x == y {
                break; // cycle without factor, retry with next c
            }
            let diff = if x > y { &x - &y } else { &y - &x };
            let g = diff.gcd(n);
            if g == one {
                continue;
            }
            if &g < n {
                return g;
            }
            break;
        }
    }
    unreachable!("factor search is an infinite retry loop")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(n: u64) -> Vec<u64> {
        let mut v: Vec<u64> = divisors(&BigUint::from(n))
            .iter()
            .map(|d| d.try_into().unwrap())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn small_divisor_sets() {
        assert_eq!(dv(1), vec![1]);
        assert_eq!(dv(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(dv(49), vec![1, 7, 49]);
        assert_eq!(dv(97), vec![1, 97]);
    }

    #[test]
    fn splits_large_semiprime() {
        // both factors above the trial-division limit
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        let divs = dv(p * q);
        assert_eq!(divs, vec![1, p, q, p * q]);
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&BigUint::from(2u32)));
        assert!(is_probable_prime(&BigUint::from(1_000_003u64)));
        assert!(!is_probable_prime(&BigUint::from(1u32)));
        assert!(!is_probable_prime(&BigUint::from(561u32)));
    }
}
