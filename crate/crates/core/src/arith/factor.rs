//! Integer factorization: trial division by small primes, then Brent's
//! variant of Pollard rho with fixed seeds, Miller-Rabin for primality.
//! Cofactors that fit in a `u64` take a machine-word fast path.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Natural;
use crate::{Error, Result};

const TRIAL_LIMIT: u32 = 10_000;

/// Witnesses that make Miller-Rabin deterministic below 3.3e24.
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
/// Extra fixed witnesses used above that bound (probabilistic, but reproducible).
const MR_EXTRA_BASES: [u64; 7] = [43, 47, 53, 59, 61, 67, 71];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                for j in (i * i..=n).step_by(i) {
                    sieve[j] = false;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&i| sieve[i]).map(|i| i as u32).collect()
    })
}

/// Prime factorization with primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(Natural, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(Natural, u32)] {
        &self.factors
    }

    pub fn product(&self) -> Natural {
        self.factors
            .iter()
            .fold(Natural::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// d(m) = prod (e_i + 1)
    pub fn divisor_count(&self) -> u64 {
        self.factors
            .iter()
            .map(|(_, e)| u64::from(*e) + 1)
            .product()
    }

    pub fn divisors(&self) -> Vec<Natural> {
        let mut out = vec![Natural::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
            for d in &out {
                let mut pk = d.clone();
                next.push(pk.clone());
                for _ in 0..*e {
                    pk *= p;
                    next.push(pk.clone());
                }
            }
            out = next;
        }
        out.sort_unstable();
        out
    }
}

pub fn factorize(m: &Natural) -> Result<Factorization> {
    if m.is_zero() {
        return Err(Error::invalid("cannot factorize 0"));
    }
    let mut primes: Vec<Natural> = Vec::new();
    let mut rest = m.clone();
    for &p in small_primes() {
        let p = BigUint::from(p);
        if &p * &p > rest {
            break;
        }
        while (&rest % &p).is_zero() {
            rest /= &p;
            primes.push(p.clone());
        }
    }
    if !rest.is_one() {
        let mut stack = vec![rest];
        while let Some(x) = stack.pop() {
            if x.is_one() {
                continue;
            }
            if is_prime(&x) {
                primes.push(x);
                continue;
            }
            let d = find_factor(&x);
            stack.push(&x / &d);
            stack.push(d);
        }
    }
    primes.sort_unstable();
    let mut factors: Vec<(Natural, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { factors })
}

/// All positive divisors of `m`, ascending.
pub fn divisors(m: &Natural) -> Result<Vec<Natural>> {
    Ok(factorize(m)?.divisors())
}

pub fn is_prime(n: &Natural) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in small_primes().iter().take(50) {
        if (n % p).is_zero() {
            return false;
        }
    }
    let bound = BigUint::parse_bytes(b"3317044064679887385961981", 10).expect("literal");
    let bases = MR_BASES.iter().chain(if *n < bound {
        &[][..]
    } else {
        &MR_EXTRA_BASES[..]
    });
    let one = Natural::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in bases {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of composite `n` (which has no prime factor below the trial bound
/// unless it fits in a word).
fn find_factor(n: &Natural) -> Natural {
    if let Some(small) = n.to_u64() {
        return Natural::from(find_factor_u64(small));
    }
    if n.is_even() {
        return Natural::from(2u32);
    }
    let mut c = 1u64;
    loop {
        if let Some(d) = brent_big(n, &BigUint::from(c)) {
            return d;
        }
        c += 1;
    }
}

fn brent_big(n: &Natural, c: &Natural) -> Option<Natural> {
    let f = |x: &Natural| (x * x + c) % n;
    let one = Natural::one();
    let m = 128usize;
    let mut y = Natural::from(2u32);
    let mut r = 1usize;
    let mut q = one.clone();
    let mut g = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
    }
    if g == *n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn find_factor_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        if let Some(d) = brent_u64(n, c) {
            return d;
        }
        c += 1;
    }
}

fn brent_u64(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let m = 128u64;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (y, y);
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += m;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g != 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}
