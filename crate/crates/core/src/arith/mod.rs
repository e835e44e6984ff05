//! Arbitrary-precision integer helpers shared by every other module.
//!
//! [`Natural`] and [`Ratio`] are the `num` crate's big integer and big
//! rational types. `BigRational` keeps itself reduced with a positive
//! denominator, which is exactly the invariant the rest of the crate relies on.

mod factor;
mod partitions;

pub use factor::{divisors, factorize, is_prime, Factorization};
pub use partitions::multiplicative_partitions;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub type Natural = BigUint;
pub type Ratio = BigRational;

pub fn nat(v: u64) -> Natural {
    Natural::from(v)
}

pub fn ratio(num: &Natural, den: &Natural) -> Ratio {
    Ratio::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

pub fn ratio_int(v: &Natural) -> Ratio {
    Ratio::from_integer(BigInt::from(v.clone()))
}

pub fn recip(v: &Natural) -> Ratio {
    ratio(&Natural::one(), v)
}

pub fn binomial(n: u64, k: u64) -> Natural {
    if k > n {
        return Natural::zero();
    }
    let k = k.min(n - k);
    let mut acc = Natural::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> Natural {
    (1..=n).fold(Natural::one(), |acc, i| acc * i)
}

/// `Some(r)` when `x == r^k` for a natural `r`.
pub fn exact_root(x: &Natural, k: u32) -> Option<Natural> {
    if k == 0 {
        return None;
    }
    let r = x.nth_root(k);
    (r.pow(k) == *x).then_some(r)
}

/// Least common multiple of all pairwise products `t_i * t_j`, `i < j`.
pub fn lcm_pairwise_products(entries: &[Natural]) -> Result<Natural> {
    if entries.len() < 2 {
        return Err(Error::invalid(
            "lcm of pairwise products needs at least two entries",
        ));
    }
    if entries.iter().any(Zero::is_zero) {
        return Err(Error::invalid("entries must be positive"));
    }
    let mut acc = Natural::one();
    for (i, a) in entries.iter().enumerate() {
        for b in &entries[i + 1..] {
            acc = acc.lcm(&(a * b));
        }
    }
    Ok(acc)
}
