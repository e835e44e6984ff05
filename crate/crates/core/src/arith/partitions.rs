use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{divisors, Natural};
use crate::{Error, Result};

/// Number of unordered factorizations of `m` into factors `>= 2`, with `f(1) = 1`.
///
/// Every intermediate quotient is itself a divisor of `m`, so the recursion
/// runs over indices into the sorted divisor list. The memo table lives on
/// this call's stack.
pub fn multiplicative_partitions(m: &Natural) -> Result<Natural> {
    if m.is_zero() {
        return Err(Error::invalid(
            "multiplicative partitions of 0 are undefined",
        ));
    }
    if m.is_one() {
        return Ok(Natural::one());
    }
    let divs = divisors(m)?;
    let mut memo = HashMap::new();
    // smallest allowed factor is divs[1], the least prime factor
    Ok(count(&divs, divs.len() - 1, 1, &mut memo))
}

/// Factorizations of `divs[value]` into factors each at least `divs[min]`.
fn count(
    divs: &[Natural],
    value: usize,
    min: usize,
    memo: &mut HashMap<(usize, usize), Natural>,
) -> Natural {
    if let Some(hit) = memo.get(&(value, min)) {
        return hit.clone();
    }
    let x = &divs[value];
    let mut total = if value >= min {
        Natural::one()
    } else {
        Natural::zero()
    };
    for (i, d) in divs.iter().enumerate().skip(min) {
        if d * d > *x {
            break;
        }
        let (q, r) = x.div_rem(d);
        if r.is_zero() {
            let qi = divs
                .binary_search(&q)
                .expect("quotient of a divisor is a divisor");
            total += count(divs, qi, i, memo);
        }
    }
    memo.insert((value, min), total.clone());
    total
}
