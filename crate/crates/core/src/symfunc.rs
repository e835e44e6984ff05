//! Elementary symmetric polynomials of positive integer tuples, and the
//! reciprocal forms that turn `sigma_k = sigma_n` into a unit-sum condition.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{nat, ratio, recip, Natural, Ratio};
use crate::{Error, Result};

/// Nondecreasing tuple of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SolutionTuple(Vec<Natural>);

impl SolutionTuple {
    /// Validates that `entries` is non-empty, positive and nondecreasing.
    pub fn new(entries: Vec<Natural>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("tuple must be non-empty"));
        }
        if entries.iter().any(Zero::is_zero) {
            return Err(Error::invalid("tuple entries must be positive"));
        }
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invalid("tuple entries must be nondecreasing"));
        }
        Ok(SolutionTuple(entries))
    }

    /// Sorts `entries` before validating.
    pub fn sorted(mut entries: Vec<Natural>) -> Result<Self> {
        entries.sort_unstable();
        Self::new(entries)
    }

    pub fn from_u64(entries: &[u64]) -> Result<Self> {
        Self::new(entries.iter().copied().map(nat).collect())
    }

    pub fn entries(&self) -> &[Natural] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Natural> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> &Natural {
        self.0.last().expect("tuple is non-empty")
    }

    pub fn product(&self) -> Natural {
        product(&self.0)
    }

    pub fn profile(&self) -> SymmetricProfile {
        elementary_symmetric(self)
    }
}

impl fmt::Display for SolutionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Parses `1,2,4,14` or `(1, 2, 4, 14)`; entries are sorted.
impl FromStr for SolutionTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<Natural>()
                    .map_err(|_| Error::invalid(format!("not a natural number: {:?}", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::sorted(entries)
    }
}

/// `sigma_0 .. sigma_n` of a tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricProfile {
    sigma: Vec<Natural>,
}

impl SymmetricProfile {
    pub fn sigma(&self, j: usize) -> &Natural {
        &self.sigma[j]
    }

    pub fn as_slice(&self) -> &[Natural] {
        &self.sigma
    }

    /// Number of variables.
    pub fn degree(&self) -> usize {
        self.sigma.len() - 1
    }
}

pub fn elementary_symmetric(t: &SolutionTuple) -> SymmetricProfile {
    SymmetricProfile {
        sigma: sigma_all(t.entries()),
    }
}

/// One-variable-at-a-time recurrence `e_j <- e_j + x * e_{j-1}`.
pub(crate) fn sigma_all(entries: &[Natural]) -> Vec<Natural> {
    let mut e = Vec::with_capacity(entries.len() + 1);
    e.push(Natural::one());
    for x in entries {
        push_variable(&mut e, x);
    }
    e
}

pub(crate) fn push_variable(e: &mut Vec<Natural>, x: &Natural) {
    let top = e.last().expect("sigma_0 present") * x;
    for j in (1..e.len()).rev() {
        let add = &e[j - 1] * x;
        e[j] += add;
    }
    e.push(top);
}

pub(crate) fn product(entries: &[Natural]) -> Natural {
    entries.iter().fold(Natural::one(), |acc, x| acc * x)
}

fn check_k(t: &SolutionTuple, k: usize) -> Result<()> {
    if k >= t.len() {
        return Err(Error::invalid(format!(
            "k = {k} must be smaller than the tuple length {}",
            t.len()
        )));
    }
    Ok(())
}

/// `sigma_k(t) - sigma_n(t)`; zero exactly when `t` solves the equation for `k`.
pub fn residual(t: &SolutionTuple, k: usize) -> Result<BigInt> {
    check_k(t, k)?;
    let p = t.profile();
    Ok(BigInt::from(p.sigma(k).clone()) - BigInt::from(p.sigma(t.len()).clone()))
}

/// `sigma_{n-k}(1/x_1, ..., 1/x_n) = sigma_k(t) / sigma_n(t)`.
pub fn reciprocal_form(t: &SolutionTuple, k: usize) -> Result<Ratio> {
    check_k(t, k)?;
    let p = t.profile();
    Ok(ratio(p.sigma(k), p.sigma(t.len())))
}

/// Sum of `1 / (t_i t_j)` over `i < j`, accumulated as `Q += S / x; S += 1 / x`.
pub fn pair_sum(t: &SolutionTuple) -> Result<Ratio> {
    if t.len() < 2 {
        return Err(Error::invalid("pair sum needs at least two entries"));
    }
    let mut s = Ratio::zero();
    let mut q = Ratio::zero();
    for x in t.entries() {
        let r = recip(x);
        q += &s * &r;
        s += r;
    }
    Ok(q)
}

/// Sum of `1 / t_i`.
pub fn reciprocal_sum(t: &SolutionTuple) -> Ratio {
    t.entries()
        .iter()
        .map(recip)
        .fold(Ratio::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tup(v: &[u64]) -> SolutionTuple {
        SolutionTuple::from_u64(v).unwrap()
    }

    fn r(n: i64, d: i64) -> Ratio {
        Ratio::new(n.into(), d.into())
    }

    /// Explicit sum over all j-subsets.
    fn subset_sigma(v: &[u64], j: usize) -> u64 {
        let n = v.len();
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == j)
            .map(|m| {
                (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| v[i])
                    .product::<u64>()
            })
            .sum()
    }

    #[test]
    fn profile_examples() {
        let p = tup(&[1, 2, 4]).profile();
        assert_eq!(p.as_slice(), &[nat(1), nat(7), nat(14), nat(8)]);
        let sixes = tup(&[6; 9]).profile();
        assert_eq!(*sixes.sigma(7), nat(10_077_696));
        assert_eq!(*sixes.sigma(9), nat(10_077_696));
        assert_eq!(
            *tup(&[1, 1, 2, 5]).profile().sigma(2),
            nat(subset_sigma(&[1, 1, 2, 5], 2))
        );
        assert_eq!(subset_sigma(&[1, 1, 2, 5], 2), 25);
    }

    #[test]
    fn residual_examples() {
        assert!(residual(&tup(&[1, 2, 4, 14]), 2).unwrap().is_zero());
        assert!(residual(&tup(&[1, 2, 3]), 1).unwrap().is_zero());
        assert!(residual(&tup(&[1, 1, 2, 5, 25]), 2).unwrap().is_zero());
        assert_eq!(residual(&tup(&[1, 2, 4]), 1).unwrap(), BigInt::from(-1));
        assert!(residual(&tup(&[1, 2]), 2).is_err());
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(reciprocal_form(&tup(&[2, 2, 2]), 1).unwrap(), r(3, 4));
        assert_eq!(
            reciprocal_form(&tup(&[1, 2, 4, 15, 218]), 3).unwrap(),
            r(1, 1)
        );
        assert_eq!(reciprocal_form(&tup(&[1, 1]), 0).unwrap(), r(1, 1));
        assert_eq!(pair_sum(&tup(&[1, 2, 4])).unwrap(), r(7, 8));
        assert_eq!(pair_sum(&tup(&[2, 2, 2, 6])).unwrap(), r(1, 1));
        assert_eq!(pair_sum(&tup(&[1, 1])).unwrap(), r(1, 1));
        assert!(pair_sum(&tup(&[3])).is_err());
    }

    #[test]
    fn tuple_validation_and_parsing() {
        assert!(SolutionTuple::from_u64(&[2, 1]).is_err());
        assert!(SolutionTuple::from_u64(&[0, 1]).is_err());
        assert!(SolutionTuple::from_u64(&[]).is_err());
        let t: SolutionTuple = "(14, 4, 2, 1)".parse().unwrap();
        assert_eq!(t, tup(&[1, 2, 4, 14]));
        assert_eq!(t.to_string(), "(1,2,4,14)");
        assert!("1,x".parse::<SolutionTuple>().is_err());
    }

    #[test]
    fn profile_matches_subset_brute_force() {
        // every nondecreasing tuple with n <= 6 and entries <= 9
        fn walk(prefix: &mut Vec<u64>, len: usize, f: &mut dyn FnMut(&[u64])) {
            if prefix.len() == len {
                f(prefix);
                return;
            }
            let lo = prefix.last().copied().unwrap_or(1);
            for x in lo..=9 {
                prefix.push(x);
                walk(prefix, len, f);
                prefix.pop();
            }
        }
        for n in 1..=6 {
            walk(&mut Vec::new(), n, &mut |v| {
                let p = tup(v).profile();
                for j in 0..=n {
                    assert_eq!(*p.sigma(j), nat(subset_sigma(v, j)), "{v:?} j={j}");
                }
            });
        }
    }
}
