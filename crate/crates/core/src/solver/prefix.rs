//! Search nodes and the three per-node operations: the candidate range for
//! the next coordinate, and closed-form completion of the last one or two.
//!
//! For a prefix `p` of length `t` with elementary symmetric values
//! `E_0 .. E_t` and product `P = E_t`, the reciprocal form of the full tuple
//! is `sigma_{n-k}(1/x)`, and `sigma_i(1/p) = E_{t-i} / P`. Every term of the
//! reciprocal form strictly decreases in every variable, which is all the
//! range computation needs.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, divisors, nat, ratio, Natural, Ratio};
use crate::sequences::{u_terms, v_terms};
use crate::symfunc::{push_variable, residual, sigma_all, SolutionTuple};
use crate::{Error, Result};

/// A fixed nondecreasing prefix together with its elementary symmetric values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixState {
    values: Vec<Natural>,
    /// `E_0 .. E_t`
    sigma: Vec<Natural>,
}

impl Default for PrefixState {
    fn default() -> Self {
        Self::empty()
    }
}

impl PrefixState {
    pub fn empty() -> Self {
        PrefixState {
            values: Vec::new(),
            sigma: vec![Natural::one()],
        }
    }

    pub fn from_values(values: &[Natural]) -> Result<Self> {
        if values.iter().any(Zero::is_zero) || values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invalid("prefix must be positive and nondecreasing"));
        }
        Ok(PrefixState {
            values: values.to_vec(),
            sigma: sigma_all(values),
        })
    }

    pub fn from_u64(values: &[u64]) -> Result<Self> {
        Self::from_values(&values.iter().copied().map(nat).collect::<Vec<_>>())
    }

    /// The child prefix with `x` appended. Caller keeps `x >= last`.
    pub fn push(&self, x: &Natural) -> Self {
        let mut values = Vec::with_capacity(self.values.len() + 1);
        values.extend_from_slice(&self.values);
        values.push(x.clone());
        let mut sigma = self.sigma.clone();
        push_variable(&mut sigma, x);
        PrefixState { values, sigma }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Natural] {
        &self.values
    }

    pub fn product(&self) -> &Natural {
        self.sigma.last().expect("sigma_0 present")
    }

    /// `E_j` of the prefix, zero outside `0..=t`.
    pub fn e(&self, j: isize) -> Natural {
        usize::try_from(j)
            .ok()
            .and_then(|j| self.sigma.get(j))
            .cloned()
            .unwrap_or_default()
    }

    /// Smallest admissible next value.
    pub fn floor(&self) -> Natural {
        self.values.last().cloned().unwrap_or_else(Natural::one)
    }

    /// Reciprocal-form terms made only of prefix variables: `E_{t-(n-k)} / P`.
    pub fn fixed_sum(&self, n: usize, k: usize) -> Ratio {
        ratio(&self.fixed_numerator(n, k), self.product())
    }

    fn fixed_numerator(&self, n: usize, k: usize) -> Natural {
        self.e(self.len() as isize - (n - k) as isize)
    }
}

/// Per-(n, k) data the search reuses at every node.
#[derive(Debug, Clone)]
pub(crate) struct Problem {
    pub n: usize,
    pub k: usize,
    /// Bound on every coordinate from the closed-form results for k = 1, 2, n-1, n-2.
    global_cap: Option<Natural>,
    /// Per-position caps, index `t` bounds the coordinate `x_{t+1}`.
    position_caps: Vec<Option<Natural>>,
    /// `binom[r][j] = C(r, j)` for `r <= n`.
    binom: Vec<Vec<Natural>>,
}

impl Problem {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("n must be at least 2"));
        }
        if k >= n {
            return Err(Error::invalid(format!(
                "k = {k} must be smaller than n = {n}"
            )));
        }
        let n64 = n as u64;
        let mut caps: Vec<Natural> = Vec::new();
        let mut position_caps = vec![None; n];
        if k == 1 {
            caps.push(nat(n64));
        }
        if k == 2 && n >= 3 {
            caps.push(nat(n64 * (3 * n64 - 5) / 2));
        }
        if k + 1 == n {
            let u = u_terms(n);
            caps.push(&u[n - 1] - 1u32);
            for (t, cap) in position_caps.iter_mut().enumerate() {
                *cap = Some(nat((n - t) as u64) * &u[t]);
            }
        }
        if k + 2 == n {
            let v = v_terms(n);
            caps.push(&v[n - 1] - 1u32);
            for (t, cap) in position_caps.iter_mut().enumerate() {
                let tail = tail_cap_v(n, t, &v[t]);
                *cap = Some(match cap.take() {
                    Some(c) => c.min(tail),
                    None => tail,
                });
            }
        }
        let binom = (0..=n64)
            .map(|r| (0..=r).map(|j| binomial(r, j)).collect())
            .collect();
        Ok(Problem {
            n,
            k,
            global_cap: caps.into_iter().min(),
            position_caps,
            binom,
        })
    }

    /// Cap on the next coordinate after a prefix of length `t`.
    pub fn cap(&self, t: usize) -> Option<Natural> {
        match (
            &self.global_cap,
            self.position_caps.get(t).and_then(Option::as_ref),
        ) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        }
    }

    /// True when all `n - t` remaining coordinates equal to `w` keep the reciprocal form `>= 1`:
    /// `sum_j C(r, j) E_{t-(n-k)+j} w^(J-j) >= P w^J` with `r = n - t`, `J = min(r, n - k)`.
    fn reaches_one(&self, state: &PrefixState, w: &Natural) -> bool {
        let t = state.len();
        let r = self.n - t;
        let big_j = r.min(self.n - self.k);
        let base = t as isize - (self.n - self.k) as isize;
        let mut lhs = Natural::zero();
        let mut wpow = Natural::one();
        // accumulate from j = J down to 0 so w^(J-j) grows alongside
        for j in (0..=big_j).rev() {
            let e = state.e(base + j as isize);
            if !e.is_zero() {
                lhs += &self.binom[r][j] * e * &wpow;
            }
            wpow *= w;
        }
        // wpow is now w^(J+1)
        lhs * w >= state.product() * wpow
    }

    pub fn expand_range(&self, state: &PrefixState) -> Option<(Natural, Natural)> {
        let t = state.len();
        if t + 2 > self.n {
            return None;
        }
        if state.fixed_numerator(self.n, self.k) >= *state.product() {
            return None;
        }
        let lo = state.floor();
        if !self.reaches_one(state, &lo) {
            return None;
        }
        let cap = self.cap(t);
        if let Some(c) = &cap {
            if *c < lo {
                return None;
            }
            if self.reaches_one(state, c) {
                return Some((lo, c.clone()));
            }
        }
        // exponential then binary search for the last w with reaches_one(w)
        let mut good = lo.clone();
        let mut step = Natural::one();
        let mut bad = loop {
            let probe = &good + &step;
            if let Some(c) = &cap {
                if probe >= *c {
                    break c.clone();
                }
            }
            if self.reaches_one(state, &probe) {
                good = probe;
                step <<= 1;
            } else {
                break probe;
            }
        };
        while &bad - &good > Natural::one() {
            let mid = (&good + &bad) >> 1;
            if self.reaches_one(state, &mid) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        Some((lo, good))
    }

    /// Solves `z (P - E_{k-1}) = E_k` for the last coordinate.
    pub fn complete_last_one(&self, state: &PrefixState) -> Option<Natural> {
        if state.len() + 1 != self.n {
            return None;
        }
        let k = self.k as isize;
        let coeff = BigInt::from(state.product().clone()) - BigInt::from(state.e(k - 1));
        if coeff.sign() != Sign::Plus {
            return None;
        }
        let coeff = coeff.magnitude();
        let (z, rem) = state.e(k).div_rem(coeff);
        (rem.is_zero() && !z.is_zero() && z >= state.floor()).then_some(z)
    }

    /// All `(y, z)` with `floor <= y <= z` completing the prefix, from divisor pairs of
    /// `m = E_{k-1}^2 + D E_k` where `D = P - E_{k-2}`:
    /// `(D y - E_{k-1}) (D z - E_{k-1}) = m`.
    pub fn complete_last_two(&self, state: &PrefixState) -> Vec<(Natural, Natural)> {
        if state.len() + 2 != self.n {
            return Vec::new();
        }
        let Some(parts) = completion_parts(state, self.k) else {
            return Vec::new();
        };
        let CompletionParts { d, c, m } = parts;
        let floor = state.floor();
        let divs = divisors(&m).expect("m is positive");
        let mut out = Vec::new();
        let mut consider = |y_num: BigInt, z_num: BigInt| {
            if !y_num.is_positive() || !z_num.is_positive() {
                return;
            }
            let (y, ry) = y_num.magnitude().div_rem(&d);
            let (z, rz) = z_num.magnitude().div_rem(&d);
            if ry.is_zero() && rz.is_zero() && y >= floor && y <= z {
                out.push((y, z));
            }
        };
        let c_int = BigInt::from(c.clone());
        for u in &divs {
            let v = &m / u;
            if u <= &v {
                // both factors positive
                consider(
                    &c_int + BigInt::from(u.clone()),
                    &c_int + BigInt::from(v.clone()),
                );
            }
            if u >= &v {
                // both negative, -u <= -v
                consider(
                    &c_int - BigInt::from(u.clone()),
                    &c_int - BigInt::from(v.clone()),
                );
            }
        }
        out.sort();
        out.dedup();
        out.retain(|(y, z)| {
            let mut full = state.values().to_vec();
            full.push(y.clone());
            full.push(z.clone());
            SolutionTuple::new(full)
                .ok()
                .and_then(|t| residual(&t, self.k).ok())
                .is_some_and(|r| r.is_zero())
        });
        out
    }
}

/// `2 (n - t) v_{t+1}`: the `v`-based bound on coordinate `t + 1` (1-based) when `k = n - 2`.
pub fn tail_cap_v(n: usize, t: usize, v_next: &Natural) -> Natural {
    nat(2 * (n - t) as u64) * v_next
}

/// `D`, `E_{k-1}` and the divisor target `m` of the two-variable completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionParts {
    pub d: Natural,
    pub c: Natural,
    pub m: Natural,
}

/// `None` when `D = P - E_{k-2} <= 0`, in which case no completion exists.
pub fn completion_parts(state: &PrefixState, k: usize) -> Option<CompletionParts> {
    let k = k as isize;
    let d = BigInt::from(state.product().clone()) - BigInt::from(state.e(k - 2));
    if d.sign() != Sign::Plus {
        return None;
    }
    let d = d.magnitude().clone();
    let c = state.e(k - 1);
    let m = &c * &c + &d * state.e(k);
    Some(CompletionParts { d, c, m })
}

/// Candidate range for the next coordinate; `None` when no value can lead to a solution.
pub fn expand_range(state: &PrefixState, n: usize, k: usize) -> Result<Option<(Natural, Natural)>> {
    Ok(Problem::new(n, k)?.expand_range(state))
}

pub fn complete_last_one(state: &PrefixState, n: usize, k: usize) -> Result<Option<Natural>> {
    if state.len() + 1 != n {
        return Err(Error::invalid(
            "complete_last_one needs a prefix of length n - 1",
        ));
    }
    Ok(Problem::new(n, k)?.complete_last_one(state))
}

pub fn complete_last_two(
    state: &PrefixState,
    n: usize,
    k: usize,
) -> Result<Vec<(Natural, Natural)>> {
    if state.len() + 2 != n {
        return Err(Error::invalid(
            "complete_last_two needs a prefix of length n - 2",
        ));
    }
    Ok(Problem::new(n, k)?.complete_last_two(state))
}
