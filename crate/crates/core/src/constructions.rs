//! Explicit solution families, built without search.
//!
//! Every function here checks the residual of what it returns; a failed check
//! is reported as [`Error::Verification`] and means the construction is wrong.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{lcm_pairwise_products, nat, ratio_int, recip, Natural, Ratio};
use crate::sequences::{u_terms, v_terms};
use crate::symfunc::{pair_sum, reciprocal_sum, residual, sigma_all, SolutionTuple};
use crate::{Error, Result};

fn verified(t: SolutionTuple, k: usize) -> Result<SolutionTuple> {
    if residual(&t, k)?.is_zero() {
        Ok(t)
    } else {
        Err(Error::Verification(format!(
            "constructed {t} fails for k = {k}"
        )))
    }
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::invalid(format!(
            "need 1 <= k < n, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// Memo for `p_k(n)`.
struct PTable {
    memo: HashMap<(usize, usize), Natural>,
}

impl PTable {
    /// The first `n - 1` entries of the tuple whose closing entry is `p_k(n)`.
    fn head(&mut self, n: usize, k: usize) -> Vec<Natural> {
        let mut head = vec![Natural::one(); n - k - 1];
        head.push(nat(2));
        for j in 1..k {
            head.push(self.p(n - k + j, j) + 1u32);
        }
        head
    }

    fn p(&mut self, n: usize, k: usize) -> Natural {
        if k == 1 {
            return nat(n as u64);
        }
        if let Some(v) = self.memo.get(&(n, k)) {
            return v.clone();
        }
        let head = self.head(n, k);
        let v = sigma_all(&head)[k].clone();
        self.memo.insert((n, k), v.clone());
        v
    }
}

/// `(1, ..., 1, 2, p_1(n-k+1)+1, ..., p_{k-1}(n-1)+1, p_k(n))`.
pub fn pk_solution(n: usize, k: usize) -> Result<SolutionTuple> {
    check_nk(n, k)?;
    let mut table = PTable {
        memo: HashMap::new(),
    };
    let mut entries = table.head(n, k);
    entries.push(table.p(n, k));
    verified(SolutionTuple::sorted(entries)?, k)
}

/// `(1, ..., 1, 2, n)`, the k = 1 solution.
pub fn k1_solution(n: usize) -> Result<SolutionTuple> {
    if n < 2 {
        return Err(Error::invalid("k = 1 needs n >= 2"));
    }
    let mut entries = vec![Natural::one(); n - 2];
    entries.push(nat(2));
    entries.push(nat(n as u64));
    verified(SolutionTuple::sorted(entries)?, 1)
}

/// `(1, ..., 1, 2, n, n(3n-5)/2)`, the k = 2 solution attaining the bound on `x_n`.
pub fn canonical_k2(n: usize) -> Result<SolutionTuple> {
    if n < 3 {
        return Err(Error::invalid("k = 2 needs n >= 3"));
    }
    let n64 = n as u64;
    let mut entries = vec![Natural::one(); n - 3];
    entries.push(nat(2));
    entries.push(nat(n64));
    entries.push(nat(n64 * (3 * n64 - 5) / 2));
    verified(SolutionTuple::sorted(entries)?, 2)
}

/// `(u_1, ..., u_{n-1}, u_n - 1)` for k = n - 1.
pub fn sylvester_solution(n: usize) -> Result<SolutionTuple> {
    if n < 2 {
        return Err(Error::invalid("need n >= 2"));
    }
    let mut entries = u_terms(n);
    *entries.last_mut().expect("n >= 2") -= 1u32;
    verified(SolutionTuple::new(entries)?, n - 1)
}

/// `(v_1, ..., v_{n-1}, v_n - 1)` for k = n - 2.
pub fn v_solution(n: usize) -> Result<SolutionTuple> {
    if n < 2 {
        return Err(Error::invalid("need n >= 2"));
    }
    let mut entries = v_terms(n);
    *entries.last_mut().expect("n >= 2") -= 1u32;
    verified(SolutionTuple::new(entries)?, n - 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityTag {
    Base,
    PlusOne,
    PlusTwo,
}

/// A tuple `b` with `sum_{i<j} 1/(b_i b_j) = 1 - 1/lcm`, where `lcm` is the
/// lcm of the pairwise products, together with its closing solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyWitness {
    pub base: SolutionTuple,
    pub lcm: Natural,
    /// `base` followed by `lcm * sum 1/b_i`; solves the k = len - 2 equation.
    pub extension: SolutionTuple,
    pub parity_tag: ParityTag,
}

impl FamilyWitness {
    /// Builds the witness for `base`, checking the defect identity.
    pub fn new(base: SolutionTuple, parity_tag: ParityTag) -> Result<Self> {
        if base.len() < 2 {
            return Err(Error::invalid("a witness needs at least two entries"));
        }
        let lcm = lcm_pairwise_products(base.entries())?;
        if pair_sum(&base)? != Ratio::one() - recip(&lcm) {
            return Err(Error::invalid(format!(
                "{base} does not satisfy the defect identity"
            )));
        }
        let closing = closing_entry(&base, &lcm)?;
        let mut entries = base.entries().to_vec();
        entries.push(closing);
        let extension = verified(SolutionTuple::sorted(entries)?, base.len() - 1)?;
        Ok(FamilyWitness {
            base,
            lcm,
            extension,
            parity_tag,
        })
    }

    pub fn all_even(&self) -> bool {
        self.base.entries().iter().all(|x| x.is_even())
    }
}

fn closing_entry(base: &SolutionTuple, lcm: &Natural) -> Result<Natural> {
    let v = reciprocal_sum(base) * ratio_int(lcm);
    if !v.is_integer() {
        return Err(Error::Verification(format!(
            "closing entry for {base} is not an integer"
        )));
    }
    v.to_integer()
        .to_biguint()
        .ok_or_else(|| Error::Verification("negative closing entry".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Delta {
    Zero,
    One,
    Two,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Closed(SolutionTuple),
    Witness(FamilyWitness),
}

/// Appends `x + delta` to `base`, where `x = lcm * sum 1/b_i`.
///
/// `Zero` gives a full solution; `One` and `Two` give a longer witness. `Two`
/// requires every entry of `base` to be even.
pub fn lcm_extend(base: &SolutionTuple, delta: Delta) -> Result<Extension> {
    let witness = FamilyWitness::new(base.clone(), ParityTag::Base)?;
    extend_witness(&witness, delta)
}

fn extend_witness(w: &FamilyWitness, delta: Delta) -> Result<Extension> {
    let x = closing_entry(&w.base, &w.lcm)?;
    let (next, factor, tag) = match delta {
        Delta::Zero => return Ok(Extension::Closed(w.extension.clone())),
        Delta::One => (&x + 1u32, &x + 1u32, ParityTag::PlusOne),
        Delta::Two => {
            if !w.all_even() {
                return Err(Error::invalid(format!("{} has an odd entry", w.base)));
            }
            (&x + 2u32, &x / 2u32 + 1u32, ParityTag::PlusTwo)
        }
    };
    let mut entries = w.base.entries().to_vec();
    entries.push(next);
    let ext = FamilyWitness::new(SolutionTuple::sorted(entries)?, tag)?;
    if ext.lcm != factor * &w.lcm {
        return Err(Error::Verification(format!(
            "unexpected lcm for {}",
            ext.base
        )));
    }
    Ok(Extension::Witness(ext))
}

fn expect_witness(e: Extension) -> FamilyWitness {
    match e {
        Extension::Witness(w) => w,
        Extension::Closed(_) => unreachable!("delta was not Zero"),
    }
}

/// Witnesses of length `n` (n >= 3), one for each `h = 1..=n-2`, all starting
/// with `(2, 2, 2)`. The last one has only even entries.
pub fn lcm_family(n: usize) -> Result<Vec<FamilyWitness>> {
    if n < 3 {
        return Err(Error::invalid("the lcm family starts at length 3"));
    }
    let mut chains = vec![FamilyWitness::new(
        SolutionTuple::from_u64(&[2, 2, 2])?,
        ParityTag::Base,
    )?];
    for _ in 3..n {
        let even = chains.last().expect("non-empty").clone();
        let mut next = chains
            .iter()
            .map(|w| extend_witness(w, Delta::One).map(expect_witness))
            .collect::<Result<Vec<_>>>()?;
        next.push(expect_witness(extend_witness(&even, Delta::Two)?));
        chains = next;
    }
    Ok(chains)
}

/// At least `n - 3` distinct solutions of the k = n - 2 equation (n >= 4).
pub fn lower_bound_family(n: usize) -> Result<Vec<SolutionTuple>> {
    if n < 4 {
        return Err(Error::invalid("need n >= 4"));
    }
    let mut out: Vec<SolutionTuple> = lcm_family(n - 1)?
        .into_iter()
        .map(|w| verified(w.extension, n - 2))
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    if out.len() < n - 3 {
        return Err(Error::Verification(format!(
            "only {} distinct solutions for n = {n}",
            out.len()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[u64]) -> SolutionTuple {
        SolutionTuple::from_u64(v).unwrap()
    }

    #[test]
    fn pk_examples() {
        assert_eq!(pk_solution(4, 2).unwrap(), t(&[1, 2, 4, 14]));
        assert_eq!(pk_solution(4, 1).unwrap(), t(&[1, 1, 2, 4]));
        assert_eq!(pk_solution(5, 2).unwrap(), t(&[1, 1, 2, 5, 25]));
        assert!(pk_solution(4, 4).is_err());
        assert!(pk_solution(4, 0).is_err());
    }

    #[test]
    fn pk_all_small() {
        for n in 2..=9 {
            for k in 1..n {
                let s = pk_solution(n, k).unwrap();
                assert_eq!(s.len(), n);
            }
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(canonical_k2(4).unwrap(), t(&[1, 2, 4, 14]));
        assert_eq!(canonical_k2(5).unwrap(), t(&[1, 1, 2, 5, 25]));
        assert_eq!(canonical_k2(3).unwrap(), t(&[2, 3, 6]));
        assert_eq!(sylvester_solution(4).unwrap(), t(&[2, 3, 7, 42]));
        assert_eq!(sylvester_solution(2).unwrap(), t(&[2, 2]));
        assert_eq!(sylvester_solution(5).unwrap(), t(&[2, 3, 7, 43, 1806]));
        assert_eq!(v_solution(5).unwrap(), t(&[1, 2, 4, 15, 218]));
        assert_eq!(v_solution(4).unwrap(), t(&[1, 2, 4, 14]));
        assert_eq!(v_solution(6).unwrap(), t(&[1, 2, 4, 15, 219, 47862]));
        assert_eq!(k1_solution(2).unwrap(), t(&[2, 2]));
        assert!(canonical_k2(2).is_err());
    }

    #[test]
    fn lcm_extend_examples() {
        let base = t(&[2, 2, 2]);
        assert_eq!(
            lcm_extend(&base, Delta::Zero).unwrap(),
            Extension::Closed(t(&[2, 2, 2, 6]))
        );
        let Extension::Witness(w) = lcm_extend(&base, Delta::One).unwrap() else {
            panic!()
        };
        assert_eq!(w.base, t(&[2, 2, 2, 7]));
        assert_eq!(w.lcm, nat(28));
        assert_eq!(
            pair_sum(&w.base).unwrap(),
            Ratio::new(27u32.into(), 28u32.into())
        );
        let Extension::Witness(w) = lcm_extend(&base, Delta::Two).unwrap() else {
            panic!()
        };
        assert_eq!(w.base, t(&[2, 2, 2, 8]));
        assert_eq!(w.lcm, nat(16));
        assert_eq!(
            pair_sum(&w.base).unwrap(),
            Ratio::new(15u32.into(), 16u32.into())
        );
    }

    #[test]
    fn lcm_extend_rejects() {
        // odd entry
        let w = t(&[2, 2, 2, 7]);
        assert!(lcm_extend(&w, Delta::Two).is_err());
        // no defect identity
        assert!(lcm_extend(&t(&[2, 3, 5]), Delta::Zero).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound_family(4).unwrap(), vec![t(&[2, 2, 2, 6])]);
        assert_eq!(
            lower_bound_family(5).unwrap(),
            vec![t(&[2, 2, 2, 7, 46]), t(&[2, 2, 2, 8, 26])]
        );
        let six = lower_bound_family(6).unwrap();
        assert_eq!(six.len(), 3);
        for s in &six {
            assert_eq!(&s.entries()[..3], &[nat(2), nat(2), nat(2)]);
        }
        for n in 4..=10 {
            assert!(lower_bound_family(n).unwrap().len() >= n - 3);
        }
        assert!(lower_bound_family(3).is_err());
    }

    #[test]
    fn family_parity() {
        for n in 3..=8 {
            let fam = lcm_family(n).unwrap();
            assert_eq!(fam.len(), n - 2);
            assert!(fam.last().unwrap().all_even());
        }
    }
}
