//! Sylvester's sequence `u` and the pair-reciprocal sequence `v`.
//!
//! `u_1 = 2, u_{n+1} = u_n^2 - u_n + 1` closes the unit-fraction equation;
//! `v_1 = 1, v_2 = 2, v_{n+1} = 1 + S_n / (1 - Q_n)` plays the same role for
//! `sum_{i<j} 1/(x_i x_j) = 1`, where `S_n = sum 1/v_i` and
//! `Q_n = sum_{i<j} 1/(v_i v_j)`. The `v` terms can be produced four ways and
//! all of them are kept so they can be checked against each other.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{ratio_int, recip, Natural, Ratio};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqKind {
    U,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VMethod {
    /// Exact rational evaluation of `1 + S_n / (1 - Q_n)`.
    Definition,
    /// Three-term recurrence `v_n^2 + v_n v_{n-1} + v_{n-1}^2 - v_{n-1}^3 - v_n - v_{n-1} + 1`.
    Rec1,
    /// `v_n^2 - v_n + 1 + v_1 ... v_{n-1}`.
    Rec2,
    /// `1 + (v_1 ... v_n) S_n`, kept integral as `1 + sigma_{n-1}(v_1, ..., v_n)`.
    Rec3,
}

impl VMethod {
    pub const ALL: [VMethod; 4] = [
        VMethod::Definition,
        VMethod::Rec1,
        VMethod::Rec2,
        VMethod::Rec3,
    ];
}

/// Terms `a_1 .. a_count` with running `S`, `Q` and products, all indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    kind: SeqKind,
    values: Vec<Natural>,
    partial_sum_s: Vec<Ratio>,
    partial_sum_q: Vec<Ratio>,
    partial_product: Vec<Natural>,
}

impl SequenceTable {
    fn from_values(kind: SeqKind, values: Vec<Natural>) -> Self {
        let mut partial_sum_s = Vec::with_capacity(values.len());
        let mut partial_sum_q = Vec::with_capacity(values.len());
        let mut partial_product = Vec::with_capacity(values.len());
        let (mut s, mut q, mut p) = (Ratio::zero(), Ratio::zero(), Natural::one());
        for v in &values {
            let r = recip(v);
            q += &s * &r;
            s += r;
            p *= v;
            partial_sum_s.push(s.clone());
            partial_sum_q.push(q.clone());
            partial_product.push(p.clone());
        }
        SequenceTable {
            kind,
            values,
            partial_sum_s,
            partial_sum_q,
            partial_product,
        }
    }

    pub fn kind(&self) -> SeqKind {
        self.kind
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

    /// `a_i`, 1-based.
    pub fn value(&self, i: usize) -> &Natural {
        &self.values[i - 1]
    }

    /// `S_i = sum_{j <= i} 1/a_j`.
    pub fn s(&self, i: usize) -> &Ratio {
        &self.partial_sum_s[i - 1]
    }

    /// `Q_i = sum_{j < l <= i} 1/(a_j a_l)`.
    pub fn q(&self, i: usize) -> &Ratio {
        &self.partial_sum_q[i - 1]
    }

    /// `a_1 ... a_i`; `product(0) = 1`.
    pub fn product(&self, i: usize) -> Natural {
        if i == 0 {
            Natural::one()
        } else {
            self.partial_product[i - 1].clone()
        }
    }
}

pub fn sylvester_u(count: usize) -> Result<SequenceTable> {
    if count == 0 {
        return Err(Error::invalid("count must be at least 1"));
    }
    let mut values = vec![Natural::from(2u32)];
    while values.len() < count {
        let u = values.last().unwrap();
        values.push(u * u - u + 1u32);
    }
    Ok(SequenceTable::from_values(SeqKind::U, values))
}

pub fn v_sequence(count: usize, method: VMethod) -> Result<SequenceTable> {
    if count < 2 {
        return Err(Error::invalid("v sequence needs count >= 2"));
    }
    let values = match method {
        VMethod::Definition => v_by_definition(count)?,
        VMethod::Rec1 => v_by_rec1(count),
        VMethod::Rec2 => v_by_rec2(count),
        VMethod::Rec3 => v_by_rec3(count),
    };
    Ok(SequenceTable::from_values(SeqKind::V, values))
}

/// `v_1 .. v_count` via the product recurrence, the cheapest route.
pub fn v_terms(count: usize) -> Vec<Natural> {
    v_by_rec2(count.max(2)).into_iter().take(count).collect()
}

/// `u_1 .. u_count`.
pub fn u_terms(count: usize) -> Vec<Natural> {
    sylvester_u(count.max(1))
        .map(|t| t.values)
        .unwrap_or_default()
        .into_iter()
        .take(count)
        .collect()
}

fn seeds() -> Vec<Natural> {
    vec![Natural::one(), Natural::from(2u32)]
}

fn v_by_definition(count: usize) -> Result<Vec<Natural>> {
    let mut values = seeds();
    let one = Ratio::one();
    let (mut s, mut q) = (Ratio::zero(), Ratio::zero());
    for v in &values {
        let r = recip(v);
        q += &s * &r;
        s += r;
    }
    while values.len() < count {
        let next = &one + &s / (&one - &q);
        if !next.is_integer() || !next.is_positive() {
            return Err(Error::Verification(format!(
                "v_{} = {next} is not a positive integer",
                values.len() + 1
            )));
        }
        let v = next.to_integer().to_biguint().expect("positive");
        let r = recip(&v);
        q += &s * &r;
        s += r;
        values.push(v);
    }
    Ok(values)
}

fn v_by_rec1(count: usize) -> Vec<Natural> {
    // (v_2, v_3) seed the two-term window; v_3 comes from the product recurrence
    let mut values = v_by_rec2(count.min(3));
    while values.len() < count {
        let n = values.len();
        let a = BigInt::from(values[n - 1].clone());
        let b = BigInt::from(values[n - 2].clone());
        let next: BigInt = &a * &a + &a * &b + &b * &b - &b * &b * &b - &a - &b + BigInt::from(1u8);
        values.push(next.to_biguint().expect("v is increasing"));
    }
    values
}

fn v_by_rec2(count: usize) -> Vec<Natural> {
    let mut values = seeds();
    // product of v_1 .. v_{n-1}
    let mut prefix = Natural::one();
    while values.len() < count {
        let n = values.len();
        let v = &values[n - 1];
        let next = v * v - v + 1u32 + &prefix;
        prefix *= v;
        values.push(next);
    }
    values
}

fn v_by_rec3(count: usize) -> Vec<Natural> {
    let mut values = seeds();
    // product(v_1..v_n) and sigma_{n-1}(v_1..v_n) for the current n
    let mut prod = Natural::from(2u32);
    let mut sigma_top = Natural::from(3u32);
    while values.len() < count {
        let next = &sigma_top + 1u32;
        sigma_top = &sigma_top * &next + &prod;
        prod *= &next;
        values.push(next);
    }
    values
}

/// `1 - Q_n - 1/(v_1 ... v_n)`, which vanishes for every `n >= 2`.
pub fn defect_identity_check(table: &SequenceTable, n: usize) -> Result<Ratio> {
    if table.kind != SeqKind::V {
        return Err(Error::invalid("defect identity applies to the v sequence"));
    }
    if n < 2 || n > table.len() {
        return Err(Error::invalid(format!(
            "n = {n} outside 2..={}",
            table.len()
        )));
    }
    Ok(Ratio::one() - table.q(n) - recip(&table.product(n)))
}

/// `S_{n-1} (v_{n+1} - v_n (v_n - 1) - 1) - (v_n - 1)`, zero for `2 <= n < len`.
pub fn step_identity_residual(table: &SequenceTable, n: usize) -> Ratio {
    let vn = table.value(n);
    let lhs = table.s(n - 1) * ratio_int(&(table.value(n + 1) - vn * (vn - 1u32) - 1u32));
    lhs - ratio_int(&(vn - 1u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nat;

    fn as_u64(t: &SequenceTable) -> Vec<u64> {
        t.values()
            .iter()
            .map(|v| u64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn sylvester_examples() {
        assert_eq!(as_u64(&sylvester_u(5).unwrap()), vec![2, 3, 7, 43, 1807]);
        assert_eq!(as_u64(&sylvester_u(1).unwrap()), vec![2]);
        let t = sylvester_u(6).unwrap();
        assert_eq!(*t.value(6), nat(3_263_443));
        assert_eq!(*t.value(6), t.product(5) + 1u32);
        assert!(sylvester_u(0).is_err());
    }

    #[test]
    fn v_first_terms_all_methods() {
        for m in VMethod::ALL {
            let t = v_sequence(7, m).unwrap();
            assert_eq!(
                as_u64(&t),
                vec![1, 2, 4, 15, 219, 47863, 2_290_845_187],
                "{m:?}"
            );
        }
        assert!(v_sequence(1, VMethod::Rec2).is_err());
    }

    #[test]
    fn v4_by_direct_substitution() {
        // 4^2 - 4 + 1 + 1*2
        assert_eq!(16 - 4 + 1 + 2, 15);
        assert_eq!(*v_sequence(4, VMethod::Rec2).unwrap().value(4), nat(15));
    }

    #[test]
    fn rec1_also_holds_at_n2() {
        // evaluated with (v_1, v_2) = (1, 2): 4 + 2 + 1 - 1 - 2 - 1 + 1
        let (a, b) = (2i64, 1i64);
        assert_eq!(a * a + a * b + b * b - b * b * b - a - b + 1, 4);
    }

    #[test]
    fn methods_agree_for_16_terms() {
        let base = v_sequence(16, VMethod::Rec2).unwrap();
        for m in VMethod::ALL {
            assert_eq!(v_sequence(16, m).unwrap().values(), base.values(), "{m:?}");
        }
        assert_eq!(v_terms(16), base.values());
    }

    #[test]
    fn defect_identity() {
        let t = v_sequence(10, VMethod::Rec2).unwrap();
        assert_eq!(*t.q(3), Ratio::new(7.into(), 8.into()));
        assert_eq!(t.product(3), nat(8));
        assert_eq!(*t.q(2), Ratio::new(1.into(), 2.into()));
        for n in 2..=10 {
            assert!(defect_identity_check(&t, n).unwrap().is_zero(), "n = {n}");
        }
        assert!(defect_identity_check(&sylvester_u(4).unwrap(), 3).is_err());
        assert!(defect_identity_check(&t, 11).is_err());
    }

    #[test]
    fn structural_invariants_to_16() {
        let v = v_sequence(17, VMethod::Rec2).unwrap();
        for n in 2..=16 {
            assert!(step_identity_residual(&v, n).is_zero(), "n = {n}");
        }
        // v_2 - 1 = v_1, so the strict inequality starts at n = 2
        assert_eq!(v.value(2) - 1u32, v.product(1));
        for n in 2..=16 {
            assert!(v.value(n + 1) - 1u32 > v.product(n), "n = {n}");
        }
        for n in 3..=16 {
            let vn = v.value(n);
            let sq = |x: &Natural| x * x;
            assert!(sq(&(vn - 1u32)) < *v.value(n + 1));
            assert!(*v.value(n + 1) <= sq(vn));
        }
        let u = sylvester_u(17).unwrap();
        for n in 1..=16 {
            assert_eq!(*u.value(n + 1), u.product(n) + 1u32);
        }
    }
}
