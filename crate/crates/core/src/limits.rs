//! Growth constants `lim a_n^(1/2^n)` of the `u` and `v` sequences.
//!
//! The estimate is `a_N^(1/2^N)` for a finite `N`, evaluated as
//! `exp(ln(a_N) / 2^N)` in binary fixed point on the exact integer `a_N`.
//! Both sequences satisfy `(a_m - 1)^2 < a_{m+1} <= a_m^2`, so
//! `a_m^(1/2^m)` decreases in `m` and the distance to the limit is at most
//! `8 / (a_N 2^N)`. The reported error bound adds that tail, the fixed-point
//! rounding, and the decimal truncation of the rendered value.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{ratio, Natural, Ratio};
use crate::sequences::{u_terms, v_terms, SeqKind};
use crate::{Error, Result};

const GUARD_BITS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitEstimate {
    pub kind: SeqKind,
    pub terms: usize,
    pub digits: usize,
    /// `a_terms^(1/2^terms)` truncated to `digits` decimals, exactly.
    pub value: Ratio,
    /// Sound bound on `|value - limit|`.
    pub error_bound: Ratio,
    decimal: String,
}

impl LimitEstimate {
    pub fn decimal(&self) -> &str {
        &self.decimal
    }

    /// The error bound in scientific notation, rounded up in the last place.
    pub fn error_display(&self) -> String {
        sci_upper(&self.error_bound)
    }
}

/// Minimum working precision for `digits` decimal places.
pub fn required_bits(digits: usize) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8
}

pub fn limit_constant(
    kind: SeqKind,
    terms: usize,
    digits: usize,
    precision_bits: u32,
) -> Result<LimitEstimate> {
    if terms < 8 {
        return Err(Error::invalid("limit estimate needs at least 8 terms"));
    }
    if digits == 0 {
        return Err(Error::invalid("digits must be positive"));
    }
    if precision_bits < required_bits(digits) {
        return Err(Error::Config(format!(
            "{precision_bits} bits cannot carry {digits} decimal digits (need at least {})",
            required_bits(digits)
        )));
    }
    let a = match kind {
        SeqKind::U => u_terms(terms).pop().expect("terms >= 8"),
        SeqKind::V => v_terms(terms).pop().expect("terms >= 8"),
    };
    let w = precision_bits + GUARD_BITS;
    let fp = FixedPoint::new(w);

    let bits = a.bits();
    let mantissa = BigInt::from((&a << w) >> (bits - 1));
    let (ln2, err_ln2) = fp.ln2();
    let (ln_m, err_ln_m) = fp.ln_unit_interval(&mantissa);
    let ln_a = BigInt::from(bits - 1) * &ln2 + ln_m;
    let err_ln_a = BigUint::from(bits - 1) * err_ln2 + err_ln_m;
    let scaled = &ln_a >> terms;
    let err_scaled = (&err_ln_a >> terms) + 2u32;
    let (root, err_exp) = fp.exp(&scaled);
    // d/dx e^x <= 2 on [0, ln 2)
    let err_ulps = err_scaled * 2u32 + err_exp;

    let unit = BigUint::one() << w;
    let arith_err = ratio(&err_ulps, &unit);
    let tail_err = ratio(&BigUint::from(8u32), &(&a << terms));

    let ten_d = BigUint::from(10u32).pow(digits as u32);
    let root = root.to_biguint().expect("estimate is positive");
    let truncated = (&root * &ten_d) >> w;
    let value = ratio(&truncated, &ten_d);
    let error_bound = arith_err + tail_err + ratio(&BigUint::one(), &ten_d);

    let int_part = &truncated / &ten_d;
    let frac_part = (&truncated % &ten_d).to_string();
    let decimal = format!("{int_part}.{frac_part:0>digits$}");
    Ok(LimitEstimate {
        kind,
        terms,
        digits,
        value,
        error_bound,
        decimal,
    })
}

/// Signed fixed point with `w` fractional bits. Each routine returns the
/// value together with an upper bound on its error in units of `2^-w`.
struct FixedPoint {
    w: u32,
    one: BigInt,
}

impl FixedPoint {
    fn new(w: u32) -> Self {
        FixedPoint {
            w,
            one: BigInt::one() << w,
        }
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.w
    }

    /// Worst-case accumulated rounding of a `terms`-term series.
    fn series_err(terms: u64) -> BigUint {
        BigUint::from(terms * terms + 4 * terms + 4)
    }

    /// `2 atanh(y)` for fixed-point `0 <= y < 1/3`.
    fn two_atanh(&self, y: &BigInt) -> (BigInt, BigUint) {
        let y2 = self.mul(y, y);
        let mut term = y.clone();
        let mut sum = y.clone();
        let mut i = 1u64;
        loop {
            term = self.mul(&term, &y2);
            if term.is_zero() {
                break;
            }
            sum += &term / BigInt::from(2 * i + 1);
            i += 1;
        }
        (sum * 2, Self::series_err(i) * 2u32 + 4u32)
    }

    fn ln2(&self) -> (BigInt, BigUint) {
        let third = &self.one / 3;
        self.two_atanh(&third)
    }

    /// `ln m` for fixed-point `1 <= m < 2`, via `y = (m - 1) / (m + 1)`.
    fn ln_unit_interval(&self, m: &BigInt) -> (BigInt, BigUint) {
        let y = ((m - &self.one) << self.w) / (m + &self.one);
        let (v, err) = self.two_atanh(&y);
        // one ulp for truncating the mantissa, one for the division above
        (v, err + 4u32)
    }

    /// `e^x` for fixed-point `0 <= x < ln 2`.
    fn exp(&self, x: &BigInt) -> (BigInt, BigUint) {
        let mut term = self.one.clone();
        let mut sum = self.one.clone();
        let mut i = 1u64;
        loop {
            term = self.mul(&term, x) / BigInt::from(i);
            if term.is_zero() {
                break;
            }
            sum += &term;
            i += 1;
        }
        (sum, Self::series_err(i))
    }
}

/// Upward-rounded two-significant-digit scientific rendering of a positive ratio.
fn sci_upper(r: &Ratio) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let num = r.numer().magnitude().clone();
    let den = r.denom().magnitude().clone();
    // exponent e with 10^e <= r < 10^(e+1), starting from a digit-count guess
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    let ten = Natural::from(10u32);
    let scaled = |e: i64| -> Ratio {
        let p = ten.pow(e.unsigned_abs() as u32);
        if e >= 0 {
            ratio(&num, &(&den * &p))
        } else {
            ratio(&(&num * &p), &den)
        }
    };
    while scaled(e) < Ratio::one() {
        e -= 1;
    }
    while scaled(e) >= Ratio::from_integer(10.into()) {
        e += 1;
    }
    let mant = scaled(e) * Ratio::from_integer(10.into());
    let digits = mant.ceil().to_integer();
    let (digits, e) = if digits >= BigInt::from(100) {
        (BigInt::from(10), e + 1)
    } else {
        (digits, e)
    };
    let s = digits.to_string();
    format!("{}.{}e{}", &s[..1], &s[1..], e)
}
