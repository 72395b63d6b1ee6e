//! Helpers around `num::BigRational`, the exact scalar used by every
//! enumeration oracle and closed-form formula in this crate.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Shorthand for a small rational constant.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `n choose k` as an exact integer.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `r^e` by binary exponentiation (exact).
pub fn rat_pow(r: &BigRational, e: u64) -> BigRational {
    let mut base = r.clone();
    let mut e = e;
    let mut acc = BigRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Nearest-double conversion. Handles rationals whose parts exceed `f64`
/// range by falling back to a bit-length-balanced quotient.
pub fn to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // num/den both astronomically large: shift both down by a common power
    // of two so the quotient is preserved.
    let num_bits = r.numer().bits() as i64;
    let den_bits = r.denom().bits() as i64;
    let shift = (num_bits.max(den_bits) - 900).max(0) as u64;
    let num = r.numer() >> shift;
    let den = r.denom() >> shift;
    if den.is_zero() {
        return if r.numer().is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    BigRational::new(num, den).to_f64().unwrap_or(f64::NAN)
}

/// Upper bound on `sqrt(r)` as a rational, exact when `r` is a perfect
/// square. Requires `r >= 0`.
pub fn sqrt_upper(r: &BigRational) -> Result<BigRational> {
    if r.is_negative() {
        return Err(Error::domain("sqrt of a negative rational"));
    }
    if r.is_zero() {
        return Ok(BigRational::zero());
    }
    // sqrt(a/b) = sqrt(a*b)/b with a*b >= 0.
    let prod = r.numer() * r.denom();
    let root = prod.sqrt(); // floor square root
    let exact = &root * &root == prod;
    let upper = if exact { root } else { root + 1 };
    Ok(BigRational::new(upper, r.denom().clone()))
}

/// Parses an exact rational from `"a/b"`, a decimal like `"0.25"`, or an
/// integer literal. Scientific notation such as `"2.5e-3"` is accepted and
/// kept exact.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::domain("empty rational literal"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::domain(format!("bad numerator in {s:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::domain(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        return Ok(BigRational::new(num, den));
    }
    // Decimal form: [sign] digits [. digits] [e exponent]
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|_| Error::domain(format!("bad exponent in {s:?}")))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(Error::domain(format!("bad rational literal {s:?}")));
    }
    let value: BigInt = digits
        .parse()
        .map_err(|_| Error::domain(format!("bad rational literal {s:?}")))?;
    let scale = frac_part.len() as i64 - exp10;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::new(value, num::pow::pow(ten, scale as usize))
    } else {
        BigRational::from(value * num::pow::pow(ten, (-scale) as usize))
    })
}

/// Renders a rational as `"num/den"` (or just `"num"` for integers).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Splits into `(num, den)` i64 parts when both fit.
pub fn to_i64_parts(r: &BigRational) -> Option<(i64, i64)> {
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}

pub(crate) fn bigint_from_i128(v: i128) -> BigInt {
    let neg = v < 0;
    let mag = v.unsigned_abs();
    let lo = (mag & 0xFFFF_FFFF_FFFF_FFFF) as u64;
    let hi = (mag >> 64) as u64;
    let out: BigInt = (BigInt::from(hi) << 64u32) + BigInt::from(lo);
    if neg {
        -out
    } else {
        out
    }
}
