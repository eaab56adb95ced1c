//! Exact rational helpers shared by the model types.

use alloc::format;
use alloc::string::String;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational coefficient / energy type.
pub type Rational = num_rational::Ratio<i64>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

pub fn to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(r: Rational) -> Rational {
    r.abs()
}

/// Parses `"3"`, `"-2.25"`, `"7/3"` or `"1e-3"`-free decimal text into an exact rational.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().ok()?;
        let den: i64 = den.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (whole, frac) = match body.split_once('.') {
        Some((w, f)) => (w, f),
        None => (body, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut numer: i64 = if whole.is_empty() {
        0
    } else {
        whole.parse().ok()?
    };
    let mut denom: i64 = 1;
    for c in frac.chars() {
        numer = numer.checked_mul(10)?.checked_add(c.to_digit(10)? as i64)?;
        denom = denom.checked_mul(10)?;
    }
    if negative {
        numer = -numer;
    }
    Some(Rational::new(numer, denom))
}

/// Renders an integer as `"5"`, a terminating decimal as `"2.25"`, anything else as `"7/3"`.
pub fn format(r: Rational) -> String {
    if r.is_integer() {
        return format!("{}", r.to_integer());
    }
    let mut den = *r.denom();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while den % 2 == 0 {
        den /= 2;
        twos += 1;
    }
    while den % 5 == 0 {
        den /= 5;
        fives += 1;
    }
    if den != 1 {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let digits = twos.max(fives);
    let Some(scale) = 10i64.checked_pow(digits) else {
        return format!("{}/{}", r.numer(), r.denom());
    };
    let scaled = r * int(scale);
    let v = scaled.to_integer();
    let sign = if v < 0 { "-" } else { "" };
    let v = v.unsigned_abs();
    let scale = scale as u64;
    format!(
        "{sign}{}.{:0width$}",
        v / scale,
        v % scale,
        width = digits as usize
    )
}

/// Least common multiple of the denominators of `values` (1 for an empty input).
pub fn common_denominator<I: IntoIterator<Item = Rational>>(values: I) -> i64 {
    values
        .into_iter()
        .filter(|v| !v.is_zero())
        .fold(1i64, |acc, v| acc.lcm(v.denom()))
}
