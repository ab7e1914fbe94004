//! Exact rational scalars: parsing, formatting, decimal rendering.
//!
//! Everything in this crate computes over `BigRational`. Floating point is
//! never used in any computation; decimal output is produced by exact long
//! division and is always paired with the exact fraction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRatError(pub String);

/// Parses `p/q`, an integer, or a plain decimal string, exactly.
///
/// `0.6248` becomes `781/1250` (the reduced form of 6248/10000), never a
/// float round-trip.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    let err = || ParseRatError(s.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let neg = int_part.starts_with('-');
        let digits = int_part.trim_start_matches(['-', '+']);
        let digits = if digits.is_empty() { "0" } else { digits };
        if !digits.bytes().all(|b| b.is_ascii_digit())
            || frac_part.is_empty()
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(err());
        }
        let i: BigInt = digits.parse().map_err(|_| err())?;
        let f: BigInt = frac_part.parse().map_err(|_| err())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mag = i * &scale + f;
        return Ok(Rat::new(if neg { -mag } else { mag }, scale));
    }
    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rat::from_integer(n))
}

/// Canonical `p/q` form (`p` alone for integers).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal approximation with `digits` significant digits by exact long
/// division. A trailing `~` marks a truncated (inexact) rendering.
pub fn approx_decimal(r: &Rat, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let ten = BigInt::from(10u32);
    let d = r.denom().clone();

    // Scale so the first long-division digit is the leading significant
    // digit; `lead` is its power-of-ten position.
    let mut dd = d.clone();
    let mut lead: i64 = 0;
    let mut cur = r.numer().abs();
    while cur < dd {
        cur *= &ten;
        lead -= 1;
    }
    while cur >= &dd * &ten {
        dd *= &ten;
        lead += 1;
    }

    let mut digit_chars = String::with_capacity(digits);
    for _ in 0..digits {
        let q = &cur / &dd;
        digit_chars.push(char::from(b'0' + u8::try_from(&q % &ten).unwrap_or(0)));
        cur = (cur - q * &dd) * &ten;
    }
    let exact = cur.is_zero();

    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if (-4..=15).contains(&lead) {
        if lead >= 0 {
            let int_len = lead as usize + 1;
            if digit_chars.len() <= int_len {
                out.push_str(&digit_chars);
                out.extend(std::iter::repeat('0').take(int_len - digit_chars.len()));
            } else {
                out.push_str(&digit_chars[..int_len]);
                let frac = digit_chars[int_len..].trim_end_matches('0');
                if !frac.is_empty() {
                    out.push('.');
                    out.push_str(frac);
                }
            }
        } else {
            out.push_str("0.");
            out.extend(std::iter::repeat('0').take((-lead - 1) as usize));
            out.push_str(digit_chars.trim_end_matches('0'));
        }
    } else {
        out.push_str(&digit_chars[..1]);
        let frac = digit_chars[1..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        out.push_str(&format!("e{}", lead));
    }
    if !exact {
        out.push('~');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_decimals() {
        assert_eq!(parse_rat("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rat("-7").unwrap(), rat(-7));
        assert_eq!(parse_rat("0.6248").unwrap(), ratio(6248, 10000));
        assert_eq!(parse_rat("0.8717").unwrap(), ratio(8717, 10000));
        assert_eq!(parse_rat("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rat(" 2/6 ").unwrap(), ratio(1, 3));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a").is_err());
        assert!(parse_rat("1.2.3").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rat(&ratio(6, 4)), "3/2");
        assert_eq!(format_rat(&rat(-3)), "-3");
    }

    #[test]
    fn decimal_rendering_is_exact_division() {
        assert_eq!(approx_decimal(&ratio(1, 4), 12), "0.25");
        assert_eq!(approx_decimal(&ratio(-1, 3), 5), "-0.33333~");
        assert_eq!(approx_decimal(&rat(120), 12), "120");
        assert_eq!(approx_decimal(&ratio(1, 7), 3), "0.142~");
        assert_eq!(approx_decimal(&ratio(6247798071, 10000000000), 10), "0.6247798071");
        assert_eq!(approx_decimal(&rat(1000000), 3), "1000000");
    }
}
