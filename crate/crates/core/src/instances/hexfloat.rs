//! C99-style hexadecimal floating point (`%a`), used for bit-exact CSV.

use crate::error::{Error, Result};

const MANT_BITS: u32 = 52;
const MANT_MASK: u64 = (1 << MANT_BITS) - 1;

pub fn format_hex_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    let sign = if x.is_sign_negative() { "-" } else { "" };
    if x.is_infinite() {
        return format!("{sign}inf");
    }
    let bits = x.to_bits();
    let exp = ((bits >> MANT_BITS) & 0x7ff) as i32;
    let mant = bits & MANT_MASK;
    if exp == 0 && mant == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, e) = if exp == 0 {
        (0, -1022)
    } else {
        (1, exp - 1023)
    };
    let digits = format!("{mant:013x}");
    let digits = digits.trim_end_matches('0');
    if digits.is_empty() {
        format!("{sign}0x{lead}p{e:+}")
    } else {
        format!("{sign}0x{lead}.{digits}p{e:+}")
    }
}

/// Parse a hex float as written by [`format_hex_float`]; plain decimal
/// literals are accepted too.
pub fn parse_hex_float(s: &str) -> Result<f64> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let hex = match body.strip_prefix("0x").or_else(|| body.strip_prefix("0X")) {
        Some(h) => h,
        None => {
            return s
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("`{s}`: {e}")))
        }
    };
    let bad = || Error::Parse(format!("malformed hex float `{s}`"));
    let (mantissa, exponent) = hex.split_once(['p', 'P']).ok_or_else(bad)?;
    let exponent: i32 = exponent.parse().map_err(|_| bad())?;
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let mut value: u64 = 0;
    let mut shift = exponent;
    for (i, ch) in int_part.chars().chain(frac_part.chars()).enumerate() {
        let d = ch.to_digit(16).ok_or_else(bad)? as u64;
        if value >> 56 != 0 {
            return Err(bad());
        }
        value = (value << 4) | d;
        if i >= int_part.len() {
            shift -= 4;
        }
    }
    let x = scale_pow2(value as f64, shift);
    Ok(if neg { -x } else { x })
}

fn scale_pow2(mut x: f64, mut e: i32) -> f64 {
    let big = f64::from_bits(((1023 + 1000) as u64) << MANT_BITS);
    let small = f64::from_bits(((1023 - 1000) as u64) << MANT_BITS);
    while e > 1000 {
        x *= big;
        e -= 1000;
    }
    while e < -1000 {
        x *= small;
        e += 1000;
    }
    x * f64::from_bits(((1023 + e) as u64) << MANT_BITS)
}
