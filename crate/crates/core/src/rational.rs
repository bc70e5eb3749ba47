//! Exact rationals and their text grammar (`p` or `p/q`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Q::new(p, q))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// Canonical form: reduced, denominator omitted when it is one.
pub fn fmt_q(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal rendering rounded half away from zero to `digits` places.
/// Display only.
pub fn to_fixed(q: &Q, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = q.abs() * Q::from_integer(scale.clone());
    let twice = scaled.numer() * BigInt::from(2) + scaled.denom();
    let (rounded, _) = twice.div_rem(&(scaled.denom() * BigInt::from(2)));
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if q.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{whole}");
    }
    let frac = frac.to_string();
    let pad = "0".repeat(digits as usize - frac.len());
    let mut out = format!("{sign}{whole}.{pad}{frac}");
    while out.ends_with('0') {
        out.pop();
    }
    if out.ends_with('.') {
        out.pop();
    }
    out
}

pub fn min_q<'a>(values: impl IntoIterator<Item = &'a Q>) -> Option<Q> {
    values.into_iter().min().cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!(parse_q("3"), Some(int(3)));
        assert_eq!(parse_q("-6/4"), Some(ratio(-3, 2)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
        assert_eq!(fmt_q(&ratio(-6, 4)), "-3/2");
        assert_eq!(fmt_q(&int(0)), "0");
    }

    #[test]
    fn fixed_decimals() {
        assert_eq!(to_fixed(&ratio(1, 3), 4), "0.3333");
        assert_eq!(to_fixed(&ratio(2, 3), 4), "0.6667");
        assert_eq!(to_fixed(&ratio(-1, 2), 0), "-1");
        assert_eq!(to_fixed(&int(-12), 4), "-12");
        assert_eq!(to_fixed(&ratio(-1, 100000), 4), "0");
        assert_eq!(to_fixed(&ratio(9, 5), 4), "1.8");
    }
}
