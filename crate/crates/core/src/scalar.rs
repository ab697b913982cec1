//! Exact scalars. Everything in this crate is computed over ℚ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn to_string(v: &Scalar) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.125"`.
pub fn parse(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Scalar::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let frac_num: BigInt = frac.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let magnitude = Scalar::new(whole * &den + frac_num, den);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let v: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Scalar::from_integer(v))
}

/// JSON value for a scalar: a plain number when it is a small integer,
/// otherwise the `"p/q"` string.
pub fn to_json(v: &Scalar) -> serde_json::Value {
    if v.is_integer() {
        if let Ok(i) = i64::try_from(v.numer()) {
            return serde_json::Value::from(i);
        }
    }
    serde_json::Value::from(to_string(v))
}

pub fn from_json(v: &serde_json::Value) -> Result<Scalar> {
    match v {
        serde_json::Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(int(i)),
            None => parse(&n.to_string()),
        },
        serde_json::Value::String(s) => parse(s),
        other => Err(Error::Parse(format!("expected a number or rational string, got {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse("3").unwrap(), int(3));
        assert_eq!(parse("-6/4").unwrap(), Scalar::new((-3).into(), 2.into()));
        assert_eq!(parse("-0.125").unwrap(), Scalar::new((-1).into(), 8.into()));
        assert_eq!(parse("0.5").unwrap(), Scalar::new(1.into(), 2.into()));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1.").is_err());
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(to_string(&parse("4/6").unwrap()), "2/3");
        assert_eq!(to_string(&int(-5)), "-5");
        assert_eq!(to_json(&int(2)), serde_json::json!(2));
        assert_eq!(to_json(&parse("1/2").unwrap()), serde_json::json!("1/2"));
    }
}
