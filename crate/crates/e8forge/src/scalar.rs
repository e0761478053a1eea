//! Exact rational scalars and their text form.
//!
//! Every quantity in this crate is an exact rational; no floating point is
//! used anywhere. The text form is `num/den` in lowest terms with a positive
//! denominator, the `/den` part omitted when the denominator is 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Exact rational scalar, always stored reduced with positive denominator.
pub type Scalar = BigRational;

/// Shorthand constructor from machine integers.
pub fn rat(num: i64, den: i64) -> Scalar {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer scalar.
pub fn int(num: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(num))
}

/// Parses `num` or `num/den` (optionally signed) into a scalar.
pub fn parse_scalar(text: &str) -> Result<Scalar, Error> {
    let text = text.trim();
    let bad = || Error::BadScalar(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Formats a scalar as `num` or `num/den` in lowest terms.
pub fn format_scalar(q: &Scalar) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Sign as a small integer scalar, used when folding blade permutation signs
/// into coefficients.
pub fn sign_scalar(sign: i8) -> Scalar {
    int(sign as i64)
}

pub fn is_zero(q: &Scalar) -> bool {
    q.is_zero()
}

pub fn abs(q: &Scalar) -> Scalar {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "1", "-1", "3/5", "-7/2", "10"] {
            let q = parse_scalar(s).unwrap();
            assert_eq!(format_scalar(&q), s);
        }
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(format_scalar(&parse_scalar("4/6").unwrap()), "2/3");
        assert_eq!(format_scalar(&parse_scalar("3/-6").unwrap()), "-1/2");
        assert_eq!(format_scalar(&parse_scalar(" 2 / 4 ").unwrap()), "1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "x", "1/0", "1/2/3", "2.5"] {
            assert!(parse_scalar(s).is_err(), "accepted {s:?}");
        }
    }
}
