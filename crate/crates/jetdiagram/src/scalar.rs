//! Exact scalars: arbitrary-precision rationals and their text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The coefficient field of the whole crate.
pub type Q = BigRational;

pub fn q_zero() -> Q {
    Q::zero()
}

pub fn q_one() -> Q {
    Q::one()
}

pub fn q_from(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_ratio(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical text form: `p/q` in lowest terms, or just `p` for integers.
pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p`, or `p/q`. Decimal notation is deliberately rejected:
/// every scalar in the system is an exact rational.
pub fn q_parse(text: &str) -> Option<Q> {
    let text = text.trim();
    if text.is_empty() || text.contains('.') {
        return None;
    }
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den.is_zero() {
                None
            } else {
                Some(Q::new(num, den))
            }
        }
        None => text.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Formats a rational for display inside polynomials, wrapping negative
/// values and fractions the way the session grammar can read them back.
pub fn q_is_negative(x: &Q) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "7", "-3", "22/7", "-22/7"] {
            let q = q_parse(s).unwrap();
            assert_eq!(q_to_string(&q), s);
        }
        assert_eq!(q_parse("4/6").unwrap(), q_ratio(2, 3));
        assert!(q_parse("1.5").is_none());
        assert!(q_parse("1/0").is_none());
        assert!(q_parse("").is_none());
    }
}
