//! Exact rational scalars and small helpers shared across the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar. Always stored reduced with a
/// positive denominator.
pub type Rational = BigRational;

/// `n/d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Fractional part in `[0, 1)`.
pub fn frac_mod_1(x: &Rational) -> Rational {
    x - x.floor()
}

/// Least common multiple of the denominators; at least 1.
pub fn lcm_denominator<'a, I>(xs: I) -> BigInt
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut l = BigInt::one();
    for x in xs {
        l = num_integer::lcm(l, x.denom().clone());
    }
    l
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Smallest integer `>= x`.
pub fn ceil_to_i64(x: &Rational) -> i64 {
    x.ceil().to_integer().to_i64().expect("ceil fits in i64")
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-5/8", "22/7"] {
            let x = parse_rational(s).unwrap();
            assert_eq!(format_rational(&x), s);
        }
        // unreduced and padded input normalizes
        assert_eq!(format_rational(&parse_rational(" 2/4 ").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn frac_wraps_negatives() {
        assert_eq!(frac_mod_1(&rat(-1, 4)), rat(3, 4));
        assert_eq!(frac_mod_1(&rat(9, 4)), rat(1, 4));
        assert_eq!(frac_mod_1(&int(-2)), int(0));
    }

    #[test]
    fn lcm_of_denominators() {
        let xs = [rat(1, 2), rat(1, 3), int(5)];
        assert_eq!(lcm_denominator(xs.iter()), BigInt::from(6));
    }
}
