//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// All scalar arithmetic in this crate is exact rational. `BigRational`
/// keeps the fraction reduced with a positive denominator, which is the
/// canonical form every module relies on for equality tests.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_int(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Floor of a rational as a BigInt.
pub fn floor_int(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

/// Canonical "p/q" rendering; integers print without the "/q" part.
pub fn fmt_rat(x: &Rat) -> String {
    if is_int(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse "p", "-p", "p/q" with an optional sign on the numerator.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = n.parse().ok()?;
    let den: BigInt = d.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn common_denominator(xs: &[Rat]) -> BigInt {
    let mut l = BigInt::one();
    for x in xs {
        l = num_integer::lcm(l, x.denom().clone());
    }
    l.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-4", "1/2", "-7/3", "0"] {
            let x = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&x), s);
        }
        assert_eq!(fmt_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn common_denominator_is_lcm() {
        let xs = vec![frac(1, 2), frac(1, 3), rat(5)];
        assert_eq!(common_denominator(&xs), BigInt::from(6));
    }
}
