//! Arbitrary-precision rational numbers and small helpers on top of them.
//!
//! `Rational` is `num_rational::BigRational`, which already maintains the
//! invariants we need (always reduced, denominator positive).

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse "p/q" or a plain integer. Returns `None` on malformed input or q = 0.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => {
            let p: BigInt = text.parse().ok()?;
            Some(BigRational::from_integer(p))
        }
    }
}

/// Canonical rendering: "p" when the denominator is 1, otherwise "p/q".
pub fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root in Q, if the argument is a square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = perfect_sqrt(q.numer())?;
    let d = perfect_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        for s in ["0", "5", "-7", "3/4", "-22/7"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(render_rational(&q), s);
        }
        assert_eq!(render_rational(&parse_rational("4/8").unwrap()), "1/2");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn sqrt_exact() {
        assert_eq!(rational_sqrt(&rat(4, 9)), Some(rat(2, 3)));
        assert_eq!(rational_sqrt(&rat_int(2)), None);
        assert_eq!(rational_sqrt(&rat(-4, 9)), None);
        assert_eq!(rational_sqrt(&rat_int(0)), Some(rat_int(0)));
    }

}
