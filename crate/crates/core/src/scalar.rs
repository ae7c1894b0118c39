//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The base field: arbitrary-precision rationals in lowest terms.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `q` as `n` or `n/d`.
pub fn render(q: &Scalar) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `n` or `n/d` (optional leading sign).
pub fn parse(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Scalar::new(num, den))
}

pub(crate) fn is_one_abs(q: &Scalar) -> bool {
    q.abs().is_one()
}

/// `n!` as a scalar.
pub fn factorial(n: u32) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Scalar::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse("-6/4"), Some(ratio(-3, 2)));
        assert_eq!(render(&ratio(-3, 2)), "-3/2");
        assert_eq!(render(&int(7)), "7");
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }
}
