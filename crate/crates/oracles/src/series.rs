//! Closed forms and direct substitution checks for power series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use pf_core::polyring::{RationalPolynomial, Variable};
use pf_core::series_solver::SeriesProblem;

use crate::mpoly::MPoly;
use crate::OracleError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classical {
    Exp,
    /// `sqrt(c + s)` around `s = 0`; `c` must be the square of a rational.
    SqrtAt(BigRational),
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn exact_sqrt(c: &BigRational) -> Option<BigRational> {
    if c.is_negative() {
        return None;
    }
    let (n, d) = (c.numer().sqrt(), c.denom().sqrt());
    (&n * &n == *c.numer() && &d * &d == *c.denom()).then(|| BigRational::new(n, d))
}

/// `binomial(1/2, k)` by the product formula.
pub fn half_binomial(k: u32) -> BigRational {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    (0..k).fold(BigRational::one(), |acc, i| {
        acc * (&half - q(i as i64)) / q(i as i64 + 1)
    })
}

/// The `k`-th Taylor coefficient.
pub fn classical_series(name: &Classical, k: u32) -> Result<BigRational, OracleError> {
    if k > 16 {
        return Err(OracleError::DegreeCap(format!("k = {k} > 16")));
    }
    match name {
        Classical::Exp => {
            let mut a = BigRational::one();
            for i in 1..=k {
                a /= q(i as i64);
            }
            Ok(a)
        }
        Classical::SqrtAt(c) => {
            let r = exact_sqrt(c)
                .filter(|r| !r.is_zero())
                .ok_or_else(|| OracleError::Unsupported(format!("sqrt at {c}")))?;
            let mut scale = r;
            for _ in 0..k {
                scale /= c;
            }
            Ok(half_binomial(k) * scale)
        }
    }
}

/// Substitutes `x = s + C`, `u_α = ∂^α T` into `f` in full (no truncation) and reports
/// whether every term of degree `≤ order − max|α|` vanishes. `shifted` is `T` in `s`.
pub fn naive_residual(problem: &SeriesProblem, shifted: &RationalPolynomial, order: u32) -> Result<bool, OracleError> {
    let n = problem.coords();
    let t = MPoly::from_production(shifted, n)?;
    let max = problem.alphas().iter().map(|a| a.total()).max().unwrap_or(0);
    let certified = order
        .checked_sub(max)
        .ok_or_else(|| OracleError::Unsupported("order below jet order".into()))?;
    let mut acc = MPoly::zero(n);
    for (m, c) in problem.f().terms() {
        let mut term = MPoly::constant(n, c.clone());
        for (v, k) in m.factors() {
            let image = match v {
                Variable::Coord(j) => MPoly::var(n, *j).add(&MPoly::constant(n, problem.center()[*j].clone())),
                Variable::Jet(a) => t.partial_multi(a.entries()),
            };
            term = term.mul(&image.pow(*k));
        }
        acc = acc.add(&term);
    }
    Ok(acc.low_part(certified).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(
            classical_series(&Classical::Exp, 4).unwrap(),
            BigRational::new(1.into(), 24.into())
        );
        let s = Classical::SqrtAt(q(1));
        assert_eq!(
            classical_series(&s, 2).unwrap(),
            BigRational::new((-1).into(), 8.into())
        );
        assert_eq!(
            classical_series(&s, 4).unwrap(),
            BigRational::new((-5).into(), 128.into())
        );
        // sqrt(4 + s) = 2 + s/4 − s²/64 + …
        let s4 = Classical::SqrtAt(q(4));
        assert_eq!(classical_series(&s4, 1).unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(
            classical_series(&s4, 2).unwrap(),
            BigRational::new((-1).into(), 64.into())
        );
        assert!(classical_series(&Classical::SqrtAt(q(2)), 1).is_err());
        assert!(classical_series(&Classical::Exp, 17).is_err());
    }
}
