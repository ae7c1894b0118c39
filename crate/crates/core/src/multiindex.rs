//! Multi-indices `α ∈ Z_+^n`.
//!
//! A multi-index names the derivative `∂^α = ∂_1^{α_1} … ∂_n^{α_n}` and the jet symbol
//! standing for it. Two orders are used: lexicographic (the well-order driving the
//! series recursion) and graded-lex (total degree first, used to enumerate truncations).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("multi-index arity mismatch: {left} vs {right}")]
pub struct ArityMismatch {
    pub left: usize,
    pub right: usize,
}

/// Multi-index of fixed arity. The derived `Ord` is lexicographic on the entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn zero(arity: usize) -> Self {
        Self(vec![0; arity])
    }

    /// The unit vector `e_j`.
    pub fn unit(arity: usize, j: usize) -> Self {
        let mut v = vec![0; arity];
        v[j] = 1;
        Self(v)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    /// `|α| = α_1 + … + α_n`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn check(&self, other: &Self) -> Result<(), ArityMismatch> {
        if self.arity() == other.arity() {
            Ok(())
        } else {
            Err(ArityMismatch {
                left: self.arity(),
                right: other.arity(),
            })
        }
    }

    pub fn lex_cmp(&self, other: &Self) -> Result<Ordering, ArityMismatch> {
        self.check(other)?;
        Ok(self.0.cmp(&other.0))
    }

    /// Total degree first, ties broken lexicographically.
    pub fn grlex_cmp(&self, other: &Self) -> Result<Ordering, ArityMismatch> {
        self.check(other)?;
        Ok(self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0)))
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArityMismatch> {
        self.check(other)?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// `self − other`, defined only when `other ≤ self` componentwise.
    pub fn sub_checked(&self, other: &Self) -> Result<Option<Self>, ArityMismatch> {
        self.check(other)?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self))
    }

    /// Componentwise `self ≤ other`.
    pub fn dominated_by(&self, other: &Self) -> Result<bool, ArityMismatch> {
        self.check(other)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    /// `α + e_j`.
    pub fn bump(&self, j: usize) -> Self {
        let mut v = self.0.clone();
        v[j] += 1;
        Self(v)
    }

    /// `α − e_j` if `α_j > 0`.
    pub fn lower(&self, j: usize) -> Option<Self> {
        let mut v = self.0.clone();
        v[j] = v[j].checked_sub(1)?;
        Some(Self(v))
    }

    /// `α! = α_1! ⋯ α_n!`.
    pub fn factorial(&self) -> BigUint {
        let mut acc = BigUint::one();
        for &e in &self.0 {
            for k in 2..=e {
                acc *= k;
            }
        }
        acc
    }

    /// All multi-indices of the given arity with `|α| = degree`, in descending lex order.
    pub fn of_degree(arity: usize, degree: u32) -> Vec<Self> {
        fn go(arity: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == arity {
                prefix.push(left);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                go(arity, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if arity == 0 {
            if degree == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        go(arity, degree, &mut Vec::with_capacity(arity), &mut out);
        out
    }

    /// All multi-indices with `|α| ≤ degree`, graded ascending.
    pub fn up_to_degree(arity: usize, degree: u32) -> Vec<Self> {
        (0..=degree)
            .flat_map(|d| {
                let mut v = Self::of_degree(arity, d);
                v.reverse();
                v
            })
            .collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

impl std::str::FromStr for MultiIndex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("multi-index must be parenthesised: {s:?}"))?;
        if inner.trim().is_empty() {
            return Ok(Self(Vec::new()));
        }
        inner
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| format!("{p:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn lex_examples() {
        assert_eq!(mi(&[0, 5]).lex_cmp(&mi(&[1, 0])), Ok(Ordering::Less));
        assert_eq!(mi(&[1, 1]).lex_cmp(&mi(&[1, 1])), Ok(Ordering::Equal));
        assert_eq!(mi(&[2, 0]).lex_cmp(&mi(&[1, 9])), Ok(Ordering::Greater));
        assert!(mi(&[1]).lex_cmp(&mi(&[1, 0])).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(mi(&[1, 2]).add(&mi(&[0, 3])).unwrap(), mi(&[1, 5]));
        assert_eq!(mi(&[2, 0]).sub_checked(&mi(&[1, 1])).unwrap(), None);
        assert_eq!(mi(&[1, 1]).sub_checked(&mi(&[1, 1])).unwrap(), Some(mi(&[0, 0])));
        assert!(mi(&[1]).add(&mi(&[1, 1])).is_err());
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(mi(&[2, 3]).factorial(), BigUint::from(12u32));
        assert_eq!(mi(&[0, 0]).factorial(), BigUint::from(1u32));
        assert_eq!(mi(&[1, 1, 1]).factorial(), BigUint::from(1u32));
    }

    #[test]
    fn text_form() {
        assert_eq!(mi(&[1, 0, 2]).to_string(), "(1,0,2)");
        assert_eq!("(1, 0,2)".parse::<MultiIndex>().unwrap(), mi(&[1, 0, 2]));
        assert!("1,0".parse::<MultiIndex>().is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(MultiIndex::of_degree(2, 3).len(), 4);
        assert_eq!(MultiIndex::up_to_degree(2, 3).len(), 10);
        assert_eq!(MultiIndex::up_to_degree(3, 2).len(), 10);
        let v = MultiIndex::up_to_degree(2, 2);
        for w in v.windows(2) {
            assert_eq!(w[0].grlex_cmp(&w[1]).unwrap(), Ordering::Less);
        }
    }

    fn triple() -> impl Strategy<Value = (MultiIndex, MultiIndex, MultiIndex)> {
        (1usize..4).prop_flat_map(|n| {
            let v = || prop::collection::vec(0u32..4, n).prop_map(MultiIndex::new);
            (v(), v(), v())
        })
    }

    proptest! {
        #[test]
        fn lex_is_total_order((a, b, c) in triple()) {
            let ab = a.lex_cmp(&b).unwrap();
            prop_assert_eq!(ab.reverse(), b.lex_cmp(&a).unwrap());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Less && b.lex_cmp(&c).unwrap() == Ordering::Less {
                prop_assert_eq!(a.lex_cmp(&c).unwrap(), Ordering::Less);
            }
        }

        #[test]
        fn lex_translation_invariant((a, b, c) in triple()) {
            let ab = a.lex_cmp(&b).unwrap();
            let shifted = a.add(&c).unwrap().lex_cmp(&b.add(&c).unwrap()).unwrap();
            prop_assert_eq!(ab, shifted);
        }

        #[test]
        fn sub_undoes_add((a, b, _c) in triple()) {
            prop_assert_eq!(a.add(&b).unwrap().sub_checked(&b).unwrap(), Some(a));
        }

        #[test]
        fn componentwise_implies_lex((a, b, _c) in triple()) {
            if a.dominated_by(&b).unwrap() {
                prop_assert_ne!(a.lex_cmp(&b).unwrap(), Ordering::Greater);
            }
        }

        #[test]
        fn finite_sets_have_lex_least(v in prop::collection::vec(prop::collection::vec(0u32..5, 3), 1..12)) {
            let set: Vec<MultiIndex> = v.into_iter().map(MultiIndex::new).collect();
            let least = set.iter().min_by(|a, b| a.lex_cmp(b).unwrap()).unwrap();
            for x in &set {
                prop_assert_ne!(x.lex_cmp(least).unwrap(), Ordering::Less);
            }
        }
    }
}
