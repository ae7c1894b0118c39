//! Permutation filters by exhaustive search.

use crate::OracleError;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// `τ ∈ S_{2n}` (one-based values) with `τ(2i−1) < τ(2i)` and
/// `τ(1) < τ(3) < … < τ(2n−1)`.
pub fn enumerate_t2n(n: usize) -> Result<Vec<Vec<usize>>, OracleError> {
    if n > 4 {
        return Err(OracleError::SizeCap(format!("n = {n} > 4")));
    }
    Ok(permutations(2 * n)
        .into_iter()
        .map(|p| p.into_iter().map(|v| v + 1).collect::<Vec<_>>())
        .filter(|t| (0..n).all(|i| t[2 * i] < t[2 * i + 1]) && (1..n).all(|i| t[2 * i - 2] < t[2 * i]))
        .collect())
}

pub fn sign(p: &[usize]) -> i64 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(permutations(4).len(), 24);
        let sizes: Vec<usize> = (1..=4).map(|n| enumerate_t2n(n).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 3, 15, 105]);
        assert_eq!(enumerate_t2n(1).unwrap(), vec![vec![1, 2]]);
        assert!(enumerate_t2n(5).is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(sign(&[0, 1, 2]), 1);
        assert_eq!(sign(&[1, 0, 2]), -1);
        assert_eq!(sign(&[1, 2, 0]), 1);
    }
}
