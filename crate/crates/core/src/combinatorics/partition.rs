use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, WgError};

/// A weakly decreasing sequence of positive integers.
///
/// Indexes cycletypes of permutations, cosettypes of matchings and the
/// irreducible representations of the symmetric group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing and strictly positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(WgError::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(WgError::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The partition `(1, 1, ..., 1)` of `n`.
    pub fn ones(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|λ|`, the sum of the parts.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `ℓ(λ)`, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `r(λ) = |λ| - ℓ(λ)`.
    pub fn rank(&self) -> usize {
        self.weight() - self.len()
    }

    pub fn is_all_ones(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// `2λ = (2λ₁, 2λ₂, ...)`.
    pub fn doubled(&self) -> Partition {
        Partition {
            parts: self.parts.iter().map(|p| 2 * p).collect(),
        }
    }

    /// Part multiplicities `j ↦ v_j`.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `z_λ = ∏_j j^{v_j} v_j!`, the order of the centralizer of a permutation of cycletype λ.
    pub fn z(&self) -> BigUint {
        let mut z = BigUint::one();
        for (part, mult) in self.multiplicities() {
            z *= BigUint::from(part).pow(mult as u32);
            z *= factorial(mult);
        }
        z
    }

    /// `z_λ` as a machine integer; panics on overflow, which cannot happen
    /// for the partition sizes this crate enumerates.
    pub fn z_u64(&self) -> u64 {
        u64::try_from(self.z()).expect("z_λ overflows u64")
    }

    /// `|C_λ| = |λ|! / z_λ`.
    pub fn class_size(&self) -> BigUint {
        factorial(self.weight()) / self.z()
    }

    /// `|K_λ| = |H_n| · |C_λ| · 2^{r(λ)}` with `|H_n| = 2ⁿ n!`.
    pub fn double_coset_size(&self) -> BigUint {
        hyperoctahedral_order(self.weight()) * self.class_size() * (BigUint::one() << self.rank())
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `|H_n| = 2ⁿ n!`.
pub fn hyperoctahedral_order(n: usize) -> BigUint {
    factorial(n) << n
}

/// `(2n-1)!!`, the number of perfect matchings on `2n` points.
pub fn double_factorial_odd(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(2 * k - 1))
}

/// All partitions of `n` with every part at least `min_part`, in
/// reverse-lexicographic order: `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn partitions(n: usize, min_part: usize) -> Vec<Partition> {
    let min_part = min_part.max(1);
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, min_part, &mut current, &mut out);
    out
}

fn fill(
    remaining: usize,
    max_part: usize,
    min_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for part in (min_part..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, min_part, current, out);
        current.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = WgError;

    /// Parses comma-joined parts such as `"2,1"`; the empty string is the
    /// empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| WgError::Parse(format!("partition part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Independent oracle: every weakly decreasing sequence obtained by
    /// filtering all compositions of `n`.
    fn brute_partitions(n: usize, min_part: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if n == 0 {
            return vec![vec![]];
        }
        // compositions via bitmasks of cut positions
        for mask in 0u32..(1 << (n - 1)) {
            let mut parts = Vec::new();
            let mut run = 1;
            for i in 0..n - 1 {
                if mask & (1 << i) != 0 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            if parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&x| x >= min_part) {
                out.push(parts);
            }
        }
        out
    }

    #[test]
    fn empty_partition_of_zero() {
        assert_eq!(partitions(0, 1), vec![Partition::empty()]);
    }

    #[test]
    fn partitions_match_brute_force() {
        for n in 0..=9 {
            for min_part in 1..=3 {
                let mut got: Vec<Vec<usize>> = partitions(n, min_part)
                    .into_iter()
                    .map(|p| p.parts)
                    .collect();
                let mut want = brute_partitions(n, min_part);
                got.sort();
                want.sort();
                assert_eq!(got, want, "n={n} min_part={min_part}");
            }
        }
        assert_eq!(partitions(4, 1).len(), 5);
    }

    #[test]
    fn reverse_lexicographic_order() {
        assert_eq!(
            partitions(6, 2),
            vec![p(&[6]), p(&[4, 2]), p(&[3, 3]), p(&[2, 2, 2])]
        );
        assert_eq!(
            partitions(4, 1),
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
    }

    #[test]
    fn rejects_invalid() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!("2,x".parse::<Partition>().is_err());
    }

    #[test]
    fn parse_and_display() {
        let q: Partition = "3,2,2".parse().unwrap();
        assert_eq!(q, p(&[3, 2, 2]));
        assert_eq!(q.to_string(), "3,2,2");
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
    }

    #[test]
    fn class_and_coset_sizes() {
        assert_eq!(p(&[2]).z(), BigUint::from(2u32));
        assert_eq!(p(&[2, 1]).class_size(), BigUint::from(3u32));
        assert_eq!(p(&[1]).double_coset_size(), BigUint::from(2u32));
        assert_eq!(p(&[2, 2, 2]).z(), BigUint::from(48u32));
        for n in 1..=6 {
            let total: BigUint = partitions(n, 1).iter().map(|l| l.class_size()).sum();
            assert_eq!(total, factorial(n));
        }
        for n in 1..=5 {
            let total: BigUint = partitions(n, 1).iter().map(|l| l.double_coset_size()).sum();
            assert_eq!(total, factorial(2 * n));
        }
    }
}
