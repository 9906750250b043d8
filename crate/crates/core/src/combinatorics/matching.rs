use std::fmt;

use serde::{Serialize, Serializer};

use super::partition::Partition;
use super::permutation::{Domain, Label, Permutation};
use crate::error::{Result, WgError};

/// Largest `n` for which [`hyperoctahedral_elements`] will materialize `H_n`.
pub const DEFAULT_HYPEROCTAHEDRAL_BOUND: usize = 6;

/// A perfect matching of `[n] ∪ [n̂]`, stored as a partner array over the
/// dense indices of [`Domain::Hatted`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    n: usize,
    partner: Vec<usize>,
}

impl Matching {
    /// `𝔱 = {{1,1̂}, ..., {n,n̂}}`.
    pub fn trivial(n: usize) -> Self {
        Matching {
            n,
            partner: (0..2 * n)
                .map(|i| if i < n { i + n } else { i - n })
                .collect(),
        }
    }

    pub fn from_blocks(n: usize, blocks: &[(Label, Label)]) -> Result<Self> {
        let domain = Domain::Hatted(n);
        if blocks.len() != n {
            return Err(WgError::InvalidMatching(format!(
                "{} blocks for n = {n}",
                blocks.len()
            )));
        }
        let mut partner = vec![usize::MAX; 2 * n];
        for &(a, b) in blocks {
            let (i, j) = match (domain.index_of(a), domain.index_of(b)) {
                (Some(i), Some(j)) if i != j => (i, j),
                _ => {
                    return Err(WgError::InvalidMatching(format!(
                        "block {{{a},{b}}} is not a pair of distinct labels of {domain}"
                    )))
                }
            };
            if partner[i] != usize::MAX || partner[j] != usize::MAX {
                return Err(WgError::InvalidMatching("blocks overlap".into()));
            }
            partner[i] = j;
            partner[j] = i;
        }
        Ok(Matching { n, partner })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner(&self) -> &[usize] {
        &self.partner
    }

    /// Blocks as label pairs, each ordered by dense index, sorted.
    pub fn blocks(&self) -> Vec<(Label, Label)> {
        let domain = Domain::Hatted(self.n);
        (0..2 * self.n)
            .filter(|&i| i < self.partner[i])
            .map(|i| (domain.label_of(i), domain.label_of(self.partner[i])))
            .collect()
    }

    /// Replaces each block `{a, b}` by `{σ(a), σ(b)}`.
    pub fn act(&self, sigma: &Permutation) -> Result<Matching> {
        if sigma.domain() != Domain::Hatted(self.n) {
            return Err(WgError::DomainMismatch {
                left: sigma.domain().to_string(),
                right: Domain::Hatted(self.n).to_string(),
            });
        }
        let s = sigma.images();
        let mut partner = vec![0; 2 * self.n];
        for (i, &j) in self.partner.iter().enumerate() {
            partner[s[i]] = s[j];
        }
        Ok(Matching { n: self.n, partner })
    }

    /// The partition of `n` whose parts are half the cycle lengths of the
    /// union graph of `self` and `other`.
    pub fn coset_type(&self, other: &Matching) -> Result<Partition> {
        if self.n != other.n {
            return Err(WgError::InvalidMatching(format!(
                "matchings of different sizes {} and {}",
                self.n, other.n
            )));
        }
        Ok(coset_type_of(&self.partner, &other.partner))
    }

    /// The fixed-point-free involution whose cycles are the blocks.
    pub fn as_involution(&self) -> Permutation {
        Permutation::from_images_unchecked(Domain::Hatted(self.n), self.partner.clone())
    }
}

/// Number of components in the union graph of two partner arrays.
pub(crate) fn union_cycle_count(a: &[usize], b: &[usize]) -> usize {
    let mut seen = vec![false; a.len()];
    let mut count = 0;
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        loop {
            seen[x] = true;
            let y = a[x];
            seen[y] = true;
            x = b[y];
            if x == start {
                break;
            }
        }
    }
    count
}

pub(crate) fn coset_type_of(a: &[usize], b: &[usize]) -> Partition {
    let mut seen = vec![false; a.len()];
    let mut parts = Vec::new();
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut half = 0;
        let mut x = start;
        loop {
            seen[x] = true;
            let y = a[x];
            seen[y] = true;
            half += 1;
            x = b[y];
            if x == start {
                break;
            }
        }
        parts.push(half);
    }
    Partition::from_unsorted(parts)
}

/// All `(2n-1)!!` perfect matchings of `[n] ∪ [n̂]`, in the order obtained by
/// pairing the least free index with each larger free index in turn.
pub fn matchings(n: usize) -> Vec<Matching> {
    let mut out = Vec::new();
    let mut partner = vec![usize::MAX; 2 * n];
    build_matchings(n, &mut partner, &mut out);
    out
}

fn build_matchings(n: usize, partner: &mut Vec<usize>, out: &mut Vec<Matching>) {
    let Some(first) = partner.iter().position(|&p| p == usize::MAX) else {
        out.push(Matching {
            n,
            partner: partner.clone(),
        });
        return;
    };
    for second in first + 1..2 * n {
        if partner[second] != usize::MAX {
            continue;
        }
        partner[first] = second;
        partner[second] = first;
        build_matchings(n, partner, out);
        partner[first] = usize::MAX;
        partner[second] = usize::MAX;
    }
}

/// A permutation of `[n] ∪ [n̂]` producing a matching of cosettype `beta`:
/// the standard permutation of cycletype `beta` acting on the plain labels.
pub fn coset_representative(beta: &Partition) -> Permutation {
    let n = beta.weight();
    Permutation::standard(beta)
        .embed(Domain::Hatted(n))
        .expect("hatted domain always fits")
}

/// The hyperoctahedral group `H_n`, the stabilizer of `𝔱` in `S_{2n}`.
pub fn hyperoctahedral_elements(n: usize, bound: usize) -> Result<Vec<Permutation>> {
    if n > bound {
        return Err(WgError::BoundExceeded {
            what: "hyperoctahedral n",
            value: n as i64,
            max: bound as i64,
        });
    }
    Ok(hyperoctahedral_images(n)
        .into_iter()
        .map(|images| Permutation::from_images_unchecked(Domain::Hatted(n), images))
        .collect())
}

/// Image arrays of every element of `H_n`: a permutation of the blocks of
/// `𝔱` followed by an optional swap inside each block.
pub(crate) fn hyperoctahedral_images(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut block_perms = Vec::new();
    heap_permutations(&mut perm, n, &mut block_perms);
    block_perms.sort();
    for bp in &block_perms {
        for flips in 0u32..(1 << n) {
            let mut images = vec![0; 2 * n];
            for a in 0..n {
                let (lo, hi) = (bp[a], bp[a] + n);
                if flips & (1 << a) == 0 {
                    images[a] = lo;
                    images[a + n] = hi;
                } else {
                    images[a] = hi;
                    images[a + n] = lo;
                }
            }
            out.push(images);
        }
    }
    out
}

fn heap_permutations(a: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(a, k - 1, out);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|(a, b)| format!("{{{a},{b}}}"))
            .collect();
        write!(f, "{{{}}}", blocks.join(","))
    }
}

impl Serialize for Matching {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let blocks: Vec<[String; 2]> = self
            .blocks()
            .iter()
            .map(|(a, b)| [a.machine(), b.machine()])
            .collect();
        blocks.serialize(serializer)
    }
}
