//! Counting families whose generating functions are `1/N` expansions of
//! Weingarten functions: monotone, proper, matching-monotone,
//! palindromic-monotone and orthogonal proper factorizations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{BigRational, LaurentSeries};
use crate::characters::{character_table, dimension, zonal_table};
use crate::combinatorics::{
    coset_representative, factorial, hyperoctahedral_order, partitions, Matching, Partition,
    Permutation,
};
use crate::error::{Result, WgError};

pub const MONOTONE_BOUND: usize = 6;
pub const MONOTONE_KMAX: usize = 12;
pub const PROPER_BOUND: usize = 4;
pub const PROPER_DMAX: usize = 12;
pub const MATCHING_BOUND: usize = 4;
pub const MATCHING_KMAX: usize = 10;
pub const PALINDROMIC_BOUND: usize = 4;
pub const PALINDROMIC_KMAX: usize = 10;
pub const ORTHOGONAL_PROPER_BOUND: usize = 3;
pub const ORTHOGONAL_PROPER_KMAX: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Monotone,
    Proper,
    MatchingMonotone,
    PalindromicMonotone,
    OrthogonalProper,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Monotone => "monotone",
            Family::Proper => "proper",
            Family::MatchingMonotone => "matching-monotone",
            Family::PalindromicMonotone => "palindromic-monotone",
            Family::OrthogonalProper => "orthogonal-proper",
        })
    }
}

impl FromStr for Family {
    type Err = WgError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monotone" => Ok(Family::Monotone),
            "proper" => Ok(Family::Proper),
            "matching-monotone" => Ok(Family::MatchingMonotone),
            "palindromic-monotone" => Ok(Family::PalindromicMonotone),
            "orthogonal-proper" => Ok(Family::OrthogonalProper),
            _ => Err(WgError::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// Total orders on `[n] ∪ [n̂]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LabelOrder {
    /// `1 < 2 < ... < n < 1̂ < ... < n̂`
    UnhattedFirst,
    /// `1 < 1̂ < 2 < 2̂ < ...`
    Interleaved,
    /// `1̂ < 1 < 2̂ < 2 < ...`
    HattedInterleaved,
    /// `1̂ < ... < n̂ < 1 < ... < n`
    HattedFirst,
    /// `1 < ... < n < n̂ < ... < 1̂`
    UnhattedThenReversedHats,
}

impl LabelOrder {
    pub const ALL: [LabelOrder; 5] = [
        LabelOrder::UnhattedFirst,
        LabelOrder::Interleaved,
        LabelOrder::HattedInterleaved,
        LabelOrder::HattedFirst,
        LabelOrder::UnhattedThenReversedHats,
    ];

    /// Position of dense index `i` of `Domain::Hatted(n)` in this order.
    pub fn rank(self, n: usize, i: usize) -> usize {
        let (a, hatted) = if i < n { (i, false) } else { (i - n, true) };
        match self {
            LabelOrder::UnhattedFirst => i,
            LabelOrder::Interleaved => 2 * a + usize::from(hatted),
            LabelOrder::HattedInterleaved => 2 * a + usize::from(!hatted),
            LabelOrder::HattedFirst => {
                if hatted {
                    a
                } else {
                    n + a
                }
            }
            LabelOrder::UnhattedThenReversedHats => {
                if hatted {
                    2 * n - 1 - a
                } else {
                    a
                }
            }
        }
    }

    fn name(self) -> &'static str {
        match self {
            LabelOrder::UnhattedFirst => "unhatted-first",
            LabelOrder::Interleaved => "interleaved",
            LabelOrder::HattedInterleaved => "hatted-interleaved",
            LabelOrder::HattedFirst => "hatted-first",
            LabelOrder::UnhattedThenReversedHats => "unhatted-then-reversed-hats",
        }
    }
}

/// How `t > s` and `t_i ≥ t_{i-1}` are read for palindromic-monotone
/// factorizations: a total order on `[n] ∪ [n̂]`, and whether the larger
/// label `t` of each transposition is restricted to the unhatted labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrderConvention {
    pub order: LabelOrder,
    pub plain_targets: bool,
}

impl OrderConvention {
    /// Unrestricted conventions first, then the plain-target ones.
    pub const ALL: [OrderConvention; 10] = {
        let mut all = [OrderConvention {
            order: LabelOrder::UnhattedFirst,
            plain_targets: false,
        }; 10];
        let mut i = 0;
        while i < 10 {
            all[i] = OrderConvention {
                order: LabelOrder::ALL[i % 5],
                plain_targets: i >= 5,
            };
            i += 1;
        }
        all
    };

    pub fn rank(self, n: usize, i: usize) -> usize {
        self.order.rank(n, i)
    }
}

impl fmt::Display for OrderConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.order.name())?;
        if self.plain_targets {
            f.write_str("/plain-t")?;
        }
        Ok(())
    }
}

impl FromStr for OrderConvention {
    type Err = WgError;
    fn from_str(s: &str) -> Result<Self> {
        OrderConvention::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| WgError::Parse(format!("unknown order convention {s:?}")))
    }
}

impl Serialize for OrderConvention {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountEntry {
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub family: Family,
    pub partition: Partition,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_convention: Option<OrderConvention>,
    pub entries: Vec<CountEntry>,
}

impl CountTable {
    fn by_length(family: Family, partition: &Partition, counts: &[u64]) -> Self {
        CountTable {
            family,
            partition: partition.clone(),
            order_convention: None,
            entries: counts
                .iter()
                .enumerate()
                .map(|(k, &count)| CountEntry { k, d: None, count })
                .collect(),
        }
    }

    /// The count of length `k` (single-index families).
    pub fn get(&self, k: usize) -> Option<u64> {
        self.entries
            .iter()
            .find(|e| e.k == k && e.d.is_none())
            .map(|e| e.count)
    }

    pub fn get_kd(&self, k: usize, d: usize) -> Option<u64> {
        self.entries
            .iter()
            .find(|e| e.k == k && e.d == Some(d))
            .map(|e| e.count)
    }

    /// Counts by length, in order.
    pub fn counts(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.count).collect()
    }
}

fn check(what: &'static str, value: usize, max: usize) -> Result<()> {
    if value > max {
        return Err(WgError::BoundExceeded {
            what,
            value: value as i64,
            max: max as i64,
        });
    }
    Ok(())
}

fn to_u64(v: u128, what: &str) -> Result<u64> {
    u64::try_from(v).map_err(|_| WgError::NonIntegerCount(format!("{what} overflows u64")))
}

fn pack(images: &[usize]) -> u64 {
    images
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &v)| acc | ((v as u64) << (4 * i)))
}

fn swap_packed(p: u64, a: usize, b: usize) -> u64 {
    let (sa, sb) = (4 * a, 4 * b);
    let va = (p >> sa) & 0xf;
    let vb = (p >> sb) & 0xf;
    (p & !(0xf << sa) & !(0xf << sb)) | (vb << sa) | (va << sb)
}

/// Number of monotone transposition sequences `(s_i t_i)`, `s_i < t_i`,
/// `t_1 ≤ t_2 ≤ ...`, of each length `k ≤ k_max` whose product is `target`.
///
/// Partial products `τ₁⋯τ_i` are aggregated by value together with the
/// last `t`, so the cost is bounded by `n!·n` states per length instead of
/// the number of sequences.
fn monotone_counts_of(target: &[usize], k_max: usize) -> Vec<u128> {
    let n = target.len();
    let goal = pack(target);
    let id: Vec<usize> = (0..n).collect();
    let mut layer: HashMap<(u64, usize), u128> = HashMap::from([((pack(&id), 0), 1)]);
    let mut out = vec![0u128; k_max + 1];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = layer
            .iter()
            .filter(|((p, _), _)| *p == goal)
            .map(|(_, c)| *c)
            .sum();
        if k == k_max {
            break;
        }
        let mut next: HashMap<(u64, usize), u128> = HashMap::new();
        for (&(p, last), &c) in &layer {
            for t in last.max(1)..n {
                for s in 0..t {
                    // right multiplication by (s t) swaps positions s and t
                    *next.entry((swap_packed(p, s, t), t)).or_insert(0) += c;
                }
            }
        }
        layer = next;
    }
    out
}

/// `M_α^k` for `k = 0..=k_max`.
pub fn monotone_counts(alpha: &Partition, k_max: usize) -> Result<CountTable> {
    check("monotone partition size", alpha.weight(), MONOTONE_BOUND)?;
    check("monotone k_max", k_max, MONOTONE_KMAX)?;
    let counts = monotone_counts_of(Permutation::standard(alpha).images(), k_max)
        .into_iter()
        .map(|c| to_u64(c, "monotone count"))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable::by_length(Family::Monotone, alpha, &counts))
}

fn series_from(
    n: usize,
    order: i64,
    coeff: impl Fn(usize) -> Result<BigRational>,
) -> Result<LaurentSeries> {
    let mut terms = BTreeMap::new();
    let mut k = 0usize;
    while n as i64 + k as i64 <= order {
        terms.insert(n as i64 + k as i64, coeff(k)?);
        k += 1;
    }
    if terms.is_empty() {
        return Err(WgError::OrderBelowLeading {
            order,
            leading: n as i64,
        });
    }
    Ok(LaurentSeries::from_terms(&terms, order))
}

fn kmax_for(n: usize, order: i64) -> usize {
    (order - n as i64).max(0) as usize
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `(-1)^{n+ℓ(α)} Σ_k M_α^k N^{-n-k}` through `N^{-order}`.
pub fn monotone_series(alpha: &Partition, order: i64) -> Result<LaurentSeries> {
    let n = alpha.weight();
    let table = monotone_counts(alpha, kmax_for(n, order))?;
    let sign = if (n + alpha.len()).is_multiple_of(2) {
        1
    } else {
        -1
    };
    series_from(n, order, |k| {
        Ok(int(sign * table.get(k).unwrap_or(0) as i64))
    })
}

/// `[x^d] (Σ_{μ ≠ 1ⁿ} w(μ) x^{r(μ)})^k`, truncated at degree `d` throughout.
fn tuple_sum(weights: &[(usize, BigRational)], k: usize, d: usize) -> BigRational {
    let mut acc = vec![BigRational::zero(); d + 1];
    acc[0] = BigRational::one();
    for _ in 0..k {
        let mut next = vec![BigRational::zero(); d + 1];
        for (deg, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (r, w) in weights {
                if deg + r <= d {
                    next[deg + r] += a * w;
                }
            }
        }
        acc = next;
    }
    acc.swap_remove(d)
}

/// `P_α^{k,d} = (1/n!) Σ_λ χ_λ(1ⁿ) χ_λ(α) Σ_{μ_1..μ_k ≠ 1ⁿ, Σ r(μ_j) = d} ∏ |C_{μ_j}| χ_λ(μ_j)/χ_λ(1ⁿ)`.
///
/// At `k = 0` the empty product makes this `[α = 1ⁿ]·[d = 0]`.
pub fn proper_count(alpha: &Partition, k: usize, d: usize) -> Result<BigRational> {
    let n = alpha.weight();
    check("proper partition size", n, PROPER_BOUND)?;
    check("proper depth", d, PROPER_DMAX)?;
    let table = character_table(n)?;
    let mut total = BigRational::zero();
    for lambda in table.partitions() {
        let dim = int(dimension(lambda)?);
        let chi_alpha = table.get(lambda, alpha).expect("tabulated");
        if chi_alpha == 0 {
            continue;
        }
        let weights: Vec<(usize, BigRational)> = table
            .partitions()
            .iter()
            .filter(|mu| !mu.is_all_ones())
            .map(|mu| {
                let w = int(BigInt::from(mu.class_size()))
                    * int(table.get(lambda, mu).expect("tabulated"))
                    / &dim;
                (mu.rank(), w)
            })
            .collect();
        total += &dim * int(chi_alpha) * tuple_sum(&weights, k, d);
    }
    Ok(total / int(BigInt::from(factorial(n))))
}

fn integral(v: &BigRational, what: impl FnOnce() -> String) -> Result<u64> {
    if !v.is_integer() || v.numer() < &BigInt::zero() {
        return Err(WgError::NonIntegerCount(format!("{} = {v}", what())));
    }
    v.numer()
        .to_u64()
        .ok_or_else(|| WgError::NonIntegerCount(format!("{} overflows u64", what())))
}

/// All `P_α^{k,d}` with `0 ≤ k ≤ d ≤ d_max`.
pub fn proper_counts(alpha: &Partition, d_max: usize) -> Result<CountTable> {
    let mut entries = Vec::new();
    for d in 0..=d_max {
        for k in 0..=d {
            let v = proper_count(alpha, k, d)?;
            let count = integral(&v, || format!("P_{alpha}^({k},{d})"))?;
            entries.push(CountEntry {
                k,
                d: Some(d),
                count,
            });
        }
    }
    Ok(CountTable {
        family: Family::Proper,
        partition: alpha.clone(),
        order_convention: None,
        entries,
    })
}

/// `Σ_d (Σ_k (-1)^k P_α^{k,d}) N^{-n-d}` through `N^{-order}`.
pub fn proper_series(alpha: &Partition, order: i64) -> Result<LaurentSeries> {
    series_from(alpha.weight(), order, |d| {
        (0..=d).try_fold(BigRational::zero(), |acc, k| {
            let p = proper_count(alpha, k, d)?;
            Ok(if k % 2 == 0 { acc + p } else { acc - p })
        })
    })
}

/// Matching-monotone counts towards an explicit target matching: sequences
/// of transpositions `(s_i t_i)` with `t_i ∈ [n]`, `t_i ≥ t_{i-1}`,
/// `t_i > h(s_i)` and `τ₁⋯τ_k(𝔱) = target`.
///
/// The product acts on `𝔱` starting from `τ_k`, so the sequence is scanned
/// right to left with `t` non-increasing, aggregating by current matching.
pub fn matching_monotone_counts_to(target: &Matching, k_max: usize) -> Result<Vec<u64>> {
    let n = target.n();
    check("matching-monotone size", n, MATCHING_BOUND)?;
    check("matching-monotone k_max", k_max, MATCHING_KMAX)?;
    let start = Matching::trivial(n).partner().to_vec();
    let mut layer: HashMap<(Vec<usize>, usize), u128> = HashMap::from([((start, n), 1)]);
    let mut out = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let c: u128 = layer
            .iter()
            .filter(|((m, _), _)| m.as_slice() == target.partner())
            .map(|(_, c)| *c)
            .sum();
        out.push(to_u64(c, "matching-monotone count")?);
        if k == k_max {
            break;
        }
        let mut next: HashMap<(Vec<usize>, usize), u128> = HashMap::new();
        for ((m, bound), &c) in &layer {
            for t in 1..=(*bound).min(n - 1) {
                for s in (0..t).chain(n..n + t) {
                    let mut moved = vec![0; 2 * n];
                    let swap = |x: usize| {
                        if x == s {
                            t
                        } else if x == t {
                            s
                        } else {
                            x
                        }
                    };
                    for x in 0..2 * n {
                        moved[swap(x)] = swap(m[x]);
                    }
                    *next.entry((moved, t)).or_insert(0) += c;
                }
            }
        }
        layer = next;
    }
    Ok(out)
}

/// `M̃_β^k` for `k = 0..=k_max`, towards `σ_β(𝔱)` with `σ_β` the standard
/// permutation of cycletype `β` on plain labels.
pub fn matching_monotone_counts(beta: &Partition, k_max: usize) -> Result<CountTable> {
    let target = Matching::trivial(beta.weight()).act(&coset_representative(beta))?;
    let counts = matching_monotone_counts_to(&target, k_max)?;
    Ok(CountTable::by_length(
        Family::MatchingMonotone,
        beta,
        &counts,
    ))
}

/// `Σ_k (-1)^k M̃_β^k N^{-n-k}` through `N^{-order}`.
pub fn matching_monotone_series(beta: &Partition, order: i64) -> Result<LaurentSeries> {
    let n = beta.weight();
    let table = matching_monotone_counts(beta, kmax_for(n, order))?;
    series_from(n, order, |k| {
        let c = table.get(k).unwrap_or(0) as i64;
        Ok(int(if k % 2 == 0 { c } else { -c }))
    })
}

/// `π·hat(π)` as an image array over `[n] ∪ [n̂]`, for `π` the standard
/// permutation of cycletype `β`.
fn palindromic_target(beta: &Partition) -> Result<Vec<usize>> {
    let pi = coset_representative(beta);
    Ok(pi.compose(&pi.hat()?)?.images().to_vec())
}

/// Palindromic-monotone counts: sequences of transpositions `(s_i t_i)` on
/// `[n] ∪ [n̂]` with `s_i < t_i` and `t_{i-1} ≤ t_i` in `convention`, such
/// that `τ₁⋯τ_k·hat(τ_k)⋯hat(τ₁) = π·hat(π)`.
///
/// Since `hat(τ₁⋯τ_k) = hat(τ_k)⋯hat(τ₁)`, the condition only involves the
/// partial product `P = τ₁⋯τ_k`; states are aggregated by `(P, last t)`.
pub fn palindromic_monotone_counts(
    beta: &Partition,
    k_max: usize,
    convention: OrderConvention,
) -> Result<CountTable> {
    let n = beta.weight();
    check("palindromic-monotone size", n, PALINDROMIC_BOUND)?;
    check("palindromic-monotone k_max", k_max, PALINDROMIC_KMAX)?;
    let goal = palindromic_target(beta)?;
    // by_rank[j] = dense index at position j of the order
    let mut by_rank = vec![0; 2 * n];
    for i in 0..2 * n {
        by_rank[convention.rank(n, i)] = i;
    }
    let hat_index = |x: usize| if x < n { x + n } else { x - n };
    let id: Vec<usize> = (0..2 * n).collect();
    let mut layer: HashMap<(u64, usize), u128> = HashMap::from([((pack(&id), 0), 1)]);
    let mut out = Vec::with_capacity(k_max + 1);
    let mut images = vec![0usize; 2 * n];
    for k in 0..=k_max {
        let mut c = 0u128;
        for (&(p, _), &count) in &layer {
            for (x, v) in images.iter_mut().enumerate() {
                *v = ((p >> (4 * x)) & 0xf) as usize;
            }
            // P·hat(P)(x) = P(h(P⁻¹(h(x))))
            let mut inv = vec![0; 2 * n];
            for (x, &v) in images.iter().enumerate() {
                inv[v] = x;
            }
            if (0..2 * n).all(|x| images[hat_index(inv[hat_index(x)])] == goal[x]) {
                c += count;
            }
        }
        out.push(to_u64(c, "palindromic-monotone count")?);
        if k == k_max {
            break;
        }
        let mut next: HashMap<(u64, usize), u128> = HashMap::new();
        for (&(p, last), &count) in &layer {
            for tr in last.max(1)..2 * n {
                if convention.plain_targets && by_rank[tr] >= n {
                    continue;
                }
                for sr in 0..tr {
                    let (s, t) = (by_rank[sr], by_rank[tr]);
                    *next.entry((swap_packed(p, s, t), tr)).or_insert(0) += count;
                }
            }
        }
        layer = next;
    }
    Ok(CountTable {
        family: Family::PalindromicMonotone,
        partition: beta.clone(),
        order_convention: Some(convention),
        entries: out
            .into_iter()
            .enumerate()
            .map(|(k, count)| CountEntry { k, d: None, count })
            .collect(),
    })
}

/// Reference values `M̂_{(2)}^1..3` used to select the order convention.
pub const PALINDROMIC_CALIBRATION: [u64; 3] = [1, 4, 13];

/// The first convention (in [`OrderConvention::ALL`] order) whose counts for
/// `β = (2)` reproduce [`PALINDROMIC_CALIBRATION`].
pub fn calibrate_palindromic_convention() -> Result<OrderConvention> {
    let beta = Partition::new(vec![2])?;
    for conv in OrderConvention::ALL {
        let t = palindromic_monotone_counts(&beta, 3, conv)?;
        if t.counts()[1..] == PALINDROMIC_CALIBRATION {
            return Ok(conv);
        }
    }
    Err(WgError::NonIntegerCount(
        "no order convention reproduces the palindromic calibration counts".into(),
    ))
}

/// `Σ_k (-1)^k M̂_β^k N^{-n-k}` through `N^{-order}`.
pub fn palindromic_monotone_series(
    beta: &Partition,
    order: i64,
    convention: OrderConvention,
) -> Result<LaurentSeries> {
    let n = beta.weight();
    let table = palindromic_monotone_counts(beta, kmax_for(n, order), convention)?;
    series_from(n, order, |k| {
        let c = table.get(k).unwrap_or(0) as i64;
        Ok(int(if k % 2 == 0 { c } else { -c }))
    })
}

/// `P̃_β^{k,d} = (1/(2n)!) Σ_λ χ_{2λ}(1^{2n}) ω_λ(β) Σ_{μ_j ≠ 1ⁿ, Σ r(μ_j) = d} ∏ |K_{μ_j}| ω_λ(μ_j)`.
///
/// At `k = 0` this is `[β = 1ⁿ]·[d = 0]/(2ⁿ n!)`.
pub fn orthogonal_proper_count(beta: &Partition, k: usize, d: usize) -> Result<BigRational> {
    let n = beta.weight();
    check("orthogonal proper size", n, ORTHOGONAL_PROPER_BOUND)?;
    check("orthogonal proper length", k, ORTHOGONAL_PROPER_KMAX)?;
    let zonal = zonal_table(n)?;
    let mut total = BigRational::zero();
    for lambda in zonal.partitions() {
        let omega_beta = zonal.get(lambda, beta).expect("tabulated");
        if omega_beta.is_zero() {
            continue;
        }
        let weights: Vec<(usize, BigRational)> = zonal
            .partitions()
            .iter()
            .filter(|mu| !mu.is_all_ones())
            .map(|mu| {
                let w = int(BigInt::from(mu.double_coset_size()))
                    * zonal.get(lambda, mu).expect("tabulated");
                (mu.rank(), w)
            })
            .collect();
        total += int(dimension(&lambda.doubled())?) * omega_beta * tuple_sum(&weights, k, d);
    }
    Ok(total / int(BigInt::from(factorial(2 * n))))
}

/// `Σ_d (Σ_k (-1)^k (2ⁿ n!)^{1-k} P̃_β^{k,d}) N^{-n-d}` through `N^{-order}`,
/// with `d - n ≤` [`ORTHOGONAL_PROPER_KMAX`].
pub fn orthogonal_proper_series(beta: &Partition, order: i64) -> Result<LaurentSeries> {
    let n = beta.weight();
    let h = int(BigInt::from(hyperoctahedral_order(n)));
    series_from(n, order, |d| {
        let mut acc = BigRational::zero();
        let mut scale = h.clone();
        for k in 0..=d {
            let p = orthogonal_proper_count(beta, k, d)?;
            let term = &scale * p;
            acc = if k % 2 == 0 { acc + term } else { acc - term };
            scale /= &h;
        }
        Ok(acc)
    })
}

/// Every partition of each weight up to `max`, for table sweeps.
pub fn all_partitions_up_to(max: usize) -> Vec<Partition> {
    (1..=max).flat_map(|n| partitions(n, 1)).collect()
}
