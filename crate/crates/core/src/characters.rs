//! Irreducible characters of `S_n`, zonal spherical functions of the Gelfand
//! pair `(S_2n, H_n)` and the principal specializations `s_λ(1^N)`, `Z_λ(1^N)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{parse_rational, rational_to_string, BigRational, PolynomialN};
use crate::cache::{self, TableEntries};
use crate::combinatorics::{
    coset_representative, cycletype_of, factorial, hyperoctahedral_images, hyperoctahedral_order,
    partitions, Domain, Partition, Permutation,
};
use crate::error::{Result, WgError};

/// Largest `n` for which character tables of `S_n` are built.
pub const CHARACTER_BOUND: usize = 12;
/// Largest `n` for which zonal spherical functions are averaged over `H_n`.
pub const ZONAL_BOUND: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    #[serde(skip)]
    index: HashMap<Partition, usize>,
    /// `values[λ][μ] = χ_λ(μ)`, both indexed in [`partitions`] order.
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn get(&self, lambda: &Partition, mu: &Partition) -> Option<i64> {
        Some(self.values[self.index_of(lambda)?][self.index_of(mu)?])
    }

    pub fn row(&self, lambda: &Partition) -> Option<&[i64]> {
        Some(&self.values[self.index_of(lambda)?])
    }

    fn compute(n: usize) -> Self {
        let parts = partitions(n, 1);
        let mut memo = HashMap::new();
        let values = parts
            .iter()
            .map(|l| {
                parts
                    .iter()
                    .map(|m| mn(l.parts(), m.parts(), &mut memo))
                    .collect()
            })
            .collect();
        Self::assemble(n, parts, values)
    }

    fn assemble(n: usize, partitions: Vec<Partition>, values: Vec<Vec<i64>>) -> Self {
        let index = partitions
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        CharacterTable {
            n,
            partitions,
            index,
            values,
        }
    }

    fn to_entries(&self) -> TableEntries {
        self.partitions
            .iter()
            .zip(&self.values)
            .map(|(l, row)| {
                let inner = self
                    .partitions
                    .iter()
                    .zip(row)
                    .map(|(m, v)| (m.to_string(), v.to_string()))
                    .collect();
                (l.to_string(), inner)
            })
            .collect()
    }

    fn from_entries(n: usize, entries: &TableEntries) -> Option<Self> {
        let parts = partitions(n, 1);
        let mut values = Vec::with_capacity(parts.len());
        for l in &parts {
            let inner = entries.get(&l.to_string())?;
            let row: Option<Vec<i64>> = parts
                .iter()
                .map(|m| inner.get(&m.to_string())?.parse().ok())
                .collect();
            values.push(row?);
        }
        Some(Self::assemble(n, parts, values))
    }
}

/// Murnaghan–Nakayama: strip a rim hook of length `μ₁` from `λ` in every
/// possible way, with sign `(-1)^{height}`, and recurse on `μ` minus its
/// first part. Rim hooks are located on the beta-set `{λ_i + ℓ - 1 - i}`,
/// where removing a hook of length `r` moves one bead from `b` to `b - r`.
fn mn(lambda: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return i64::from(lambda.is_empty());
    };
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let len = lambda.len();
    let beta: Vec<usize> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let height = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|x, y| y.cmp(x));
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(j, &c)| c - (len - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&shape, rest, memo);
    }
    memo.insert(key, total);
    total
}

static CHARACTER_TABLES: LazyLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> =
    LazyLock::new(Default::default);
static ZONAL_TABLES: LazyLock<Mutex<HashMap<usize, Arc<ZonalTable>>>> =
    LazyLock::new(Default::default);

/// The character table of `S_n`, from memory, the disk cache, or built.
pub fn character_table(n: usize) -> Result<Arc<CharacterTable>> {
    if n > CHARACTER_BOUND {
        return Err(WgError::BoundExceeded {
            what: "character table n",
            value: n as i64,
            max: CHARACTER_BOUND as i64,
        });
    }
    if let Some(t) = CHARACTER_TABLES
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(&n)
    {
        return Ok(t.clone());
    }
    let store = cache::store();
    let table = store
        .as_ref()
        .and_then(|s| s.load("characters", n))
        .and_then(|e| CharacterTable::from_entries(n, &e))
        .unwrap_or_else(|| {
            let t = CharacterTable::compute(n);
            if let Some(s) = &store {
                let _ = s.save("characters", n, &t.to_entries());
            }
            t
        });
    let table = Arc::new(table);
    CHARACTER_TABLES
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(n, table.clone());
    Ok(table)
}

fn check_weights(a: &Partition, b: &Partition) -> Result<()> {
    if a.weight() != b.weight() {
        return Err(WgError::WeightMismatch {
            left: a.to_string(),
            left_weight: a.weight(),
            right: b.to_string(),
            right_weight: b.weight(),
        });
    }
    Ok(())
}

/// `χ_λ(μ)`.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    check_weights(lambda, mu)?;
    let table = character_table(lambda.weight())?;
    Ok(table
        .get(lambda, mu)
        .expect("partitions of n are all tabulated"))
}

/// `χ_λ(1ⁿ)`, the dimension of the irreducible representation.
pub fn dimension(lambda: &Partition) -> Result<i64> {
    character(lambda, &Partition::ones(lambda.weight()))
}

fn big(n: num_bigint::BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `s_λ(1^N) = (1/n!) Σ_μ |C_μ| χ_λ(μ) N^{ℓ(μ)}`.
pub fn schur_principal(lambda: &Partition) -> Result<PolynomialN> {
    let n = lambda.weight();
    let table = character_table(n)?;
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for mu in table.partitions() {
        let chi = table.get(lambda, mu).expect("tabulated");
        coeffs[mu.len()] += big(mu.class_size()) * BigRational::from_integer(chi.into());
    }
    Ok(PolynomialN::new(coeffs).scale(&(BigRational::from_integer(1.into()) / big(factorial(n)))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZonalTable {
    n: usize,
    partitions: Vec<Partition>,
    /// `values[λ][β] = ω_λ(β)`.
    values: Vec<Vec<BigRational>>,
}

impl ZonalTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn get(&self, lambda: &Partition, beta: &Partition) -> Option<&BigRational> {
        let i = self.partitions.iter().position(|p| p == lambda)?;
        let j = self.partitions.iter().position(|p| p == beta)?;
        Some(&self.values[i][j])
    }

    fn compute(n: usize) -> Result<Self> {
        let parts = partitions(n, 1);
        let chars = character_table(2 * n)?;
        let h = hyperoctahedral_images(n);
        let order = big(hyperoctahedral_order(n));
        let mut values = vec![Vec::with_capacity(parts.len()); parts.len()];
        for beta in &parts {
            let hist = coset_histogram(coset_representative(beta).images(), &h);
            for (i, lambda) in parts.iter().enumerate() {
                values[i].push(average(&chars, &lambda.doubled(), &hist) / &order);
            }
        }
        Ok(ZonalTable {
            n,
            partitions: parts,
            values,
        })
    }

    fn to_entries(&self) -> TableEntries {
        self.partitions
            .iter()
            .zip(&self.values)
            .map(|(l, row)| {
                let inner = self
                    .partitions
                    .iter()
                    .zip(row)
                    .map(|(b, v)| (b.to_string(), rational_to_string(v)))
                    .collect();
                (l.to_string(), inner)
            })
            .collect()
    }

    fn from_entries(n: usize, entries: &TableEntries) -> Option<Self> {
        let parts = partitions(n, 1);
        let mut values = Vec::new();
        for l in &parts {
            let inner = entries.get(&l.to_string())?;
            let row: Option<Vec<BigRational>> = parts
                .iter()
                .map(|b| parse_rational(inner.get(&b.to_string())?).ok())
                .collect();
            values.push(row?);
        }
        Some(ZonalTable {
            n,
            partitions: parts,
            values,
        })
    }
}

/// Cycletypes of `τξ` for `ξ` ranging over `H_n`, with multiplicity.
fn coset_histogram(tau: &[usize], h: &[Vec<usize>]) -> BTreeMap<Partition, u64> {
    let mut hist = BTreeMap::new();
    let mut prod = vec![0; tau.len()];
    for xi in h {
        for (x, p) in prod.iter_mut().enumerate() {
            *p = tau[xi[x]];
        }
        *hist.entry(cycletype_of(&prod)).or_insert(0) += 1;
    }
    hist
}

fn average(
    chars: &CharacterTable,
    lambda2: &Partition,
    hist: &BTreeMap<Partition, u64>,
) -> BigRational {
    let sum: i64 = hist
        .iter()
        .map(|(mu, &c)| chars.get(lambda2, mu).expect("tabulated") * c as i64)
        .sum();
    BigRational::from_integer(sum.into())
}

fn check_zonal_bound(n: usize) -> Result<()> {
    if n > ZONAL_BOUND {
        return Err(WgError::BoundExceeded {
            what: "zonal spherical n",
            value: n as i64,
            max: ZONAL_BOUND as i64,
        });
    }
    Ok(())
}

pub fn zonal_table(n: usize) -> Result<Arc<ZonalTable>> {
    check_zonal_bound(n)?;
    if let Some(t) = ZONAL_TABLES
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(&n)
    {
        return Ok(t.clone());
    }
    let store = cache::store();
    let table = match store
        .as_ref()
        .and_then(|s| s.load("zonal", n))
        .and_then(|e| ZonalTable::from_entries(n, &e))
    {
        Some(t) => t,
        None => {
            let t = ZonalTable::compute(n)?;
            if let Some(s) = &store {
                let _ = s.save("zonal", n, &t.to_entries());
            }
            t
        }
    };
    let table = Arc::new(table);
    ZONAL_TABLES
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(n, table.clone());
    Ok(table)
}

/// `ω_λ(β) = (1/|H_n|) Σ_{ξ ∈ H_n} χ_{2λ}(τξ)` for `τ` of cosettype `β`.
pub fn zonal_spherical(lambda: &Partition, beta: &Partition) -> Result<BigRational> {
    check_weights(lambda, beta)?;
    check_zonal_bound(beta.weight())?;
    let table = zonal_table(beta.weight())?;
    Ok(table.get(lambda, beta).expect("tabulated").clone())
}

/// `ω_λ` evaluated by direct averaging at an arbitrary permutation `τ` of
/// `[n] ∪ [n̂]`.
pub fn zonal_spherical_at(lambda: &Partition, tau: &Permutation) -> Result<BigRational> {
    let Domain::Hatted(n) = tau.domain() else {
        return Err(WgError::NotHatted(tau.domain().to_string()));
    };
    if lambda.weight() != n {
        return Err(WgError::WeightMismatch {
            left: lambda.to_string(),
            left_weight: lambda.weight(),
            right: tau.to_string(),
            right_weight: n,
        });
    }
    check_zonal_bound(n)?;
    let chars = character_table(2 * n)?;
    let hist = coset_histogram(tau.images(), &hyperoctahedral_images(n));
    Ok(average(&chars, &lambda.doubled(), &hist) / big(hyperoctahedral_order(n)))
}

/// `Z_λ(1^N) = (1/(2ⁿ n!)) Σ_μ |K_μ| ω_λ(μ) N^{ℓ(μ)}`.
pub fn zonal_principal(lambda: &Partition) -> Result<PolynomialN> {
    let n = lambda.weight();
    let table = zonal_table(n)?;
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for mu in table.partitions() {
        coeffs[mu.len()] += big(mu.double_coset_size()) * table.get(lambda, mu).expect("tabulated");
    }
    Ok(PolynomialN::new(coeffs)
        .scale(&(BigRational::from_integer(1.into()) / big(hyperoctahedral_order(n)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, int};
    use crate::combinatorics::{hyperoctahedral_elements, matchings, Matching};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// Hook-length formula, an independent route to `χ_λ(1ⁿ)`.
    fn hook_dimension(lambda: &Partition) -> i64 {
        let parts = lambda.parts();
        let mut hooks: u128 = 1;
        for (i, &row) in parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = parts[i + 1..].iter().filter(|&&r| r > j).count();
                hooks *= (arm + leg + 1) as u128;
            }
        }
        let nf: u128 = (1..=lambda.weight() as u128).product();
        (nf / hooks) as i64
    }

    /// Counts semistandard tableaux of shape `λ` with entries in `1..=max`.
    fn ssyt_count(lambda: &Partition, max: usize) -> u64 {
        let cells: Vec<(usize, usize)> = lambda
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r).map(move |j| (i, j)))
            .collect();
        let mut grid =
            vec![vec![0usize; lambda.parts().first().copied().unwrap_or(0)]; lambda.len()];
        fn go(k: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<usize>>, max: usize) -> u64 {
            let Some(&(i, j)) = cells.get(k) else {
                return 1;
            };
            let lo_row = if j > 0 { grid[i][j - 1] } else { 1 };
            let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
            let mut total = 0;
            for v in lo_row.max(lo_col)..=max {
                grid[i][j] = v;
                total += go(k + 1, cells, grid, max);
            }
            total
        }
        go(0, &cells, &mut grid, max)
    }

    #[test]
    fn character_examples() {
        assert_eq!(character(&p("3"), &p("2,1")).unwrap(), 1);
        assert_eq!(character(&p("1,1"), &p("2")).unwrap(), -1);
        assert_eq!(character(&p("2,1"), &p("1,1,1")).unwrap(), 2);
        assert_eq!(character(&p("2,1"), &p("3")).unwrap(), -1);
        assert_eq!(character(&p("2,2"), &p("2,2")).unwrap(), 2);
        assert!(matches!(
            character(&p("2"), &p("1")),
            Err(WgError::WeightMismatch { .. })
        ));
        assert!(matches!(
            character(&Partition::ones(13), &Partition::ones(13)),
            Err(WgError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn dimensions_match_hook_lengths() {
        for n in 1..=10 {
            for lambda in partitions(n, 1) {
                assert_eq!(
                    dimension(&lambda).unwrap(),
                    hook_dimension(&lambda),
                    "{lambda}"
                );
            }
        }
    }

    #[test]
    fn orthogonality_relations() {
        for n in 1..=6 {
            let t = character_table(n).unwrap();
            let ps = t.partitions().to_vec();
            for mu in &ps {
                for nu in &ps {
                    let s: i64 = ps
                        .iter()
                        .map(|l| t.get(l, mu).unwrap() * t.get(l, nu).unwrap())
                        .sum();
                    let want = if mu == nu { mu.z_u64() as i64 } else { 0 };
                    assert_eq!(s, want, "columns {mu} {nu}");
                }
            }
            let nf = factorial(n);
            for a in &ps {
                for b in &ps {
                    let s: BigInt = ps
                        .iter()
                        .map(|m| {
                            BigInt::from(m.class_size())
                                * t.get(a, m).unwrap()
                                * t.get(b, m).unwrap()
                        })
                        .sum();
                    let want = if a == b {
                        BigInt::from(nf.clone())
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(s, want, "rows {a} {b}");
                }
            }
            let dims: i64 = ps.iter().map(|l| dimension(l).unwrap().pow(2)).sum();
            assert_eq!(BigInt::from(dims), BigInt::from(factorial(n)));
            assert!(ps
                .iter()
                .all(|m| t.get(&Partition::new(vec![n]).unwrap(), m) == Some(1)));
        }
    }

    #[test]
    fn schur_principal_examples() {
        assert_eq!(
            schur_principal(&p("1")).unwrap(),
            PolynomialN::from_ints(&[0, 1])
        );
        let half = frac(1, 2);
        assert_eq!(
            schur_principal(&p("2")).unwrap(),
            PolynomialN::new(vec![int(0), half.clone(), half.clone()])
        );
        assert_eq!(
            schur_principal(&p("1,1")).unwrap(),
            PolynomialN::new(vec![int(0), -half.clone(), half])
        );
    }

    #[test]
    fn schur_principal_counts_tableaux() {
        for n in 1..=4 {
            for lambda in partitions(n, 1) {
                let s = schur_principal(&lambda).unwrap();
                assert_eq!(s.degree(), Some(n));
                for big_n in 1..=5 {
                    assert_eq!(
                        s.eval(&int(big_n as i64)),
                        int(ssyt_count(&lambda, big_n) as i64),
                        "{lambda} N={big_n}"
                    );
                }
            }
        }
    }

    #[test]
    fn zonal_examples() {
        for n in 1..=4 {
            for lambda in partitions(n, 1) {
                assert_eq!(
                    zonal_spherical(&lambda, &Partition::ones(n)).unwrap(),
                    int(1)
                );
            }
        }
        assert_eq!(zonal_spherical(&p("2"), &p("2")).unwrap(), int(1));
        assert_eq!(zonal_spherical(&p("1,1"), &p("2")).unwrap(), frac(-1, 2));
        assert!(matches!(
            zonal_spherical(&Partition::ones(6), &Partition::ones(6)),
            Err(WgError::BoundExceeded { .. })
        ));
    }

    /// `ω_λ(𝔪)` computed at every matching `𝔪 = τ(𝔱)` via a permutation
    /// carrying `𝔱` to `𝔪` depends only on the cosettype of `𝔪`.
    #[test]
    fn zonal_is_constant_on_double_cosets() {
        for n in 1..=3 {
            let t = Matching::trivial(n);
            let h = hyperoctahedral_elements(n, 3).unwrap();
            for lambda in partitions(n, 1) {
                let mut by_type: BTreeMap<Partition, BigRational> = BTreeMap::new();
                for m in matchings(n) {
                    let tau = carrier(&m);
                    assert_eq!(t.act(&tau).unwrap(), m);
                    for xi in h.iter().take(8) {
                        let rep = tau.compose(xi).unwrap();
                        let w = zonal_spherical_at(&lambda, &rep).unwrap();
                        let ty = t.coset_type(&m).unwrap();
                        let prev = by_type.entry(ty.clone()).or_insert_with(|| w.clone());
                        assert_eq!(*prev, w, "λ={lambda} 𝔪={m}");
                    }
                }
                for (ty, w) in by_type {
                    assert_eq!(zonal_spherical(&lambda, &ty).unwrap(), w);
                }
            }
        }
    }

    /// A permutation sending block `{a, â}` of `𝔱` to the `a`-th block of `m`.
    fn carrier(m: &Matching) -> Permutation {
        let n = m.n();
        let mut blocks: Vec<(usize, usize)> = (0..2 * n)
            .filter(|&i| i < m.partner()[i])
            .map(|i| (i, m.partner()[i]))
            .collect();
        blocks.sort();
        let mut images = vec![0; 2 * n];
        for (a, (x, y)) in blocks.into_iter().enumerate() {
            images[a] = x;
            images[a + n] = y;
        }
        Permutation::from_images(Domain::Hatted(n), images).unwrap()
    }

    #[test]
    fn zonal_principal_examples() {
        assert_eq!(
            zonal_principal(&p("1")).unwrap(),
            PolynomialN::from_ints(&[0, 1])
        );
        assert_eq!(
            zonal_principal(&p("2")).unwrap(),
            PolynomialN::from_ints(&[0, 2, 1])
        );
        assert_eq!(
            zonal_principal(&p("1,1")).unwrap(),
            PolynomialN::from_ints(&[0, -1, 1])
        );
    }

    #[test]
    fn tables_survive_the_disk_cache() {
        let t = character_table(4).unwrap();
        assert_eq!(
            CharacterTable::from_entries(4, &t.to_entries()).as_ref(),
            Some(&*t)
        );
        let z = zonal_table(3).unwrap();
        assert_eq!(
            ZonalTable::from_entries(3, &z.to_entries()).as_ref(),
            Some(&*z)
        );
    }
}
