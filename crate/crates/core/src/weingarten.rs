//! Weingarten functions of the unitary and orthogonal groups as exact
//! rational functions of `N`, and a Gram-matrix oracle at integer `N`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{BigRational, PolynomialN, RationalFunctionN};
use crate::characters::{
    character_table, dimension, schur_principal, zonal_principal, zonal_table,
};
use crate::combinatorics::{
    coset_representative, factorial, hyperoctahedral_order, matchings, union_cycle_count, Domain,
    Matching, Partition, Permutation,
};
use crate::error::{Result, WgError};

pub const UNITARY_BOUND: usize = 6;
pub const ORTHOGONAL_BOUND: usize = 5;
pub const GRAM_UNITARY_BOUND: usize = 5;
pub const GRAM_ORTHOGONAL_BOUND: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Group {
    Unitary,
    Orthogonal,
    /// The orthogonal function at dimension `N + 1`.
    OrthogonalShifted,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Unitary => "unitary",
            Group::Orthogonal => "orthogonal",
            Group::OrthogonalShifted => "orthogonal-shifted",
        })
    }
}

impl FromStr for Group {
    type Err = WgError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unitary" | "u" => Ok(Group::Unitary),
            "orthogonal" | "o" => Ok(Group::Orthogonal),
            "orthogonal-shifted" => Ok(Group::OrthogonalShifted),
            _ => Err(WgError::Parse(format!("unknown group {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeingartenResult {
    pub group: Group,
    pub partition: Partition,
    #[serde(serialize_with = "serialize_ratfunc")]
    pub value: RationalFunctionN,
}

fn serialize_ratfunc<S: serde::Serializer>(
    f: &RationalFunctionN,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_factored_string())
}

pub fn weingarten(group: Group, partition: &Partition) -> Result<WeingartenResult> {
    let value = match group {
        Group::Unitary => wg_unitary(partition)?,
        Group::Orthogonal => wg_orthogonal(partition)?,
        Group::OrthogonalShifted => wg_orthogonal_shifted(partition)?,
    };
    Ok(WeingartenResult {
        group,
        partition: partition.clone(),
        value,
    })
}

fn check_bound(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(WgError::BoundExceeded {
            what,
            value: n as i64,
            max: max as i64,
        });
    }
    Ok(())
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `Wg^U_N(α) = (1/n!²) Σ_λ χ_λ(1ⁿ)² χ_λ(α) / s_λ(1^N)`.
pub fn wg_unitary(alpha: &Partition) -> Result<RationalFunctionN> {
    let n = alpha.weight();
    check_bound("unitary partition size", n, UNITARY_BOUND)?;
    let table = character_table(n)?;
    let mut sum = RationalFunctionN::zero();
    for lambda in table.partitions() {
        let d = dimension(lambda)?;
        let chi = table.get(lambda, alpha).expect("tabulated");
        if chi == 0 {
            continue;
        }
        let term = RationalFunctionN::new(
            PolynomialN::constant(rat(d * d * chi)),
            schur_principal(lambda)?,
        )?;
        sum = &sum + &term;
    }
    let nf = rat(factorial(n));
    Ok(sum.scale(&(BigRational::one() / (&nf * &nf))))
}

/// `Wg^O_N(β) = (2ⁿ n!/(2n)!) Σ_λ χ_{2λ}(1^{2n}) ω_λ(β) / Z_λ(1^N)`.
pub fn wg_orthogonal(beta: &Partition) -> Result<RationalFunctionN> {
    let n = beta.weight();
    check_bound("orthogonal partition size", n, ORTHOGONAL_BOUND)?;
    let zonal = zonal_table(n)?;
    let mut sum = RationalFunctionN::zero();
    for lambda in zonal.partitions() {
        let omega = zonal.get(lambda, beta).expect("tabulated");
        if omega.is_zero() {
            continue;
        }
        let d = dimension(&lambda.doubled())?;
        let term = RationalFunctionN::new(
            PolynomialN::constant(rat(d) * omega),
            zonal_principal(lambda)?,
        )?;
        sum = &sum + &term;
    }
    Ok(sum.scale(&(rat(hyperoctahedral_order(n)) / rat(factorial(2 * n)))))
}

/// `Wg^O_{N+1}(β)`.
pub fn wg_orthogonal_shifted(beta: &Partition) -> Result<RationalFunctionN> {
    Ok(wg_orthogonal(beta)?.substitute_shift(1))
}

/// Solves `A x = b` exactly. `A` is reduced to upper-triangular form by
/// fraction-free (Bareiss) elimination over the integers, then `x` is
/// recovered by back substitution over the rationals.
fn solve_integer_system(
    mut a: Vec<Vec<BigInt>>,
    b: Vec<BigInt>,
    at: i64,
) -> Result<Vec<BigRational>> {
    let m = a.len();
    for (row, rhs) in a.iter_mut().zip(b) {
        row.push(rhs);
    }
    let mut prev = BigInt::one();
    for k in 0..m {
        let pivot = (k..m)
            .find(|&i| !a[i][k].is_zero())
            .ok_or(WgError::SingularMatrix(at))?;
        a.swap(k, pivot);
        for i in k + 1..m {
            for j in k + 1..=m {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); m];
    for i in (0..m).rev() {
        let mut acc = rat(a[i][m].clone());
        for j in i + 1..m {
            acc -= rat(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / rat(a[i][i].clone());
    }
    Ok(x)
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    go(n, &mut cur, &mut used, &mut out);
    out
}

/// Inverts the Gram matrix `G_{σ,τ} = N^{ℓ(στ⁻¹)}` over `S_n` and reads the
/// entry `(id, π)` for `π` of cycletype `α`.
pub fn gram_wg_unitary(alpha: &Partition, big_n: i64) -> Result<BigRational> {
    let n = alpha.weight();
    check_bound("unitary Gram partition size", n, GRAM_UNITARY_BOUND)?;
    let perms: Vec<Permutation> = all_permutations(n)
        .into_iter()
        .map(|im| Permutation::from_images(Domain::Plain(n), im))
        .collect::<Result<_>>()?;
    let powers: Vec<BigInt> = (0..=n as u32).map(|k| BigInt::from(big_n).pow(k)).collect();
    let g: Vec<Vec<BigInt>> = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| {
                    let st = s.compose(&t.inverse()).expect("same domain");
                    powers[st.num_cycles()].clone()
                })
                .collect()
        })
        .collect();
    let id = perms
        .iter()
        .position(Permutation::is_identity)
        .expect("identity present");
    let mut rhs = vec![BigInt::zero(); perms.len()];
    rhs[id] = BigInt::one();
    let w = solve_integer_system(g, rhs, big_n)?;
    let target = Permutation::standard(alpha);
    let at = perms
        .iter()
        .position(|p| *p == target)
        .expect("standard permutation present");
    Ok(w[at].clone())
}

/// Inverts the matching Gram matrix `G_{𝔪,𝔪'} = N^{ℓ(cosettype(𝔪,𝔪'))}` and
/// reads the entry `(𝔱, 𝔪)` for `𝔪` of cosettype `β`.
pub fn gram_wg_orthogonal(beta: &Partition, big_n: i64) -> Result<BigRational> {
    let n = beta.weight();
    check_bound("orthogonal Gram partition size", n, GRAM_ORTHOGONAL_BOUND)?;
    let ms = matchings(n);
    let powers: Vec<BigInt> = (0..=n as u32).map(|k| BigInt::from(big_n).pow(k)).collect();
    let g: Vec<Vec<BigInt>> = ms
        .iter()
        .map(|a| {
            ms.iter()
                .map(|b| powers[union_cycle_count(a.partner(), b.partner())].clone())
                .collect()
        })
        .collect();
    let trivial = Matching::trivial(n);
    let t = ms
        .iter()
        .position(|m| *m == trivial)
        .expect("trivial matching present");
    let mut rhs = vec![BigInt::zero(); ms.len()];
    rhs[t] = BigInt::one();
    let w = solve_integer_system(g, rhs, big_n)?;
    let target = trivial.act(&coset_representative(beta))?;
    let at = ms
        .iter()
        .position(|m| *m == target)
        .expect("every matching enumerated");
    Ok(w[at].clone())
}
