//! Exact Gaussian moments of complex and real Ginibre matrix elements by
//! Wick's rule, with covariances `⟨Z_ab Z*_cd⟩ = ⟨M_ab M_cd⟩ = δ_ac δ_bd / Ω`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, BigRational};
use crate::error::{Result, WgError};

/// Longest product accepted; the sums below are enumerative.
pub const WICK_MAX_FACTORS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    Z,
    ZConj,
    M,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub row: u32,
    pub col: u32,
    pub tag: Tag,
}

impl Factor {
    fn same_entry(&self, other: &Factor) -> bool {
        self.row == other.row && self.col == other.col
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ensemble {
    Complex,
    Real,
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ensemble::Complex => "complex",
            Ensemble::Real => "real",
        })
    }
}

impl FromStr for Ensemble {
    type Err = WgError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "complex" => Ok(Ensemble::Complex),
            "real" => Ok(Ensemble::Real),
            other => Err(WgError::Parse(format!(
                "unknown ensemble '{other}' (expected complex or real)"
            ))),
        }
    }
}

/// A product of matrix elements with variance parameter `Ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedProduct {
    factors: Vec<Factor>,
    omega: BigRational,
}

impl IndexedProduct {
    pub fn new(factors: Vec<Factor>, omega: BigRational) -> Result<Self> {
        if factors.len() > WICK_MAX_FACTORS {
            return Err(WgError::BoundExceeded {
                what: "number of factors",
                value: factors.len() as i64,
                max: WICK_MAX_FACTORS as i64,
            });
        }
        if omega <= BigRational::zero() {
            return Err(WgError::InvalidProduct(format!(
                "Ω must be positive, got {omega}"
            )));
        }
        let real = factors.iter().filter(|f| f.tag == Tag::M).count();
        if real != 0 && real != factors.len() {
            return Err(WgError::InvalidProduct(
                "cannot mix real and complex factors".into(),
            ));
        }
        Ok(IndexedProduct { factors, omega })
    }

    /// Parses `"1,1;1,2*"`: `;`-separated `row,col` pairs, where a trailing
    /// `*` marks a conjugated complex element. Every factor gets tag `M` for
    /// the real ensemble.
    pub fn parse(ensemble: Ensemble, factors: &str, omega: &str) -> Result<Self> {
        let omega = parse_rational(omega)?;
        let mut out = Vec::new();
        for token in factors.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let (body, conj) = match token.strip_suffix('*') {
                Some(b) => (b, true),
                None => (token, false),
            };
            let (r, c) = body
                .split_once(',')
                .ok_or_else(|| WgError::Parse(format!("factor '{token}' is not 'row,col'")))?;
            let index = |s: &str| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| WgError::Parse(format!("bad index '{s}' in factor '{token}'")))
            };
            let tag = match (ensemble, conj) {
                (Ensemble::Real, true) => {
                    return Err(WgError::Parse(format!(
                        "'{token}': real elements have no conjugate"
                    )))
                }
                (Ensemble::Real, false) => Tag::M,
                (Ensemble::Complex, false) => Tag::Z,
                (Ensemble::Complex, true) => Tag::ZConj,
            };
            out.push(Factor {
                row: index(r)?,
                col: index(c)?,
                tag,
            });
        }
        IndexedProduct::new(out, omega)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn omega(&self) -> &BigRational {
        &self.omega
    }

    pub fn is_real(&self) -> bool {
        self.factors.iter().all(|f| f.tag == Tag::M) && !self.factors.is_empty()
    }

    pub fn moment(&self) -> BigRational {
        if self.is_real() {
            real_wick_moment(self)
        } else {
            complex_wick_moment(self)
        }
    }
}

fn omega_power(omega: &BigRational, n: usize) -> BigRational {
    num_traits::pow(omega.recip(), n)
}

/// `Ω^{-n} Σ_{π ∈ S_n} Π_k δ(Z_k, Z*_{π(k)})`, zero unless the tags balance.
pub fn complex_wick_moment(p: &IndexedProduct) -> BigRational {
    let z: Vec<&Factor> = p.factors.iter().filter(|f| f.tag == Tag::Z).collect();
    let zc: Vec<&Factor> = p.factors.iter().filter(|f| f.tag == Tag::ZConj).collect();
    if z.len() != zc.len() || p.factors.iter().any(|f| f.tag == Tag::M) {
        return BigRational::zero();
    }
    fn count(k: usize, z: &[&Factor], zc: &[&Factor], used: &mut [bool]) -> u64 {
        if k == z.len() {
            return 1;
        }
        let mut total = 0;
        for j in 0..zc.len() {
            if !used[j] && z[k].same_entry(zc[j]) {
                used[j] = true;
                total += count(k + 1, z, zc, used);
                used[j] = false;
            }
        }
        total
    }
    let terms = count(0, &z, &zc, &mut vec![false; zc.len()]);
    BigRational::from_integer(terms.into()) * omega_power(&p.omega, z.len())
}

/// `Ω^{-n} Σ_𝔪 Δ_𝔪(a) Δ_𝔪(b)` over perfect matchings of the `2n` factors.
pub fn real_wick_moment(p: &IndexedProduct) -> BigRational {
    let f = &p.factors;
    if !f.len().is_multiple_of(2) || f.iter().any(|x| x.tag != Tag::M) {
        return BigRational::zero();
    }
    fn count(f: &[Factor], used: &mut [bool]) -> u64 {
        let Some(i) = used.iter().position(|u| !u) else {
            return 1;
        };
        used[i] = true;
        let mut total = 0;
        for j in i + 1..f.len() {
            if !used[j] && f[i].same_entry(&f[j]) {
                used[j] = true;
                total += count(f, used);
                used[j] = false;
            }
        }
        used[i] = false;
        total
    }
    let terms = count(f, &mut vec![false; f.len()]);
    if terms == 0 {
        return BigRational::zero();
    }
    BigRational::from_integer(terms.into()) * omega_power(&p.omega, f.len() / 2)
}
