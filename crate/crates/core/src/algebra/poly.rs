use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rational_to_string, BigRational};

/// A polynomial in the dimension indeterminate `N` with exact rational
/// coefficients, stored in ascending degree with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolynomialN {
    coeffs: Vec<BigRational>,
}

impl PolynomialN {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolynomialN { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        PolynomialN::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        PolynomialN { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolynomialN::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        PolynomialN::new(vec![c])
    }

    /// `N`
    pub fn var() -> Self {
        PolynomialN::from_ints(&[0, 1])
    }

    /// `c · N^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.push(c);
        PolynomialN::new(coeffs)
    }

    /// `N - root`
    pub fn linear_root(root: i64) -> Self {
        PolynomialN::from_ints(&[-root, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> PolynomialN {
        PolynomialN::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> PolynomialN {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(BigRational::one() / self.leading()))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &PolynomialN) -> (PolynomialN, PolynomialN) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (PolynomialN::zero(), PolynomialN::zero());
        };
        if nd < dd {
            return (PolynomialN::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        (PolynomialN::new(quot), PolynomialN::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &PolynomialN) -> PolynomialN {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p(N + shift)`, by Horner evaluation at the polynomial `N + shift`.
    pub fn shift(&self, shift: i64) -> PolynomialN {
        let x = PolynomialN::from_ints(&[shift, 1]);
        self.coeffs
            .iter()
            .rev()
            .fold(PolynomialN::zero(), |acc, c| {
                &(&acc * &x) + &PolynomialN::constant(c.clone())
            })
    }

    /// Rescales to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// Integer roots with multiplicity when the polynomial splits into linear
    /// factors over the integers; `None` otherwise.
    pub fn integer_roots(&self) -> Option<Vec<(i64, usize)>> {
        let mut ints = self.primitive_integer();
        if ints.is_empty() {
            return None;
        }
        let mut roots = Vec::new();
        let zeros = ints.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            roots.push((0, zeros));
            ints.drain(..zeros);
        }
        const SEARCH: i64 = 1000;
        for r in (-SEARCH..=SEARCH).filter(|&r| r != 0) {
            if !(&ints[0] % BigInt::from(r)).is_zero() {
                continue;
            }
            let mut mult = 0;
            while ints.len() > 1 {
                match divide_by_root(&ints, r) {
                    Some(q) => {
                        ints = q;
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                roots.push((r, mult));
            }
            if ints.len() <= 1 {
                break;
            }
        }
        if ints.len() > 1 {
            return None;
        }
        roots.sort();
        Some(roots)
    }
}

/// Synthetic division of an integer polynomial by `N - r`, if exact.
fn divide_by_root(coeffs: &[BigInt], r: i64) -> Option<Vec<BigInt>> {
    let r = BigInt::from(r);
    let d = coeffs.len() - 1;
    let mut q = vec![BigInt::zero(); d];
    let mut carry = BigInt::zero();
    for k in (0..=d).rev() {
        let v = &coeffs[k] + &carry * &r;
        if k == 0 {
            return v.is_zero().then_some(q);
        }
        q[k - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

impl Add for &PolynomialN {
    type Output = PolynomialN;
    fn add(self, rhs: &PolynomialN) -> PolynomialN {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolynomialN::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &PolynomialN {
    type Output = PolynomialN;
    fn sub(self, rhs: &PolynomialN) -> PolynomialN {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolynomialN::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &PolynomialN {
    type Output = PolynomialN;
    fn mul(self, rhs: &PolynomialN) -> PolynomialN {
        if self.is_zero() || rhs.is_zero() {
            return PolynomialN::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolynomialN::new(out)
    }
}

impl Neg for &PolynomialN {
    type Output = PolynomialN;
    fn neg(self) -> PolynomialN {
        PolynomialN::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for PolynomialN {
    /// Descending powers, e.g. `N^3 - N` or `(1/2)N^2 + (1/2)N`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let body = match k {
                0 => String::new(),
                1 => "N".to_string(),
                _ => format!("N^{k}"),
            };
            if k == 0 {
                f.write_str(&rational_to_string(&abs))?;
            } else if abs.is_one() {
                f.write_str(&body)?;
            } else if abs.is_integer() {
                write!(f, "{}{body}", abs.numer())?;
            } else {
                write!(f, "({}){body}", rational_to_string(&abs))?;
            }
        }
        Ok(())
    }
}
