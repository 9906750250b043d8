use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::ratfunc::RationalFunctionN;
use super::{rational_to_string, BigRational};
use crate::error::{Result, WgError};

/// A truncated expansion `Σ_{k=e}^{order} c_k N^{-k}`.
///
/// `coefficients[j]` is the coefficient of `N^{-(leading_exponent + j)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    leading_exponent: i64,
    coefficients: Vec<BigRational>,
    order: i64,
}

impl LaurentSeries {
    pub fn new(leading_exponent: i64, coefficients: Vec<BigRational>, order: i64) -> Result<Self> {
        if order < leading_exponent {
            return Err(WgError::OrderBelowLeading {
                order,
                leading: leading_exponent,
            });
        }
        let mut coefficients = coefficients;
        coefficients.resize((order - leading_exponent + 1) as usize, BigRational::zero());
        Ok(LaurentSeries {
            leading_exponent,
            coefficients,
            order,
        })
    }

    /// Builds a series from sparse terms `k ↦ c_k` (coefficient of `N^{-k}`),
    /// dropping terms beyond `order` and trimming leading zeros.
    pub fn from_terms(terms: &BTreeMap<i64, BigRational>, order: i64) -> Self {
        let first = terms
            .iter()
            .find(|(k, c)| **k <= order && !c.is_zero())
            .map(|(k, _)| *k)
            .unwrap_or(order);
        let coefficients = (first..=order)
            .map(|k| terms.get(&k).cloned().unwrap_or_else(BigRational::zero))
            .collect();
        LaurentSeries {
            leading_exponent: first,
            coefficients,
            order,
        }
    }

    pub fn leading_exponent(&self) -> i64 {
        self.leading_exponent
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    /// Coefficient of `N^{-k}`; `None` beyond the truncation order.
    pub fn coefficient(&self, k: i64) -> Option<BigRational> {
        if k > self.order {
            None
        } else if k < self.leading_exponent {
            Some(BigRational::zero())
        } else {
            Some(self.coefficients[(k - self.leading_exponent) as usize].clone())
        }
    }

    /// Coefficients of `N^{-from}, ..., N^{-to}`.
    pub fn coefficient_range(&self, from: i64, to: i64) -> Option<Vec<BigRational>> {
        (from..=to).map(|k| self.coefficient(k)).collect()
    }

    /// True when both series are known through `N^{-through}` and agree there.
    pub fn agrees_through(&self, other: &LaurentSeries, through: i64) -> bool {
        if self.order < through || other.order < through {
            return false;
        }
        let start = self.leading_exponent.min(other.leading_exponent);
        (start..=through).all(|k| self.coefficient(k) == other.coefficient(k))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }
}

/// Expands `f` in powers of `1/N` through `N^{-order}` by exact long
/// division of the coefficient-reversed numerator by the reversed denominator.
pub fn laurent_expand(f: &RationalFunctionN, order: i64) -> Result<LaurentSeries> {
    let (Some(dn), Some(dd)) = (f.numerator().degree(), f.denominator().degree()) else {
        return LaurentSeries::new(order, vec![BigRational::zero()], order);
    };
    let leading = dd as i64 - dn as i64;
    if order < leading {
        return Err(WgError::OrderBelowLeading { order, leading });
    }
    let terms = (order - leading + 1) as usize;
    let rev = |p: &super::PolynomialN, d: usize, i: usize| {
        if i <= d {
            p.coeff(d - i)
        } else {
            BigRational::zero()
        }
    };
    let q0 = f.denominator().leading();
    let mut c: Vec<BigRational> = Vec::with_capacity(terms);
    for j in 0..terms {
        let mut acc = rev(f.numerator(), dn, j);
        for i in 1..=j.min(dd) {
            acc -= rev(f.denominator(), dd, i) * &c[j - i];
        }
        c.push(acc / &q0);
    }
    LaurentSeries::new(leading, c, order)
}

impl fmt::Display for LaurentSeries {
    /// `-N^-3 + 4N^-4 + O(N^-6)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.leading_exponent + j as i64;
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let power = match k {
                0 => String::new(),
                _ => format!("N^{}", -k),
            };
            if power.is_empty() {
                f.write_str(&rational_to_string(&abs))?;
            } else if abs.is_one() {
                f.write_str(&power)?;
            } else {
                write!(f, "{}*{power}", rational_to_string(&abs))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(N^{})", -(self.order + 1))
    }
}

impl Serialize for LaurentSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LaurentSeries", 3)?;
        st.serialize_field("leading_exponent", &self.leading_exponent)?;
        let coeffs: Vec<String> = self.coefficients.iter().map(rational_to_string).collect();
        st.serialize_field("coefficients", &coeffs)?;
        st.serialize_field("order", &self.order)?;
        st.end()
    }
}
