//! Exact rationals, polynomials and rational functions in the dimension
//! `N`, and their expansions in `1/N`.

mod laurent;
mod poly;
mod ratfunc;

pub use laurent::{laurent_expand, LaurentSeries};
pub use num_rational::BigRational;
pub use poly::PolynomialN;
pub use ratfunc::RationalFunctionN;

use num_bigint::BigInt;

use crate::error::{Result, WgError};

/// `"p/q"`, or `"p"` for integers.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || WgError::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d == BigInt::from(0) {
                return Err(WgError::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(rational_to_string(&frac(-2, 4)), "-1/2");
        assert_eq!(rational_to_string(&int(7)), "7");
        assert_eq!(parse_rational("3/-6").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
