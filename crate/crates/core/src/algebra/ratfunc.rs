use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::PolynomialN;
use super::{rational_to_string, BigRational};
use crate::error::{Result, WgError};

/// A reduced rational function of `N` with monic denominator, so that
/// equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunctionN {
    num: PolynomialN,
    den: PolynomialN,
}

impl RationalFunctionN {
    pub fn new(num: PolynomialN, den: PolynomialN) -> Result<Self> {
        if den.is_zero() {
            return Err(WgError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: PolynomialN, den: PolynomialN) -> Self {
        if num.is_zero() {
            return RationalFunctionN {
                num,
                den: PolynomialN::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = BigRational::one() / den.leading();
        RationalFunctionN {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn zero() -> Self {
        RationalFunctionN {
            num: PolynomialN::zero(),
            den: PolynomialN::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(PolynomialN::one())
    }

    pub fn from_poly(p: PolynomialN) -> Self {
        RationalFunctionN {
            num: p,
            den: PolynomialN::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(PolynomialN::constant(c))
    }

    /// `c / ∏ (N - r)` over the given integer roots.
    pub fn from_roots(c: BigRational, roots: &[i64]) -> Self {
        let den = roots.iter().fold(PolynomialN::one(), |acc, &r| {
            &acc * &PolynomialN::linear_root(r)
        });
        Self::reduce(PolynomialN::constant(c), den)
    }

    pub fn numerator(&self) -> &PolynomialN {
        &self.num
    }

    pub fn denominator(&self) -> &PolynomialN {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        RationalFunctionN::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RationalFunctionN) -> Result<Self> {
        if rhs.is_zero() {
            return Err(WgError::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    /// Value at a rational point; fails at a pole.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(WgError::Pole(rational_to_string(x)));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_int(&self, n: i64) -> Result<BigRational> {
        self.eval(&BigRational::from_integer(n.into()))
    }

    /// `f(N + shift)`.
    pub fn substitute_shift(&self, shift: i64) -> Self {
        Self::reduce(self.num.shift(shift), self.den.shift(shift))
    }

    /// `p/q` with both sides expanded, e.g. `-1/(N^3 - N)`.
    pub fn to_expanded_string(&self) -> String {
        if self.den.is_one() {
            return self.num.to_string();
        }
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }

    /// Integer-root factored form when both numerator and denominator split
    /// over the integers, e.g. `-1/((N - 1)N(N + 1))`; expanded otherwise.
    pub fn to_factored_string(&self) -> String {
        let num = factored(&self.num);
        let den = factored(&self.den);
        match (num, den) {
            (Some(n), Some(d)) => {
                if self.den.is_one() {
                    n
                } else {
                    let n = if n.contains(' ') && !n.starts_with('(') {
                        format!("({n})")
                    } else {
                        n
                    };
                    let single = d == "N"
                        || (d.starts_with('(') && d.ends_with(')') && d.matches('(').count() == 1);
                    if single {
                        format!("{n}/{d}")
                    } else {
                        format!("{n}/({d})")
                    }
                }
            }
            _ => self.to_expanded_string(),
        }
    }
}

fn wrap(p: &PolynomialN) -> String {
    let s = p.to_string();
    if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
        format!("({s})")
    } else {
        s
    }
}

fn factored(p: &PolynomialN) -> Option<String> {
    if p.is_zero() {
        return Some("0".into());
    }
    if p.degree() == Some(0) {
        return Some(rational_to_string(&p.leading()));
    }
    let roots = p.integer_roots()?;
    let lead = p.leading();
    let mut s = String::new();
    if lead == -BigRational::one() {
        s.push('-');
    } else if !lead.is_one() {
        s.push_str(&rational_to_string(&lead));
    }
    for (r, mult) in roots.into_iter().rev() {
        let base = match r.signum() {
            0 => "N".to_string(),
            1 => format!("(N - {r})"),
            _ => format!("(N + {})", r.abs()),
        };
        s.push_str(&base);
        if mult > 1 {
            s.push_str(&format!("^{mult}"));
        }
    }
    Some(s)
}

impl fmt::Display for RationalFunctionN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expanded_string())
    }
}

impl Add for &RationalFunctionN {
    type Output = RationalFunctionN;
    fn add(self, rhs: &RationalFunctionN) -> RationalFunctionN {
        RationalFunctionN::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunctionN {
    type Output = RationalFunctionN;
    fn sub(self, rhs: &RationalFunctionN) -> RationalFunctionN {
        RationalFunctionN::reduce(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunctionN {
    type Output = RationalFunctionN;
    fn mul(self, rhs: &RationalFunctionN) -> RationalFunctionN {
        RationalFunctionN::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunctionN {
    type Output = Result<RationalFunctionN>;
    fn div(self, rhs: &RationalFunctionN) -> Result<RationalFunctionN> {
        self.checked_div(rhs)
    }
}

impl Neg for &RationalFunctionN {
    type Output = RationalFunctionN;
    fn neg(self) -> RationalFunctionN {
        RationalFunctionN {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(c: i64, roots: &[i64]) -> RationalFunctionN {
        RationalFunctionN::from_roots(BigRational::from_integer(c.into()), roots)
    }

    fn inv_n() -> RationalFunctionN {
        r(1, &[0])
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&inv_n() + &RationalFunctionN::zero(), inv_n());
        assert_eq!(&r(1, &[1]) * &r(1, &[-1]), r(1, &[1, -1]));
        assert_eq!(
            RationalFunctionN::new(PolynomialN::one(), PolynomialN::from_ints(&[-1, 0, 1]))
                .unwrap(),
            r(1, &[1, -1])
        );
        let eq3 = &(&r(1, &[1]) * &r(1, &[0])) * &r(1, &[-1]);
        assert_eq!(-&eq3, r(-1, &[1, 0, -1]));
        assert_eq!(
            (&r(1, &[0]) / &RationalFunctionN::zero()),
            Err(WgError::DivisionByZero)
        );
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let f = RationalFunctionN::new(
            PolynomialN::from_ints(&[-2, 2]),
            PolynomialN::from_ints(&[-3, 2, 1]),
        )
        .unwrap(); // 2(N-1)/((N-1)(N+3))
        assert_eq!(f, r(2, &[-3]));
        assert!(f.denominator().leading().is_one());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(inv_n().substitute_shift(1), r(1, &[-1]));
        assert_eq!(r(-1, &[1, 0, -2]).substitute_shift(1), r(-1, &[0, -1, -3]));
        assert_eq!(r(-1, &[1, 0, -2]).substitute_shift(0), r(-1, &[1, 0, -2]));
    }

    #[test]
    fn formatting() {
        let eq3 = r(-1, &[1, 0, -1]);
        assert_eq!(eq3.to_expanded_string(), "-1/(N^3 - N)");
        assert_eq!(eq3.to_factored_string(), "-1/((N - 1)N(N + 1))");
        assert_eq!(
            r(-1, &[0, -1, -3]).to_factored_string(),
            "-1/(N(N + 1)(N + 3))"
        );
        assert_eq!(r(2, &[2, 2]).to_factored_string(), "2/((N - 2)^2)");
        assert_eq!(r(1, &[-1]).to_factored_string(), "1/(N + 1)");
        assert_eq!(inv_n().to_factored_string(), "1/N");
        assert_eq!(inv_n().to_expanded_string(), "1/N");
        assert_eq!(
            RationalFunctionN::from_poly(PolynomialN::from_ints(&[0, 1, 1])).to_string(),
            "N^2 + N"
        );
    }

    #[test]
    fn eval_and_poles() {
        let eq3 = r(-1, &[1, 0, -1]);
        assert_eq!(
            eq3.eval_int(3).unwrap(),
            BigRational::new((-1).into(), 24.into())
        );
        assert!(eq3.eval_int(1).is_err());
    }
}
