//! Univariate polynomials in the genus symbol `g` with exact rational
//! coefficients. Coefficients are stored constant-term first with no
//! trailing zeros, so equality of values is equality of representations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Turn a rational into the wire form used everywhere in this crate:
/// `"num/den"`, or just `"num"` when the denominator is 1.
pub fn rat_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse the `rat_string` form back into a rational.
pub fn parse_rat(s: &str) -> Result<BigRational> {
    let mk_err = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| mk_err())?;
            let d: BigInt = d.parse().map_err(|_| mk_err())?;
            if d.is_zero() {
                return Err(mk_err());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

pub fn rat_i64(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyG {
    /// coeffs[d] is the coefficient of g^d; no trailing zeros.
    coeffs: Vec<BigRational>,
}

impl PolyG {
    pub fn zero() -> Self {
        PolyG { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyG::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = PolyG { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = PolyG { coeffs };
        p.trim();
        p
    }

    /// Convenience constructor from integer coefficients, constant first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        PolyG::from_coeffs(coeffs.iter().map(|&c| rat_i64(c)).collect())
    }

    pub fn monomial(coeff: BigRational, degree: usize) -> Self {
        if coeff.is_zero() {
            return PolyG::zero();
        }
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = coeff;
        PolyG { coeffs }
    }

    /// The linear factor `2g + c`.
    pub fn two_g_plus(c: i64) -> Self {
        PolyG::from_ints(&[c, 2])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> BigRational {
        self.coeffs.get(degree).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, g: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * g + c;
        }
        acc
    }

    pub fn eval_int(&self, g: i64) -> BigRational {
        self.eval(&rat_i64(g))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return PolyG::zero();
        }
        PolyG::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PolyG::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient and remainder of exact rational division.
    pub fn divrem(&self, d: &PolyG) -> (PolyG, PolyG) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let dd = d.degree().unwrap();
        let lead = d.leading_coeff();
        let mut quot = vec![
            BigRational::zero();
            self.coeffs.len().saturating_sub(d.coeffs.len()) + 1
        ];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let q = rem.leading_coeff() / &lead;
            let shift = rd - dd;
            quot[shift] = q.clone();
            let step = &PolyG::monomial(q, shift) * d;
            rem = &rem - &step;
        }
        (PolyG::from_coeffs(quot), rem)
    }

    /// Some(quotient) when `d` divides exactly, None otherwise.
    pub fn exact_div(&self, d: &PolyG) -> Option<PolyG> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Wire form: rational strings, constant term first. Zero is `[]`.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rat_string).collect()
    }

    pub fn from_coeff_strings(strs: &[String]) -> Result<Self> {
        let coeffs = strs.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?;
        Ok(PolyG::from_coeffs(coeffs))
    }

    pub fn product<I: IntoIterator<Item = PolyG>>(factors: I) -> Self {
        factors.into_iter().fold(PolyG::one(), |acc, f| &acc * &f)
    }
}

impl fmt::Debug for PolyG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyG({self})")
    }
}

impl fmt::Display for PolyG {
    /// Highest degree first, e.g. `4g^2 - 4g` or `(3/2)g + 1`; zero is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for d in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[d];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_part = if mag.is_one() && d > 0 {
                String::new()
            } else if mag.denom().is_one() {
                mag.numer().to_string()
            } else {
                format!("({})", rat_string(&mag))
            };
            match d {
                0 => write!(f, "{}", if coeff_part.is_empty() { "1".into() } else { coeff_part })?,
                1 => write!(f, "{coeff_part}g")?,
                _ => write!(f, "{coeff_part}g^{d}")?,
            }
        }
        Ok(())
    }
}

impl Add for &PolyG {
    type Output = PolyG;
    fn add(self, rhs: &PolyG) -> PolyG {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for d in 0..n {
            coeffs.push(self.coeff(d) + rhs.coeff(d));
        }
        PolyG::from_coeffs(coeffs)
    }
}

impl Sub for &PolyG {
    type Output = PolyG;
    fn sub(self, rhs: &PolyG) -> PolyG {
        self + &(-rhs)
    }
}

impl Neg for &PolyG {
    type Output = PolyG;
    fn neg(self) -> PolyG {
        PolyG {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PolyG {
    type Output = PolyG;
    fn mul(self, rhs: &PolyG) -> PolyG {
        if self.is_zero() || rhs.is_zero() {
            return PolyG::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolyG::from_coeffs(coeffs)
    }
}

// Owned-value versions so PolyG can satisfy num_traits::{Zero, One} and be
// used as a sparse-vector coefficient ring.
impl Add for PolyG {
    type Output = PolyG;
    fn add(self, rhs: PolyG) -> PolyG {
        &self + &rhs
    }
}

impl Sub for PolyG {
    type Output = PolyG;
    fn sub(self, rhs: PolyG) -> PolyG {
        &self - &rhs
    }
}

impl Neg for PolyG {
    type Output = PolyG;
    fn neg(self) -> PolyG {
        -&self
    }
}

impl Mul for PolyG {
    type Output = PolyG;
    fn mul(self, rhs: PolyG) -> PolyG {
        &self * &rhs
    }
}

impl Zero for PolyG {
    fn zero() -> Self {
        PolyG::zero()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl One for PolyG {
    fn one() -> Self {
        PolyG::one()
    }
    fn is_one(&self) -> bool {
        self.is_one()
    }
}
