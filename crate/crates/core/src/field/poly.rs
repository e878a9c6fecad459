//! Dense univariate polynomials in `t` with rational coefficients.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// A polynomial in `t` over ℚ, coefficients stored by ascending power.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector and equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·t^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        RationalPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let lead = divisor.leading_coeff()?.clone();
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        let (q, _) = self.mul(other).div_rem(&g).expect("gcd is nonzero");
        q.monic()
    }

    /// Scale to integer coefficients with content 1 and positive leading
    /// coefficient. Zero maps to the empty vector.
    pub fn primitive_integer_part(&self) -> Vec<BigInt> {
        let Some(lc) = self.leading_coeff() else {
            return Vec::new();
        };
        let denom_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if lc.is_negative() { -BigInt::one() } else { BigInt::one() };
        let content = content * sign;
        for c in ints.iter_mut() {
            *c = &*c / &content;
        }
        ints
    }
}

pub(crate) fn fmt_poly_in(
    coeffs: &[BigRational],
    var: &str,
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    if coeffs.iter().all(|c| c.is_zero()) {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let unit = abs.is_one();
        match (k, unit) {
            (0, _) => write!(f, "{abs}")?,
            (_, true) => {}
            (_, false) => write!(f, "{abs}*")?,
        }
        match k {
            0 => {}
            1 => write!(f, "{var}")?,
            _ => write!(f, "{var}^{k}")?,
        }
    }
    Ok(())
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly_in(&self.coeffs, "t", f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> RationalPoly {
        RationalPoly::new(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn division_with_remainder() {
        // t^2 + 1 = (t - 1)(t + 1) + 2
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert_eq!(r, p(&[2]));
        assert!(p(&[1]).div_rem(&p(&[])).is_none());
    }

    #[test]
    fn gcd_is_monic() {
        let a = p(&[-2, 0, 2]); // 2(t-1)(t+1)
        let b = p(&[3, -3]); // -3(t-1)
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[]).gcd(&p(&[0, 4])), p(&[0, 1]));
    }

    #[test]
    fn lcm_of_coprime_is_product() {
        assert_eq!(p(&[0, 1]).lcm(&p(&[-1, 1])), p(&[0, -1, 1]));
    }

    #[test]
    fn primitive_part() {
        let half = BigRational::new(1.into(), 2.into());
        let poly = RationalPoly::new(vec![half.clone(), -half * BigRational::from_integer(3.into())]);
        let ints: Vec<i64> = poly
            .primitive_integer_part()
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(ints, vec![-1, 3]);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 1]).to_string(), "t^2 + 1");
        assert_eq!(p(&[-1, 1]).to_string(), "t - 1");
        assert_eq!(p(&[0, -2]).to_string(), "-2*t");
        assert_eq!(p(&[]).to_string(), "0");
    }
}
