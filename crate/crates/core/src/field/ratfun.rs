//! Elements of ℚ(t) in canonical integer form.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::poly::{fmt_poly_in, RationalPoly};

/// A rational function `num(t) / den(t)`.
///
/// Canonical form: both polynomials have integer coefficients, they are
/// coprime in ℚ[t], the gcd of all their integer coefficients is 1 and the
/// leading coefficient of `den` is positive. Zero is `0 / 1`. Two values are
/// equal as functions iff they are equal as structs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Vec<BigInt>,
    den: Vec<BigInt>,
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun { num: Vec::new(), den: vec![BigInt::one()] }
    }

    pub fn one() -> Self {
        Self::from_rational(&BigRational::one())
    }

    /// The transcendental `t`.
    pub fn t() -> Self {
        RatFun { num: vec![BigInt::zero(), BigInt::one()], den: vec![BigInt::one()] }
    }

    pub fn from_rational(c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun { num: vec![c.numer().clone()], den: vec![c.denom().clone()] }
    }

    pub fn from_poly(p: &RationalPoly) -> Self {
        Self::normalize(p.clone(), RationalPoly::one())
    }

    /// Build `num / den`, reducing to canonical form. `None` if `den = 0`.
    pub fn from_polys(num: &RationalPoly, den: &RationalPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::reduce(num.clone(), den.clone()))
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.den
    }

    pub fn numerator_poly(&self) -> RationalPoly {
        RationalPoly::from_integers(&self.num)
    }

    pub fn denominator_poly(&self) -> RationalPoly {
        RationalPoly::from_integers(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num.len() == 1 && self.den.len() == 1 && self.num[0] == self.den[0]
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.len() == 1
    }

    /// The rational value, when this is a constant function.
    pub fn as_constant(&self) -> Option<BigRational> {
        match (self.num.len(), self.den.len()) {
            (0, _) => Some(BigRational::zero()),
            (1, 1) => Some(BigRational::new(self.num[0].clone(), self.den[0].clone())),
            _ => None,
        }
    }

    fn reduce(num: RationalPoly, den: RationalPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            return Self::normalize(num, den);
        }
        let g = num.gcd(&den);
        if g.is_constant() {
            return Self::normalize(num, den);
        }
        let (n, _) = num.div_rem(&g).expect("gcd nonzero");
        let (d, _) = den.div_rem(&g).expect("gcd nonzero");
        Self::normalize(n, d)
    }

    // Assumes num and den are already coprime.
    fn normalize(num: RationalPoly, den: RationalPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let denom_lcm = num
            .coeffs()
            .iter()
            .chain(den.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scale = |p: &RationalPoly| -> Vec<BigInt> {
            p.coeffs()
                .iter()
                .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
                .collect()
        };
        let mut n = scale(&num);
        let mut d = scale(&den);
        let mut content = n.iter().chain(d.iter()).fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if d.last().expect("nonzero denominator").is_negative() {
            content = -content;
        }
        if !content.is_one() {
            for c in n.iter_mut().chain(d.iter_mut()) {
                *c = &*c / &content;
            }
        }
        RatFun { num: n, den: d }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (n1, d1) = (self.numerator_poly(), self.denominator_poly());
        let (n2, d2) = (other.numerator_poly(), other.denominator_poly());
        if self.den == other.den {
            return Self::reduce(n1.add(&n2), d1);
        }
        Self::reduce(n1.mul(&d2).add(&n2.mul(&d1)), d1.mul(&d2))
    }

    pub fn neg(&self) -> Self {
        RatFun { num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (n1, d1) = (self.numerator_poly(), self.denominator_poly());
        let (n2, d2) = (other.numerator_poly(), other.denominator_poly());
        if d1.is_constant() && d2.is_constant() {
            return Self::normalize(n1.mul(&n2), d1.mul(&d2));
        }
        // Cross-cancel: n1/d1 and n2/d2 are each reduced.
        let g1 = n1.gcd(&d2);
        let g2 = n2.gcd(&d1);
        let div = |p: RationalPoly, g: &RationalPoly| p.div_rem(g).expect("gcd nonzero").0;
        let num = div(n1, &g1).mul(&div(n2, &g2));
        let den = div(d1, &g2).mul(&div(d2, &g1));
        Self::normalize(num, den)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut num = self.den.clone();
        let mut den = self.num.clone();
        if den.last().expect("nonzero").is_negative() {
            num.iter_mut().chain(den.iter_mut()).for_each(|c| *c = -&*c);
        }
        Some(RatFun { num, den })
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inv()?))
    }

    /// Degree in `t` of numerator and denominator.
    pub fn degrees(&self) -> (usize, usize) {
        (self.num.len().saturating_sub(1), self.den.len() - 1)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_constant() {
            return write!(f, "{c}");
        }
        let to_rat = |v: &[BigInt]| -> Vec<BigRational> {
            v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        let num = to_rat(&self.num);
        let num_terms = num.iter().filter(|c| !c.is_zero()).count();
        if self.den.len() == 1 && self.den[0].is_one() {
            return fmt_poly_in(&num, "t", f);
        }
        if num_terms > 1 {
            write!(f, "(")?;
            fmt_poly_in(&num, "t", f)?;
            write!(f, ")")?;
        } else {
            fmt_poly_in(&num, "t", f)?;
        }
        write!(f, "/")?;
        let den = to_rat(&self.den);
        let den_terms = den.iter().filter(|c| !c.is_zero()).count();
        if den_terms > 1 || (den.len() > 1 && !den.last().unwrap().is_one()) {
            write!(f, "(")?;
            fmt_poly_in(&den, "t", f)?;
            write!(f, ")")
        } else {
            fmt_poly_in(&den, "t", f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> RationalPoly {
        RationalPoly::new(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFun::from_polys(&poly(n), &poly(d)).unwrap()
    }

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn cancels_common_factor() {
        // (t^2 - 1)/(t - 1) = t + 1
        let r = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(ints(r.numerator()), vec![1, 1]);
        assert_eq!(ints(r.denominator()), vec![1]);
    }

    #[test]
    fn denominator_sign_and_content() {
        // (2t)/(-4t - 6) = -t/(2t + 3)
        let r = rf(&[0, 2], &[-6, -4]);
        assert_eq!(ints(r.numerator()), vec![0, -1]);
        assert_eq!(ints(r.denominator()), vec![3, 2]);
    }

    #[test]
    fn rational_content_is_cleared() {
        // (t/2) / 1 stored as t / 2
        let half_t = RationalPoly::new(vec![BigRational::zero(), BigRational::new(1.into(), 2.into())]);
        let r = RatFun::from_polys(&half_t, &RationalPoly::one()).unwrap();
        assert_eq!(ints(r.numerator()), vec![0, 1]);
        assert_eq!(ints(r.denominator()), vec![2]);
    }

    #[test]
    fn t_over_t_is_one() {
        let t = RatFun::t();
        assert!(t.div(&t).unwrap().is_one());
        assert_eq!(t.div(&t).unwrap(), RatFun::one());
    }

    #[test]
    fn arithmetic_round_trips() {
        let a = rf(&[1, 0, 1], &[-1, 1]);
        let b = rf(&[2, 3], &[1]);
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
        assert!(a.sub(&a).is_zero());
        assert!(RatFun::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(rf(&[1, 0, 1], &[-1, 1]).to_string(), "(t^2 + 1)/(t - 1)");
        assert_eq!(rf(&[1], &[0, 1]).to_string(), "1/t");
        assert_eq!(rf(&[3, 2], &[1]).to_string(), "2*t + 3");
        assert_eq!(rf(&[-7], &[3]).to_string(), "-7/3");
        assert_eq!(rf(&[0, 1], &[2]).to_string(), "t/2");
    }
}
