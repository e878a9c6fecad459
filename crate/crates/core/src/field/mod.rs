//! Exact coefficient fields: ℚ, F_p and ℚ(t).

mod poly;
mod ratfun;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::literal::{self, LiteralContext, ParseError};

pub use poly::RationalPoly;
pub use ratfun::RatFun;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("field mismatch: {0} vs {1}")]
    SpecMismatch(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} has no transcendental t")]
    NoTranscendental(FieldSpec),
    #[error("{0} is not a polynomial in t after clearing denominators")]
    NotPolynomialAfterClearing(String),
    #[error("{value} is not representable in {spec}")]
    NotRepresentable { value: String, spec: FieldSpec },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown field descriptor {0:?}")]
    UnknownField(String),
}

/// Identifies a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
    RationalFunctions,
}

impl FieldSpec {
    /// `F_p`, checking that `p` is prime.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> FieldElement {
        match *self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::zero()),
            FieldSpec::PrimeField(p) => FieldElement::Residue { value: 0, p },
            FieldSpec::RationalFunctions => FieldElement::RationalFunction(RatFun::zero()),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_integer(&BigInt::from(n))
    }

    pub fn from_integer(&self, n: &BigInt) -> FieldElement {
        match *self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => FieldElement::Residue { value: reduce_mod(n, p), p },
            FieldSpec::RationalFunctions => {
                FieldElement::RationalFunction(RatFun::from_rational(&BigRational::from_integer(n.clone())))
            }
        }
    }

    /// Image of a rational number in this field; fails in F_p when `p`
    /// divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement, FieldError> {
        match *self {
            FieldSpec::Rationals => Ok(FieldElement::Rational(q.clone())),
            FieldSpec::RationalFunctions => Ok(FieldElement::RationalFunction(RatFun::from_rational(q))),
            FieldSpec::PrimeField(_) => {
                let num = self.from_integer(q.numer());
                let den = self.from_integer(q.denom());
                num.checked_div(&den).map_err(|_| FieldError::NotRepresentable {
                    value: q.to_string(),
                    spec: *self,
                })
            }
        }
    }

    /// The transcendental `t` of ℚ(t).
    pub fn t(&self) -> Result<FieldElement, FieldError> {
        match self {
            FieldSpec::RationalFunctions => Ok(FieldElement::RationalFunction(RatFun::t())),
            other => Err(FieldError::NoTranscendental(*other)),
        }
    }

    /// Parse a field literal: `p/q` fractions, integers, and for ℚ(t)
    /// expressions in `t` such as `(t^2+1)/(t-1)`.
    pub fn parse(&self, input: &str) -> Result<FieldElement, FieldError> {
        Ok(literal::parse(self, input)?)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
            FieldSpec::RationalFunctions => write!(f, "Q(t)"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "Q" | "QQ" | "rationals" => return Ok(FieldSpec::Rationals),
            "Q(t)" | "QQ(t)" | "rational_functions" => return Ok(FieldSpec::RationalFunctions),
            _ => {}
        }
        let digits = compact
            .strip_prefix("F_")
            .or_else(|| compact.strip_prefix('F'))
            .or_else(|| compact.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')));
        match digits.and_then(|d| d.parse::<u64>().ok()) {
            Some(p) => FieldSpec::prime(p),
            None => Err(FieldError::UnknownField(s.to_string())),
        }
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = FieldError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

/// An exact scalar. The variant determines the field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    /// Residue in `[0, p)`.
    Residue { value: u64, p: u64 },
    RationalFunction(RatFun),
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rationals,
            FieldElement::Residue { p, .. } => FieldSpec::PrimeField(*p),
            FieldElement::RationalFunction(_) => FieldSpec::RationalFunctions,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
            FieldElement::RationalFunction(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Residue { value, .. } => *value == 1,
            FieldElement::RationalFunction(r) => r.is_one(),
        }
    }

    fn mismatch(&self, other: &Self) -> FieldError {
        FieldError::SpecMismatch(self.spec(), other.spec())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        use FieldElement::*;
        Ok(match (self, other) {
            (Rational(a), Rational(b)) => Rational(a + b),
            (Residue { value: a, p }, Residue { value: b, p: q }) if p == q => {
                Residue { value: ((*a as u128 + *b as u128) % *p as u128) as u64, p: *p }
            }
            (RationalFunction(a), RationalFunction(b)) => RationalFunction(a.add(b)),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        use FieldElement::*;
        Ok(match (self, other) {
            (Rational(a), Rational(b)) => Rational(a * b),
            (Residue { value: a, p }, Residue { value: b, p: q }) if p == q => {
                Residue { value: mul_mod(*a, *b, *p), p: *p }
            }
            (RationalFunction(a), RationalFunction(b)) => RationalFunction(a.mul(b)),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        if self.spec() != other.spec() {
            return Err(self.mismatch(other));
        }
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::Residue { value, p } => {
                FieldElement::Residue { value: pow_mod(*value, p - 2, *p), p: *p }
            }
            FieldElement::RationalFunction(r) => {
                FieldElement::RationalFunction(r.inv().expect("nonzero"))
            }
        })
    }

    fn neg_ref(&self) -> Self {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(-q),
            FieldElement::Residue { value, p } => {
                FieldElement::Residue { value: if *value == 0 { 0 } else { p - value }, p: *p }
            }
            FieldElement::RationalFunction(r) => FieldElement::RationalFunction(r.neg()),
        }
    }

    /// True iff the element lies in the prime subfield: always for ℚ and
    /// F_p, and for ℚ(t) exactly the constant functions.
    pub fn is_prime_field_element(&self) -> bool {
        match self {
            FieldElement::Rational(_) | FieldElement::Residue { .. } => true,
            FieldElement::RationalFunction(r) => r.as_constant().is_some(),
        }
    }

    /// Rational value of an element of ℚ or a constant of ℚ(t).
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q.clone()),
            FieldElement::RationalFunction(r) => r.as_constant(),
            FieldElement::Residue { .. } => None,
        }
    }

    /// Coefficients of `clear · self` by ascending powers of `t`.
    ///
    /// Elements of ℚ are treated as constants of ℚ(t).
    pub fn expand_in_t(&self, clear: &RationalPoly) -> Result<Vec<BigRational>, FieldError> {
        let r = match self {
            FieldElement::RationalFunction(r) => r.clone(),
            FieldElement::Rational(q) => RatFun::from_rational(q),
            FieldElement::Residue { .. } => {
                return Err(FieldError::SpecMismatch(self.spec(), FieldSpec::RationalFunctions))
            }
        };
        let (q, rem) = r
            .numerator_poly()
            .mul(clear)
            .div_rem(&r.denominator_poly())
            .expect("denominator is nonzero");
        if !rem.is_zero() {
            return Err(FieldError::NotPolynomialAfterClearing(format!(
                "({}) * ({})",
                clear, self
            )));
        }
        Ok(q.coeffs().to_vec())
    }

    /// Denominator polynomial for ℚ(t) elements, `1` otherwise.
    pub fn denominator_in_t(&self) -> RationalPoly {
        match self {
            FieldElement::RationalFunction(r) => r.denominator_poly(),
            _ => RationalPoly::one(),
        }
    }

    /// Whether this prints as a single signed token, so it can prefix a word
    /// without parentheses.
    pub(crate) fn is_atomic(&self) -> bool {
        match self {
            FieldElement::Rational(_) | FieldElement::Residue { .. } => true,
            FieldElement::RationalFunction(r) => {
                let nonzero_terms = r.numerator().iter().filter(|c| !c.is_zero()).count();
                r.as_constant().is_some() || (r.is_polynomial() && nonzero_terms == 1)
            }
        }
    }

    /// Sign used when printing: true if the element prints with a leading `-`.
    pub(crate) fn prints_negative(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_negative(),
            FieldElement::Residue { .. } => false,
            FieldElement::RationalFunction(r) => {
                r.is_polynomial()
                    && r.numerator().iter().filter(|c| !c.is_zero()).count() == 1
                    && r.numerator().last().is_some_and(|c| c.is_negative())
            }
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{q}"),
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
            FieldElement::RationalFunction(r) => write!(f, "{r}"),
        }
    }
}

macro_rules! panicking_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);
panicking_op!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl LiteralContext for FieldSpec {
    type Value = FieldElement;

    fn integer(&self, n: BigInt) -> Result<FieldElement, String> {
        Ok(self.from_integer(&n))
    }

    fn symbol(&self, name: &str) -> Result<FieldElement, String> {
        match (self, name) {
            (FieldSpec::RationalFunctions, "t") => Ok(FieldElement::RationalFunction(RatFun::t())),
            _ => Err(format!("unknown symbol {name:?} in {self}")),
        }
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, String> {
        a.checked_add(b).map_err(|e| e.to_string())
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, String> {
        a.checked_sub(b).map_err(|e| e.to_string())
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, String> {
        a.checked_mul(b).map_err(|e| e.to_string())
    }

    fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, String> {
        a.checked_div(b).map_err(|e| e.to_string())
    }

    fn neg(&self, a: &FieldElement) -> Result<FieldElement, String> {
        Ok(-a)
    }
}

fn reduce_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
