//! Exact arithmetic in the fraction field of finite-support generalized
//! polynomials in `t` with rational exponents and rational coefficients.
//!
//! A element is positive when the coefficient of its smallest exponent is
//! positive; this orders the field. The valuation of a nonzero element is
//! minus its smallest exponent, and the signed valuation tags it with the
//! sign of the leading coefficient.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::semiring::{Rat, SignedTrop, Trop};

/// A finite-support generalized polynomial: a sum of terms `c · t^q` with
/// rational `c != 0` and rational exponents `q`, kept sorted by ascending
/// exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenPoly {
    terms: Vec<(Rat, Rat)>,
}

impl GenPoly {
    pub fn zero() -> Self {
        GenPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        GenPoly::monomial(Rat::one(), Rat::zero())
    }

    pub fn monomial(coeff: Rat, exponent: Rat) -> Self {
        if coeff.is_zero() {
            GenPoly::zero()
        } else {
            GenPoly { terms: vec![(exponent, coeff)] }
        }
    }

    pub fn from_terms(mut terms: Vec<(Rat, Rat)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Rat, Rat)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        GenPoly { terms: merged }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Rat, Rat)] {
        &self.terms
    }

    /// Smallest exponent, when nonzero.
    pub fn min_exp(&self) -> Option<&Rat> {
        self.terms.first().map(|(e, _)| e)
    }

    /// Leading coefficient: the coefficient of the smallest exponent.
    pub fn lc(&self) -> Rat {
        self.terms.first().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &GenPoly) -> GenPoly {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        let terms = terms.into_iter().map(|(e, c)| (e, c)).collect();
        GenPoly::from_terms(terms)
    }

    pub fn neg(&self) -> GenPoly {
        GenPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &GenPoly) -> GenPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &GenPoly) -> GenPoly {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                terms.push((ea + eb, ca * cb));
            }
        }
        GenPoly::from_terms(terms)
    }

    /// Exact division by the monomial `c · t^e`.
    fn div_monomial(&self, c: &Rat, e: &Rat) -> GenPoly {
        GenPoly { terms: self.terms.iter().map(|(te, tc)| (te - e, tc / c)).collect() }
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "t^{e}")?;
            } else {
                write!(f, "{mag}*t^{e}")?;
            }
        }
        Ok(())
    }
}

/// Attempted division by zero in the Puiseux field.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("division by zero in the Puiseux field")]
pub struct DivisionByZero;

/// An element of the fraction field: `num / den` with the denominator
/// normalized to leading coefficient 1 and smallest exponent 0. The zero
/// element is `0 / 1`.
#[derive(Debug, Clone)]
pub struct PuiseuxNum {
    num: GenPoly,
    den: GenPoly,
}

impl PuiseuxNum {
    pub fn new(num: GenPoly, den: GenPoly) -> Result<Self, DivisionByZero> {
        if den.is_zero() {
            return Err(DivisionByZero);
        }
        if num.is_zero() {
            return Ok(PuiseuxNum { num, den: GenPoly::one() });
        }
        let lc = den.lc();
        let e = den.min_exp().expect("nonzero").clone();
        Ok(PuiseuxNum { num: num.div_monomial(&lc, &e), den: den.div_monomial(&lc, &e) })
    }

    pub fn zero() -> Self {
        PuiseuxNum { num: GenPoly::zero(), den: GenPoly::one() }
    }

    pub fn one() -> Self {
        PuiseuxNum { num: GenPoly::one(), den: GenPoly::one() }
    }

    pub fn from_rat(r: Rat) -> Self {
        PuiseuxNum { num: GenPoly::monomial(r, Rat::zero()), den: GenPoly::one() }
    }

    pub fn from_int(i: i64) -> Self {
        PuiseuxNum::from_rat(crate::semiring::rat(i))
    }

    /// `c · t^e`.
    pub fn monomial(coeff: Rat, exponent: Rat) -> Self {
        PuiseuxNum { num: GenPoly::monomial(coeff, exponent), den: GenPoly::one() }
    }

    /// `t^e`.
    pub fn t_pow(exponent: Rat) -> Self {
        PuiseuxNum::monomial(Rat::one(), exponent)
    }

    pub fn num(&self) -> &GenPoly {
        &self.num
    }

    pub fn den(&self) -> &GenPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Leading coefficient; the denominator is monic so this is the leading
    /// coefficient of the numerator.
    pub fn lc(&self) -> Rat {
        self.num.lc()
    }

    pub fn is_positive(&self) -> bool {
        self.lc().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.lc().is_negative()
    }

    /// Valuation: minus the smallest exponent, `-inf` for zero.
    pub fn val(&self) -> Trop {
        match self.num.min_exp() {
            None => Trop::NegInf,
            Some(e) => Trop::Fin(-e),
        }
    }

    /// Signed valuation: the valuation tagged with the sign of the leading
    /// coefficient.
    pub fn sval(&self) -> SignedTrop {
        match self.num.min_exp() {
            None => SignedTrop::Zero,
            Some(e) => {
                if self.lc().is_positive() {
                    SignedTrop::Pos(-e)
                } else {
                    SignedTrop::Neg(-e)
                }
            }
        }
    }

    pub fn add(&self, other: &PuiseuxNum) -> PuiseuxNum {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        PuiseuxNum::new(num, den).expect("product of nonzero denominators is nonzero")
    }

    pub fn neg(&self) -> PuiseuxNum {
        PuiseuxNum { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &PuiseuxNum) -> PuiseuxNum {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PuiseuxNum) -> PuiseuxNum {
        PuiseuxNum::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("product of nonzero denominators is nonzero")
    }

    pub fn div(&self, other: &PuiseuxNum) -> Result<PuiseuxNum, DivisionByZero> {
        PuiseuxNum::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }
}

impl PartialEq for PuiseuxNum {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for PuiseuxNum {}

impl PartialOrd for PuiseuxNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PuiseuxNum {
    fn cmp(&self, other: &Self) -> Ordering {
        // denominators are normalized positive, so the sign of the
        // difference is the sign of the cross-multiplied numerator
        let diff = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        diff.lc().cmp(&Rat::zero())
    }
}

impl fmt::Display for PuiseuxNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == GenPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
