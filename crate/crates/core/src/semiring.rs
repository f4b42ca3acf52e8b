//! Exact arithmetic for the tropical semiring `T = R ∪ {-inf}`, the signed
//! tropical numbers `S`, and the symmetrized semiring `S±` with balanced
//! elements.
//!
//! All moduli are exact rationals. `-inf` is a dedicated variant, never a
//! sentinel value; `+inf` does not exist in any of these types (it only
//! appears in the pivot module's step-length type).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational scalar. `BigRational` keeps `gcd(num, den) = 1, den > 0`.
pub type Rat = BigRational;

/// Convenience constructor for integral rationals.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Convenience constructor for `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a rational from an integer literal, a `p/q` pair, or a decimal
/// string such as `-3.25`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator {p:?}: {e}"))?;
        let den = BigInt::from_str(q.trim()).map_err(|e| format!("bad denominator {q:?}: {e}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int: BigInt = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int_part).map_err(|e| format!("bad number {s:?}: {e}"))?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal {s:?}"));
        }
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = BigInt::from_str(frac_part).map_err(|e| format!("bad decimal {s:?}: {e}"))?;
        let total = &int * &scale + if negative { -frac } else { frac };
        return Ok(Rat::new(total, scale));
    }
    BigInt::from_str(s)
        .map(Rat::from_integer)
        .map_err(|e| format!("bad number {s:?}: {e}"))
}

/// Attempted inversion of the tropical zero.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("inversion of the tropical zero element")]
pub struct InversionOfZero;

/// An element of `T = R ∪ {-inf}` with `max` as addition and `+` as
/// multiplication. `NegInf` is the additive identity and absorbing for `⊙`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trop {
    NegInf,
    Fin(Rat),
}

impl Trop {
    pub fn zero() -> Self {
        Trop::NegInf
    }

    pub fn one() -> Self {
        Trop::Fin(Rat::zero())
    }

    pub fn fin(n: i64) -> Self {
        Trop::Fin(rat(n))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Trop::NegInf)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_zero()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Trop::NegInf => None,
            Trop::Fin(r) => Some(r),
        }
    }

    /// Tropical addition `max(self, other)`.
    pub fn tadd(&self, other: &Trop) -> Trop {
        std::cmp::max(self, other).clone()
    }

    /// Tropical multiplication `self + other`, absorbing on `-inf`.
    pub fn tmul(&self, other: &Trop) -> Trop {
        match (self, other) {
            (Trop::Fin(a), Trop::Fin(b)) => Trop::Fin(a + b),
            _ => Trop::NegInf,
        }
    }
}

impl From<Rat> for Trop {
    fn from(r: Rat) -> Self {
        Trop::Fin(r)
    }
}

impl fmt::Display for Trop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trop::NegInf => write!(f, "-inf"),
            Trop::Fin(r) => write!(f, "{r}"),
        }
    }
}

/// Sign of a signed tropical number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
    Zero,
}

/// Sign of a symmetrized tropical number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymSign {
    Pos,
    Neg,
    Balanced,
    Zero,
}

/// A signed tropical number: one of the two copies of `T` glued at `-inf`.
/// The sign is `Zero` exactly when the modulus is `-inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SignedTrop {
    Zero,
    Pos(Rat),
    Neg(Rat),
}

impl SignedTrop {
    pub fn zero() -> Self {
        SignedTrop::Zero
    }

    pub fn one() -> Self {
        SignedTrop::Pos(Rat::zero())
    }

    pub fn pos(n: i64) -> Self {
        SignedTrop::Pos(rat(n))
    }

    pub fn neg(n: i64) -> Self {
        SignedTrop::Neg(rat(n))
    }

    pub fn from_trop(t: &Trop) -> Self {
        match t {
            Trop::NegInf => SignedTrop::Zero,
            Trop::Fin(r) => SignedTrop::Pos(r.clone()),
        }
    }

    pub fn sign(&self) -> Sign {
        match self {
            SignedTrop::Zero => Sign::Zero,
            SignedTrop::Pos(_) => Sign::Pos,
            SignedTrop::Neg(_) => Sign::Neg,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SignedTrop::Zero)
    }

    pub fn modulus(&self) -> Trop {
        match self {
            SignedTrop::Zero => Trop::NegInf,
            SignedTrop::Pos(r) | SignedTrop::Neg(r) => Trop::Fin(r.clone()),
        }
    }

    /// Positive part `x⁺`.
    pub fn pos_part(&self) -> Trop {
        match self {
            SignedTrop::Pos(r) => Trop::Fin(r.clone()),
            _ => Trop::NegInf,
        }
    }

    /// Negative part `x⁻`.
    pub fn neg_part(&self) -> Trop {
        match self {
            SignedTrop::Neg(r) => Trop::Fin(r.clone()),
            _ => Trop::NegInf,
        }
    }

    /// Reflection `⊖x`.
    pub fn reflect(&self) -> SignedTrop {
        match self {
            SignedTrop::Zero => SignedTrop::Zero,
            SignedTrop::Pos(r) => SignedTrop::Neg(r.clone()),
            SignedTrop::Neg(r) => SignedTrop::Pos(r.clone()),
        }
    }

    /// Multiplication, closed on signed numbers.
    pub fn mul(&self, other: &SignedTrop) -> SignedTrop {
        match (self, other) {
            (SignedTrop::Zero, _) | (_, SignedTrop::Zero) => SignedTrop::Zero,
            (SignedTrop::Pos(a), SignedTrop::Pos(b)) | (SignedTrop::Neg(a), SignedTrop::Neg(b)) => {
                SignedTrop::Pos(a + b)
            }
            (SignedTrop::Pos(a), SignedTrop::Neg(b)) | (SignedTrop::Neg(a), SignedTrop::Pos(b)) => {
                SignedTrop::Neg(a + b)
            }
        }
    }

    /// Multiplicative inverse: modulus negated, sign preserved.
    pub fn inv(&self) -> Result<SignedTrop, InversionOfZero> {
        match self {
            SignedTrop::Zero => Err(InversionOfZero),
            SignedTrop::Pos(r) => Ok(SignedTrop::Pos(-r)),
            SignedTrop::Neg(r) => Ok(SignedTrop::Neg(-r)),
        }
    }

    pub fn sym(&self) -> SymTrop {
        SymTrop::from(self.clone())
    }
}

impl fmt::Display for SignedTrop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignedTrop::Zero => write!(f, "-inf"),
            SignedTrop::Pos(r) => write!(f, "{r}"),
            SignedTrop::Neg(r) => write!(f, "⊖{r}"),
        }
    }
}

/// An element of the symmetrized tropical semiring: a signed tropical number
/// or a balanced element `a•`. `Bal(a)` represents the sum `a ⊕ (⊖a)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SymTrop {
    Zero,
    Pos(Rat),
    Neg(Rat),
    Bal(Rat),
}

impl SymTrop {
    pub fn zero() -> Self {
        SymTrop::Zero
    }

    pub fn one() -> Self {
        SymTrop::Pos(Rat::zero())
    }

    pub fn pos(n: i64) -> Self {
        SymTrop::Pos(rat(n))
    }

    pub fn neg(n: i64) -> Self {
        SymTrop::Neg(rat(n))
    }

    pub fn bal(n: i64) -> Self {
        SymTrop::Bal(rat(n))
    }

    pub fn sign(&self) -> SymSign {
        match self {
            SymTrop::Zero => SymSign::Zero,
            SymTrop::Pos(_) => SymSign::Pos,
            SymTrop::Neg(_) => SymSign::Neg,
            SymTrop::Bal(_) => SymSign::Balanced,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SymTrop::Zero)
    }

    pub fn is_balanced(&self) -> bool {
        matches!(self, SymTrop::Bal(_))
    }

    pub fn modulus(&self) -> Trop {
        match self {
            SymTrop::Zero => Trop::NegInf,
            SymTrop::Pos(r) | SymTrop::Neg(r) | SymTrop::Bal(r) => Trop::Fin(r.clone()),
        }
    }

    /// Addition: the maximum modulus wins; equal maxima of opposite sign, or
    /// any balanced contribution at the maximum, balance the result.
    pub fn add(&self, other: &SymTrop) -> SymTrop {
        match (self, other) {
            (SymTrop::Zero, x) | (x, SymTrop::Zero) => x.clone(),
            _ => {
                let a = self.modulus();
                let b = other.modulus();
                match a.cmp(&b) {
                    std::cmp::Ordering::Greater => self.clone(),
                    std::cmp::Ordering::Less => other.clone(),
                    std::cmp::Ordering::Equal => {
                        let m = match a {
                            Trop::Fin(r) => r,
                            Trop::NegInf => unreachable!("zero handled above"),
                        };
                        match (self.sign(), other.sign()) {
                            (SymSign::Pos, SymSign::Pos) => SymTrop::Pos(m),
                            (SymSign::Neg, SymSign::Neg) => SymTrop::Neg(m),
                            _ => SymTrop::Bal(m),
                        }
                    }
                }
            }
        }
    }

    /// Multiplication: moduli add, signs multiply (balanced absorbs signs,
    /// zero absorbs everything).
    pub fn mul(&self, other: &SymTrop) -> SymTrop {
        let m = match (self.modulus(), other.modulus()) {
            (Trop::Fin(a), Trop::Fin(b)) => a + b,
            _ => return SymTrop::Zero,
        };
        match (self.sign(), other.sign()) {
            (SymSign::Balanced, _) | (_, SymSign::Balanced) => SymTrop::Bal(m),
            (SymSign::Pos, SymSign::Pos) | (SymSign::Neg, SymSign::Neg) => SymTrop::Pos(m),
            _ => SymTrop::Neg(m),
        }
    }

    /// Reflection `⊖x`; fixes balanced numbers.
    pub fn reflect(&self) -> SymTrop {
        match self {
            SymTrop::Pos(r) => SymTrop::Neg(r.clone()),
            SymTrop::Neg(r) => SymTrop::Pos(r.clone()),
            other => other.clone(),
        }
    }

    /// `x ⊖ y`.
    pub fn sub(&self, other: &SymTrop) -> SymTrop {
        self.add(&other.reflect())
    }

    /// The balance relation `x ∇ y`: true iff `x ⊖ y` is balanced or zero.
    pub fn balances(&self, other: &SymTrop) -> bool {
        matches!(self.sub(other).sign(), SymSign::Balanced | SymSign::Zero)
    }

    pub fn as_signed(&self) -> Option<SignedTrop> {
        match self {
            SymTrop::Zero => Some(SignedTrop::Zero),
            SymTrop::Pos(r) => Some(SignedTrop::Pos(r.clone())),
            SymTrop::Neg(r) => Some(SignedTrop::Neg(r.clone())),
            SymTrop::Bal(_) => None,
        }
    }
}

impl From<SignedTrop> for SymTrop {
    fn from(s: SignedTrop) -> Self {
        match s {
            SignedTrop::Zero => SymTrop::Zero,
            SignedTrop::Pos(r) => SymTrop::Pos(r),
            SignedTrop::Neg(r) => SymTrop::Neg(r),
        }
    }
}

impl fmt::Display for SymTrop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymTrop::Zero => write!(f, "-inf"),
            SymTrop::Pos(r) => write!(f, "{r}"),
            SymTrop::Neg(r) => write!(f, "⊖{r}"),
            SymTrop::Bal(r) => write!(f, "{r}•"),
        }
    }
}

/// Renders a rational in the instance-file convention: a bare integer when
/// the denominator is one, else `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
