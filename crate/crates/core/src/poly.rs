//! Polynomials over GF(2) packed into a machine word.
//!
//! Bit `k` of the mask is the coefficient of `x^k`. Products are kept within
//! 64 bits, so ring operations accept operands of degree at most 31.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Degree of a polynomial; the zero polynomial has degree negative infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial over GF(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BinaryPoly(u64);

/// Largest operand degree accepted by the ring operations.
pub const MAX_RING_DEGREE: u32 = 31;

#[allow(clippy::should_implement_trait)]
impl BinaryPoly {
    pub const ZERO: BinaryPoly = BinaryPoly(0);
    pub const ONE: BinaryPoly = BinaryPoly(1);
    pub const X: BinaryPoly = BinaryPoly(2);

    pub const fn new(bits: u64) -> Self {
        BinaryPoly(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn degree(self) -> Degree {
        match self.deg() {
            None => Degree::NegInfinity,
            Some(d) => Degree::Finite(d),
        }
    }

    /// Degree as an option, `None` for the zero polynomial.
    pub fn deg(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros())
        }
    }

    pub fn coeff(self, k: u32) -> bool {
        k < 64 && (self.0 >> k) & 1 == 1
    }

    pub fn add(self, other: Self) -> Self {
        BinaryPoly(self.0 ^ other.0)
    }

    /// Carry-less product. Both operands must have degree at most 31.
    pub fn mul(self, other: Self) -> Self {
        debug_assert!(self.deg().unwrap_or(0) <= MAX_RING_DEGREE);
        debug_assert!(other.deg().unwrap_or(0) <= MAX_RING_DEGREE);
        let mut acc = 0u64;
        let mut a = self.0;
        let mut b = other.0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            a <<= 1;
            b >>= 1;
        }
        BinaryPoly(acc)
    }

    /// Quotient and remainder of polynomial long division.
    pub fn div_rem(self, divisor: Self) -> Result<(Self, Self)> {
        let dd = divisor
            .deg()
            .ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        let mut rem = self.0;
        let mut quot = 0u64;
        while rem != 0 {
            let rd = 63 - rem.leading_zeros();
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            quot |= 1 << shift;
            rem ^= divisor.0 << shift;
        }
        Ok((BinaryPoly(quot), BinaryPoly(rem)))
    }

    pub fn rem(self, modulus: Self) -> Result<Self> {
        self.div_rem(modulus).map(|(_, r)| r)
    }

    pub fn gcd(self, other: Self) -> Self {
        let (mut a, mut b) = (self, other);
        while !b.is_zero() {
            // b is nonzero, so division cannot fail
            let r = a.rem(b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    /// `self * other mod modulus`; operands are reduced first.
    pub fn mul_mod(self, other: Self, modulus: Self) -> Result<Self> {
        let a = self.rem(modulus)?;
        let b = other.rem(modulus)?;
        a.mul(b).rem(modulus)
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(self, mut e: u64, modulus: Self) -> Result<Self> {
        let mut base = self.rem(modulus)?;
        let mut acc = BinaryPoly::ONE.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base).rem(modulus)?;
            }
            base = base.mul(base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `x^(2^k) mod modulus` by `k` repeated squarings.
    pub fn x_pow_two_pow_mod(k: u32, modulus: Self) -> Result<Self> {
        let mut acc = BinaryPoly::X.rem(modulus)?;
        for _ in 0..k {
            acc = acc.mul(acc).rem(modulus)?;
        }
        Ok(acc)
    }

    /// Monomial form, e.g. `x^8+x^4+x^3+x^2+1`.
    pub fn to_monomial_string(self) -> String {
        if self.0 == 0 {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for k in (0..64).rev() {
            if self.coeff(k) {
                terms.push(match k {
                    0 => "1".to_string(),
                    1 => "x".to_string(),
                    _ => format!("x^{k}"),
                });
            }
        }
        terms.join("+")
    }

    /// Hex mask form, e.g. `0x11D`.
    pub fn to_hex_string(self) -> String {
        format!("{:#X}", self.0).replacen("0X", "0x", 1)
    }

    fn parse_monomials(s: &str) -> Result<Self> {
        let mut bits = 0u64;
        for term in s.split('+') {
            let term = term.trim();
            let k: u32 = match term {
                "1" => 0,
                "x" | "X" => 1,
                "0" => continue,
                _ => {
                    let exp = term
                        .strip_prefix("x^")
                        .or_else(|| term.strip_prefix("X^"))
                        .ok_or_else(|| Error::Format(format!("bad monomial `{term}`")))?;
                    exp.trim()
                        .parse()
                        .map_err(|_| Error::Format(format!("bad exponent in `{term}`")))?
                }
            };
            if k >= 64 {
                return Err(Error::Format(format!("exponent {k} exceeds 63")));
            }
            if bits & (1 << k) != 0 {
                return Err(Error::Format(format!("repeated monomial x^{k}")));
            }
            bits |= 1 << k;
        }
        Ok(BinaryPoly(bits))
    }
}

impl fmt::Display for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_monomial_string())
    }
}

impl fmt::LowerHex for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

impl fmt::UpperHex for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::UpperHex::fmt(&self.0, f)
    }
}

/// Accepts `0x`-prefixed hex masks and `+`-joined monomial strings.
impl FromStr for BinaryPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            return u64::from_str_radix(hex, 16)
                .map(BinaryPoly)
                .map_err(|e| Error::Format(format!("bad hex polynomial `{s}`: {e}")));
        }
        if s.is_empty() {
            return Err(Error::Format("empty polynomial".into()));
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        Self::parse_monomials(&compact)
    }
}
