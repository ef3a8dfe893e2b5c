//! Arithmetic in GF(2^n) for an explicit reduction polynomial.
//!
//! Elements are plain `u16` values interpreted against a [`Field`]; nothing
//! is global, so fields over different reduction polynomials coexist.

use crate::error::{Error, Result};
use crate::poly::BinaryPoly;
use crate::polyfind;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

/// Discrete-log tables with respect to the generator `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogTables {
    /// `antilog[k] = x^k` for `k` in `0..2^n - 1`.
    antilog: Vec<u16>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused and holds 0.
    log: Vec<u16>,
}

impl LogTables {
    /// Builds the tables by iterating powers of `x`. Fails unless `x`
    /// generates the whole multiplicative group.
    pub fn build(field: &Field) -> Result<Self> {
        let group = field.group_order() as usize;
        let mut antilog = Vec::with_capacity(group);
        let mut log = vec![0u16; group + 1];
        let mut seen = vec![false; group + 1];
        let generator = BinaryPoly::X.rem(field.reduction())?.bits() as u16;
        let mut e: u16 = 1;
        for k in 0..group {
            if seen[e as usize] {
                return Err(Error::NotPrimitive(field.reduction()));
            }
            seen[e as usize] = true;
            antilog.push(e);
            log[e as usize] = k as u16;
            e = mul_shift_xor(e, generator, field.reduction(), field.degree());
        }
        if e != 1 {
            return Err(Error::NotPrimitive(field.reduction()));
        }
        Ok(LogTables { antilog, log })
    }

    pub fn antilog(&self, k: usize) -> u16 {
        self.antilog[k % self.antilog.len()]
    }

    /// Exponent `k` with `x^k = a`, or `None` for zero.
    pub fn log(&self, a: u16) -> Option<u16> {
        if a == 0 {
            None
        } else {
            self.log.get(a as usize).copied()
        }
    }

    pub fn period(&self) -> usize {
        self.antilog.len()
    }
}

/// GF(2^n) fixed by an irreducible reduction polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    degree: u32,
    reduction: BinaryPoly,
    tables: Option<LogTables>,
}

impl Field {
    /// Validates irreducibility and builds log tables when `x` is primitive.
    pub fn new(reduction: BinaryPoly) -> Result<Self> {
        let degree = match reduction.deg() {
            Some(d) if (1..=MAX_DEGREE).contains(&d) => d,
            _ => {
                return Err(Error::domain(format!(
                    "reduction polynomial {reduction} must have degree 1..={MAX_DEGREE}"
                )))
            }
        };
        if !polyfind::is_irreducible_rabin(reduction)? {
            return Err(Error::Reducible(reduction));
        }
        let mut field = Field {
            degree,
            reduction,
            tables: None,
        };
        field.tables = LogTables::build(&field).ok();
        Ok(field)
    }

    /// Convenience constructor from a hex mask such as `0x11D`.
    pub fn from_mask(bits: u64) -> Result<Self> {
        Field::new(BinaryPoly::new(bits))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn reduction(&self) -> BinaryPoly {
        self.reduction
    }

    /// Number of field elements, `2^n`.
    pub fn size(&self) -> u32 {
        1 << self.degree
    }

    /// Order of the multiplicative group, `2^n - 1`.
    pub fn group_order(&self) -> u32 {
        self.size() - 1
    }

    pub fn is_primitive(&self) -> bool {
        self.tables.is_some()
    }

    pub fn log_tables(&self) -> Option<&LogTables> {
        self.tables.as_ref()
    }

    pub fn check(&self, a: u32) -> Result<u16> {
        if a < self.size() {
            Ok(a as u16)
        } else {
            Err(Error::OutOfRange {
                value: a,
                degree: self.degree,
            })
        }
    }

    pub fn add(&self, a: u32, b: u32) -> Result<u16> {
        Ok(self.check(a)? ^ self.check(b)?)
    }

    pub fn mul(&self, a: u32, b: u32) -> Result<u16> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(self.mul_elems(a, b))
    }

    /// Table product when available, shift-XOR otherwise. Inputs must
    /// already be in range.
    pub(crate) fn mul_elems(&self, a: u16, b: u16) -> u16 {
        match &self.tables {
            Some(t) if a != 0 && b != 0 => {
                let k = t.log[a as usize] as usize + t.log[b as usize] as usize;
                t.antilog(k)
            }
            Some(_) => 0,
            None => mul_shift_xor(a, b, self.reduction, self.degree),
        }
    }

    /// Shift-XOR product, independent of any tables.
    pub fn mul_naive(&self, a: u32, b: u32) -> Result<u16> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(mul_shift_xor(a, b, self.reduction, self.degree))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> Result<u16> {
        let mut base = self.check(a)?;
        let mut acc = 1u16;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_elems(acc, base);
            }
            base = self.mul_elems(base, base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Inverse by the extended Euclidean algorithm on polynomials.
    pub fn inv(&self, a: u32) -> Result<u16> {
        let a = self.check(a)?;
        if a == 0 {
            return Err(Error::NoInverse);
        }
        // invariant: s_i * a == r_i (mod reduction)
        let (mut r0, mut r1) = (self.reduction, BinaryPoly::new(a as u64));
        let (mut s0, mut s1) = (BinaryPoly::ZERO, BinaryPoly::ONE);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(r1)?;
            let s = s0.add(q.mul(s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // irreducible modulus: gcd is 1
        debug_assert_eq!(r0, BinaryPoly::ONE);
        Ok(s0.rem(self.reduction)?.bits() as u16)
    }

    /// Inverse as `a^(2^n - 2)`.
    pub fn inv_fermat(&self, a: u32) -> Result<u16> {
        if self.check(a)? == 0 {
            return Err(Error::NoInverse);
        }
        self.pow(a, u64::from(self.size()) - 2)
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u16> {
        let inv = self.inv(b)?;
        self.mul(a, u32::from(inv))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> Result<u64> {
        if self.check(a)? == 0 {
            return Err(Error::domain("element order is undefined for zero"));
        }
        let mut order = u64::from(self.group_order());
        for p in polyfind::prime_factors(order) {
            while order % p == 0 && self.pow(a, order / p)? == 1 {
                order /= p;
            }
        }
        Ok(order)
    }
}

/// Schoolbook product of two field elements reduced modulo `reduction`.
pub fn mul_shift_xor(a: u16, b: u16, reduction: BinaryPoly, degree: u32) -> u16 {
    let top = 1u32 << degree;
    let red = reduction.bits() as u32;
    let mut a = u32::from(a);
    let mut b = u32::from(b);
    let mut acc = 0u32;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= red;
        }
    }
    acc as u16
}
