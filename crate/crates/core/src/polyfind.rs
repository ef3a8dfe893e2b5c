//! Irreducibility and primitivity tests, closed-form counts, and enumeration
//! of degree-n polynomials over GF(2).

use crate::error::{Error, Result};
use crate::poly::{BinaryPoly, MAX_RING_DEGREE};

/// Classification of one monic polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyClassification {
    pub poly: BinaryPoly,
    pub irreducible: bool,
    pub primitive: bool,
    /// Order of `x` modulo `poly`; present iff `poly` is irreducible.
    pub order: Option<u64>,
}

impl PolyClassification {
    /// One TSV row: hex mask, monomial form, irreducible, primitive, order.
    pub fn tsv_row(&self) -> String {
        let flag = |b: bool| if b { "yes" } else { "no" };
        let order = self
            .order
            .map_or_else(|| "-".to_string(), |o| o.to_string());
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.poly.to_hex_string(),
            self.poly,
            flag(self.irreducible),
            flag(self.primitive),
            order
        )
    }
}

/// Distinct prime divisors in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn mobius(n: u64) -> i32 {
    if n == 1 {
        return 1;
    }
    let mut m = n;
    let mut sign = 1;
    for p in prime_factors(n) {
        m /= p;
        if m.is_multiple_of(p) {
            return 0;
        }
        sign = -sign;
    }
    sign
}

pub fn totient(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

fn ring_degree(f: BinaryPoly) -> Result<u32> {
    match f.deg() {
        None | Some(0) => Err(Error::domain(format!(
            "irreducibility is undefined for constant polynomial {f}"
        ))),
        Some(d) if d > MAX_RING_DEGREE => Err(Error::domain(format!(
            "degree {d} exceeds supported maximum {MAX_RING_DEGREE}"
        ))),
        Some(d) => Ok(d),
    }
}

/// Rabin's irreducibility test over GF(2).
pub fn is_irreducible_rabin(f: BinaryPoly) -> Result<bool> {
    let n = ring_degree(f)?;
    for p in prime_factors(u64::from(n)) {
        let h = BinaryPoly::x_pow_two_pow_mod(n / p as u32, f)?;
        let diff = h.add(BinaryPoly::X.rem(f)?);
        if f.gcd(diff) != BinaryPoly::ONE {
            return Ok(false);
        }
    }
    Ok(BinaryPoly::x_pow_two_pow_mod(n, f)? == BinaryPoly::X.rem(f)?)
}

/// Trial division by every polynomial of degree at most `n / 2`.
pub fn is_irreducible_trial(f: BinaryPoly) -> bool {
    let n = match f.deg() {
        None | Some(0) => return false,
        Some(d) => d,
    };
    for g in 2u64..(1u64 << (n / 2 + 1)) {
        let g = BinaryPoly::new(g);
        if g.deg().unwrap_or(0) >= 1 && f.rem(g).expect("nonzero divisor").is_zero() {
            return false;
        }
    }
    true
}

/// Order of `x` modulo an irreducible `f`, using the factorisation of `2^n - 1`.
pub fn order_of_x_irreducible(f: BinaryPoly) -> Result<u64> {
    let n = ring_degree(f)?;
    if n == 1 && f == BinaryPoly::X {
        return Err(Error::domain("x is zero modulo x"));
    }
    let mut order = (1u64 << n) - 1;
    for p in prime_factors(order) {
        while order.is_multiple_of(p) && BinaryPoly::X.pow_mod(order / p, f)? == BinaryPoly::ONE {
            order /= p;
        }
    }
    Ok(order)
}

/// Order of `x` in the quotient ring GF(2)[x]/(f), which need not be a field.
/// `None` when `x` is not a unit (constant term zero).
pub fn order_of_x_in_ring(f: BinaryPoly) -> Result<Option<u64>> {
    let n = ring_degree(f)?;
    if !f.coeff(0) {
        return Ok(None);
    }
    let limit = 1u64 << n;
    let mut e = BinaryPoly::X.rem(f)?;
    for k in 1..=limit {
        if e == BinaryPoly::ONE {
            return Ok(Some(k));
        }
        e = e.mul(BinaryPoly::X).rem(f)?;
    }
    Ok(None)
}

pub fn is_primitive(f: BinaryPoly) -> Result<bool> {
    let n = ring_degree(f)?;
    if !is_irreducible_rabin(f)? || f == BinaryPoly::X {
        return Ok(false);
    }
    Ok(order_of_x_irreducible(f)? == (1u64 << n) - 1)
}

pub fn classify(f: BinaryPoly) -> Result<PolyClassification> {
    let n = ring_degree(f)?;
    let irreducible = is_irreducible_rabin(f)?;
    let order = if irreducible && f != BinaryPoly::X {
        Some(order_of_x_irreducible(f)?)
    } else {
        None
    };
    Ok(PolyClassification {
        poly: f,
        irreducible,
        primitive: order == Some((1u64 << n) - 1),
        order,
    })
}

/// Number of monic irreducible polynomials of degree `n` over GF(p).
pub fn count_irreducible(n: u32, p: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::domain("degree must be at least 1"));
    }
    if p < 2 || prime_factors(p) != [p] {
        return Err(Error::domain(format!("characteristic {p} is not prime")));
    }
    let mut sum: i128 = 0;
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let term = u128::from(p)
            .checked_pow(n / d)
            .ok_or_else(|| Error::domain("p^n overflows"))?;
        sum += i128::from(mobius(u64::from(d))) * term as i128;
    }
    Ok((sum / i128::from(n)) as u128)
}

/// Number of primitive polynomials of degree `n` over GF(q): `phi(q^n - 1) / n`.
pub fn count_primitive(n: u32, q: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::domain("degree must be at least 1"));
    }
    let size = q
        .checked_pow(n)
        .ok_or_else(|| Error::domain("q^n overflows"))?;
    if q < 2 {
        return Err(Error::domain("field size must be at least 2"));
    }
    Ok(u128::from(totient(size - 1)) / u128::from(n))
}

/// Classifies every candidate of degree `n` with nonzero constant term
/// (plus `x` itself when `n = 1`), sorted by mask.
pub fn enumerate_classified(n: u32) -> Result<Vec<PolyClassification>> {
    if !(1..=16).contains(&n) {
        return Err(Error::domain(format!("degree {n} outside 1..=16")));
    }
    let top = 1u64 << n;
    let mut out = Vec::with_capacity(1 << (n - 1));
    if n == 1 {
        out.push(classify(BinaryPoly::X)?);
    }
    for low in (1..top).step_by(2) {
        out.push(classify(BinaryPoly::new(top | low))?);
    }
    Ok(out)
}
