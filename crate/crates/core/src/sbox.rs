//! Byte substitution boxes from linear fractional transformations
//! `g(z) = (az + b) / (cz + d)` over GF(2^8).

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2n::Field;
use crate::golden::{self, PRIMITIVE_DEGREE8};

/// Coefficients of an LFT together with the primitive polynomial `p_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LftParams {
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub d: u8,
    /// `1..=16`, indexing [`PRIMITIVE_DEGREE8`].
    pub poly_index: usize,
}

impl LftParams {
    pub fn new(coeffs: [u8; 4], poly_index: usize) -> Self {
        let [a, b, c, d] = coeffs;
        LftParams {
            a,
            b,
            c,
            d,
            poly_index,
        }
    }

    pub fn coeffs(&self) -> [u8; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn field(&self) -> Result<Field> {
        let poly = golden::primitive_poly(self.poly_index).ok_or_else(|| {
            Error::domain(format!(
                "polynomial index {} outside 1..={}",
                self.poly_index,
                PRIMITIVE_DEGREE8.len()
            ))
        })?;
        Field::new(poly)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Lft(LftParams),
    External,
}

/// Duplicated and missing values of a 256-entry table.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BijectivityReport {
    /// `(value, occurrences)` for every value seen more than once.
    pub duplicated: Vec<(u8, usize)>,
    pub missing: Vec<u8>,
}

impl BijectivityReport {
    pub fn scan(table: &[u8; 256]) -> Self {
        let mut counts = [0usize; 256];
        for &v in table {
            counts[v as usize] += 1;
        }
        let mut report = BijectivityReport::default();
        for (v, &n) in counts.iter().enumerate() {
            match n {
                0 => report.missing.push(v as u8),
                1 => {}
                _ => report.duplicated.push((v as u8, n)),
            }
        }
        report
    }

    pub fn is_bijective(&self) -> bool {
        self.duplicated.is_empty() && self.missing.is_empty()
    }
}

impl fmt::Display for BijectivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dup: Vec<String> = self
            .duplicated
            .iter()
            .map(|(v, n)| format!("{v}x{n}"))
            .collect();
        let missing: Vec<String> = if self.missing.len() > 16 {
            vec![format!("{} values", self.missing.len())]
        } else {
            self.missing.iter().map(u8::to_string).collect()
        };
        write!(
            f,
            "duplicated [{}], missing [{}]",
            dup.join(", "),
            missing.join(", ")
        )
    }
}

/// A bijective 8-bit S-box with its inverse.
#[derive(Clone, PartialEq, Eq)]
pub struct SBox {
    table: [u8; 256],
    inverse: [u8; 256],
    provenance: Provenance,
}

impl fmt::Debug for SBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SBox")
            .field("provenance", &self.provenance)
            .field("table[..8]", &&self.table[..8])
            .finish()
    }
}

impl SBox {
    fn from_bijection(table: [u8; 256], provenance: Provenance) -> Result<Self> {
        let inverse = invert_table(&table)?;
        Ok(SBox {
            table,
            inverse,
            provenance,
        })
    }

    pub fn identity() -> Self {
        let mut table = [0u8; 256];
        for (i, t) in table.iter_mut().enumerate() {
            *t = i as u8;
        }
        SBox {
            table,
            inverse: table,
            provenance: Provenance::Lft(LftParams::new([1, 0, 0, 1], 1)),
        }
    }

    pub fn table(&self) -> &[u8; 256] {
        &self.table
    }

    pub fn inverse_table(&self) -> &[u8; 256] {
        &self.inverse
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    #[inline]
    pub fn apply(&self, v: u8) -> u8 {
        self.table[v as usize]
    }

    #[inline]
    pub fn apply_inverse(&self, v: u8) -> u8 {
        self.inverse[v as usize]
    }

    /// The S-box whose table is this one's inverse.
    pub fn inverted(&self) -> SBox {
        SBox {
            table: self.inverse,
            inverse: self.table,
            provenance: self.provenance,
        }
    }

    /// Text form: 16 lines of 16 space-separated decimal bytes.
    pub fn to_text(&self) -> String {
        table_to_text(&self.table)
    }
}

pub fn table_to_text(table: &[u8; 256]) -> String {
    let mut out = String::with_capacity(256 * 4);
    for row in table.chunks(16) {
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Inverse permutation of a bijective table.
pub fn invert_table(table: &[u8; 256]) -> Result<[u8; 256]> {
    let report = BijectivityReport::scan(table);
    if !report.is_bijective() {
        return Err(Error::NotBijective(report));
    }
    let mut inverse = [0u8; 256];
    for (i, &v) in table.iter().enumerate() {
        inverse[v as usize] = i as u8;
    }
    Ok(inverse)
}

/// Inverse S-box; fails on a non-bijective table with the duplicate scan.
pub fn invert_sbox(s: &SBox) -> Result<SBox> {
    SBox::from_bijection(s.inverse, s.provenance)
}

/// Evaluates `g(z) = (az + b)/(cz + d)` on every byte. The pole `z = d/c`
/// (when `c != 0`) is sent to `g(inf) = a/c`, which keeps the map a bijection.
pub fn build_sbox(params: LftParams) -> Result<SBox> {
    let field = params.field()?;
    let [a, b, c, d] = params.coeffs().map(u32::from);
    if field.mul(a, d)? ^ field.mul(b, c)? == 0 {
        return Err(Error::Degenerate {
            poly: field.reduction(),
        });
    }
    let at_infinity = if c != 0 { Some(field.div(a, c)?) } else { None };
    let mut table = [0u8; 256];
    for z in 0..256u32 {
        let num = field.mul(a, z)? ^ b as u16;
        let den = field.mul(c, z)? ^ d as u16;
        let g = if den == 0 {
            // den vanishes only at the pole, which needs c != 0
            at_infinity.expect("pole requires c != 0")
        } else {
            field.div(u32::from(num), u32::from(den))?
        };
        table[z as usize] = g as u8;
    }
    SBox::from_bijection(table, Provenance::Lft(params))
}

/// One S-box per primitive polynomial `p_1 ..= p_16`.
pub fn build_family(coeffs: [u8; 4]) -> Result<Vec<SBox>> {
    build_family_for(coeffs, &(1..=PRIMITIVE_DEGREE8.len()).collect::<Vec<_>>())
}

/// S-boxes for a chosen list of polynomial indices.
pub fn build_family_for(coeffs: [u8; 4], indices: &[usize]) -> Result<Vec<SBox>> {
    indices
        .iter()
        .map(|&i| build_sbox(LftParams::new(coeffs, i)))
        .collect()
}

/// Accepts exactly 256 bytes; non-bijective input yields the duplicate scan.
pub fn load_external_sbox(raw: &[u8]) -> Result<SBox> {
    let table: [u8; 256] = raw
        .try_into()
        .map_err(|_| Error::Format(format!("S-box needs exactly 256 bytes, got {}", raw.len())))?;
    SBox::from_bijection(table, Provenance::External)
}

/// Parses either the binary 256-byte form or the 16x16 decimal text form.
pub fn parse_sbox_bytes(raw: &[u8]) -> Result<[u8; 256]> {
    if raw.len() == 256 {
        return Ok(raw.try_into().expect("length checked"));
    }
    let text = std::str::from_utf8(raw)
        .map_err(|_| Error::Format("S-box file is neither 256 raw bytes nor text".into()))?;
    let mut values = Vec::with_capacity(256);
    for (lineno, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            let v: u8 = tok.parse().map_err(|_| {
                Error::Format(format!("line {}: `{tok}` is not a byte", lineno + 1))
            })?;
            values.push(v);
        }
    }
    values
        .as_slice()
        .try_into()
        .map_err(|_| Error::Format(format!("expected 256 values, found {}", values.len())))
}

/// Per-entry comparison of the canonical `p_1` S-box with the published table.
#[derive(Debug, Clone)]
pub struct PublishedAudit {
    pub canonical: [u8; 256],
    pub published: [u8; 256],
    pub published_scan: BijectivityReport,
    pub matching_entries: usize,
}

impl PublishedAudit {
    pub fn run() -> Result<Self> {
        let params = LftParams::new(golden::DEFAULT_LFT, 1);
        let canonical = *build_sbox(params)?.table();
        let published = golden::PUBLISHED_SBOX;
        let matching_entries = canonical
            .iter()
            .zip(published.iter())
            .filter(|(a, b)| a == b)
            .count();
        Ok(PublishedAudit {
            canonical,
            published,
            published_scan: BijectivityReport::scan(&published),
            matching_entries,
        })
    }

    /// `(z, canonical, published)` for every differing entry.
    pub fn deltas(&self) -> Vec<(u8, u8, u8)> {
        (0..256)
            .filter(|&z| self.canonical[z] != self.published[z])
            .map(|z| (z as u8, self.canonical[z], self.published[z]))
            .collect()
    }
}
