//! Published reference data, embedded verbatim.
//!
//! The primitive list fixes the numbering `p_1 ..= p_16` used throughout the
//! crate. The published S-box is kept exactly as printed, including its
//! repeated entries, and is only ever used as comparison data.

use crate::poly::BinaryPoly;

/// One row of the published degree-8 classification table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedPolyRow {
    pub mask: u16,
    pub irreducible: bool,
    pub primitive: bool,
}

const fn row(mask: u16, primitive: bool) -> PublishedPolyRow {
    PublishedPolyRow {
        mask,
        irreducible: true,
        primitive,
    }
}

/// The 30 irreducible degree-8 polynomials in published order.
pub const PUBLISHED_POLY_TABLE: [PublishedPolyRow; 30] = [
    row(0x1B1, false), // x^8+x^7+x^5+x^4+1
    row(0x11D, true),  // x^8+x^4+x^3+x^2+1
    row(0x12B, true),  // x^8+x^5+x^3+x+1
    row(0x1DD, false), // x^8+x^7+x^6+x^4+x^3+x^2+1
    row(0x177, false), // x^8+x^6+x^5+x^4+x^2+x+1
    row(0x1F9, false), // x^8+x^7+x^6+x^5+x^4+x^3+1
    row(0x12D, true),  // x^8+x^5+x^3+x^2+1
    row(0x15F, true),  // x^8+x^6+x^4+x^3+x^2+x+1
    row(0x11B, false), // x^8+x^4+x^3+x+1
    row(0x1C3, true),  // x^8+x^7+x^6+x+1
    row(0x165, true),  // x^8+x^6+x^5+x^2+1
    row(0x17B, false), // x^8+x^6+x^5+x^4+x^3+x+1
    row(0x187, true),  // x^8+x^7+x^2+x+1
    row(0x1BD, false), // x^8+x^7+x^5+x^4+x^3+x^2+1
    row(0x18D, true),  // x^8+x^7+x^3+x^2+1
    row(0x1F5, true),  // x^8+x^7+x^6+x^5+x^4+x^2+1
    row(0x13F, false), // x^8+x^5+x^4+x^3+x^2+x+1
    row(0x1E7, true),  // x^8+x^7+x^6+x^5+x^2+x+1
    row(0x1D7, false), // x^8+x^7+x^6+x^4+x^2+x+1
    row(0x14D, true),  // x^8+x^6+x^3+x^2+1
    row(0x19F, false), // x^8+x^7+x^4+x^3+x^2+x+1
    row(0x1CF, true),  // x^8+x^7+x^6+x^3+x^2+x+1
    row(0x1F3, false), // x^8+x^7+x^6+x^5+x^4+x+1
    row(0x163, true),  // x^8+x^6+x^5+x+1
    row(0x139, false), // x^8+x^5+x^4+x^3+1
    row(0x169, true),  // x^8+x^6+x^5+x^3+1
    row(0x1A3, false), // x^8+x^7+x^5+x+1
    row(0x171, true),  // x^8+x^6+x^5+x^4+1
    row(0x18B, false), // x^8+x^7+x^3+x+1
    row(0x1A9, true),  // x^8+x^7+x^5+x^3+1
];

/// The 16 primitive degree-8 polynomials; index `i` holds `p_{i+1}`.
pub const PRIMITIVE_DEGREE8: [u16; 16] = [
    0x11D, 0x12B, 0x12D, 0x15F, 0x1C3, 0x165, 0x187, 0x18D, 0x1F5, 0x1E7, 0x14D, 0x1CF, 0x163,
    0x169, 0x171, 0x1A9,
];

/// `p_i` for `i` in `1..=16`.
pub fn primitive_poly(index: usize) -> Option<BinaryPoly> {
    index
        .checked_sub(1)
        .and_then(|i| PRIMITIVE_DEGREE8.get(i))
        .map(|&m| BinaryPoly::new(u64::from(m)))
}

/// Inverse of [`primitive_poly`].
pub fn primitive_index(poly: BinaryPoly) -> Option<usize> {
    PRIMITIVE_DEGREE8
        .iter()
        .position(|&m| u64::from(m) == poly.bits())
        .map(|i| i + 1)
}

/// The published S-box for `p_1` with `(a, b, c, d) = (32, 22, 11, 8)`, as printed.
#[rustfmt::skip]
pub const PUBLISHED_SBOX: [u8; 256] = [
    237, 225, 144, 236, 211,  25, 147,  20, 185, 127, 132, 195, 123, 136, 197, 170,
    109, 112,  61,  84, 183,   4, 186,  54, 234, 121, 177, 129, 215,  48,  41,   1,
    162, 228, 194, 150, 141, 175,  74,  91,  70,  50,  47,  85, 176,  40,  34, 102,
    119, 223, 202, 206,   7,  22,  98, 158, 190, 148,  69,  30,  38, 113, 179, 224,
    131, 104, 165, 178, 106, 169, 174, 116,  26, 154,  21,  90,  65, 157,  76,  64,
     45,   5, 253,  86, 172, 124, 180,  67, 247, 115,  42, 118, 217, 240, 189, 192,
    199,  12,   6, 125, 216, 254, 251, 231, 210, 227, 126, 160, 151, 107,  73, 139,
     77, 122, 188,   8,  16, 232, 153, 111, 143, 203,  24,  39,  95,  99,  78, 182,
     89, 213, 241, 171,  81,   9,  72,  13, 105, 205,   3,  59, 120, 245,  35, 168,
    137,  27,  66,  97,  79,  71,  55, 226, 201, 187, 214, 239,  80,   2, 208, 255,
     63, 156, 249, 135,  83, 248, 110, 140,  29, 163, 155, 219, 184,  49,  68, 173,
    200,  10, 149,  51,  23,  57, 157,  14,  94,  58,  15, 209,  18, 103, 193, 142,
    133,  11,  56, 181, 242,  43,  96, 196,  33, 229,  37, 220, 130,  60,  88, 212,
     46,  93,  44, 221,  62,  87, 114, 100,  75, 246, 230, 222, 204, 235,  19, 164,
    128, 233, 252, 117,  82, 146, 138,  17, 161, 191,  53, 218, 166,  52, 145,  23,
    159, 108, 198,  28,  92,  31, 243, 207,  32, 134, 244,   0, 250, 152,  36, 101,
];

/// `(poly, NL, BIC, BIC of SAC, SAC, LP count, LP bias, DP)`.
pub type StrengthRow = (u16, f64, f64, f64, f64, u32, f64, f64);

/// Published strength figures per primitive polynomial, in published row order.
pub const PUBLISHED_STRENGTH: [StrengthRow; 16] = [
    (0x11D, 104.75, 105.071, 0.500, 0.493, 160, 0.125, 0.125),
    (0x12B, 105.75, 104.929, 0.502, 0.503, 158, 0.140, 0.242),
    (0x12D, 104.75, 101.14, 0.502, 0.497, 168, 0.156, 0.5),
    (0x15F, 105.75, 105.35, 0.502, 0.502, 160, 0.125, 0.125),
    (0x1C3, 104.5, 104.14, 0.498, 0.498, 164, 0.148, 0.25),
    (0x165, 105.5, 105.71, 0.502, 0.505, 160, 0.125, 0.125),
    (0x187, 106.75, 104.85, 0.503, 0.502, 160, 0.125, 0.125),
    (0x18D, 104.25, 104.42, 0.501, 0.512, 162, 0.132, 0.25),
    (0x1F5, 106.5, 105.0, 0.504, 0.496, 162, 0.132, 0.117),
    (0x1E7, 106.25, 103.71, 0.500, 0.498, 162, 0.132, 0.125),
    (0x14D, 106.0, 105.71, 0.501, 0.499, 158, 0.125, 0.125),
    (0x1E7, 106.0, 103.57, 0.502, 0.497, 166, 0.156, 0.25),
    (0x163, 106.5, 105.5, 0.502, 0.510, 162, 0.132, 0.125),
    (0x169, 106.25, 105.37, 0.504, 0.507, 158, 0.132, 0.125),
    (0x171, 107.25, 106.07, 0.5, 0.496, 158, 0.125, 0.117),
    (0x1A9, 106.0, 105.35, 0.503, 0.516, 162, 0.132, 0.125),
];

/// Default LFT coefficients `(a, b, c, d)`.
pub const DEFAULT_LFT: [u8; 4] = [32, 22, 11, 8];

/// Embedded constants bundled for callers that want everything at once.
pub fn golden_assets() -> (Vec<BinaryPoly>, [u8; 256]) {
    let polys = PRIMITIVE_DEGREE8
        .iter()
        .map(|&m| BinaryPoly::new(u64::from(m)))
        .collect();
    (polys, PUBLISHED_SBOX)
}
