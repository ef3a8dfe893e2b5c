//! Strength criteria for 8x8 S-boxes: nonlinearity, SAC, BIC, linear and
//! differential probabilities. Every figure is an exhaustive computation.

use std::fmt;

/// In-place fast Walsh-Hadamard transform of a length-256 signed vector.
pub fn walsh_hadamard(v: &mut [i32; 256]) {
    let mut h = 1;
    while h < 256 {
        for i in (0..256).step_by(h * 2) {
            for j in i..i + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

#[inline]
fn parity(v: u32) -> u32 {
    v.count_ones() & 1
}

/// Walsh spectrum of the component `x -> parity(s(x) & out_mask)`.
pub fn component_spectrum(table: &[u8; 256], out_mask: u8) -> [i32; 256] {
    let mut v = [0i32; 256];
    for (x, &y) in table.iter().enumerate() {
        v[x] = if parity(u32::from(y & out_mask)) == 0 {
            1
        } else {
            -1
        };
    }
    walsh_hadamard(&mut v);
    v
}

/// Nonlinearity of one component: `2^7 - max|W| / 2`.
pub fn component_nonlinearity(table: &[u8; 256], out_mask: u8) -> u32 {
    let spectrum = component_spectrum(table, out_mask);
    let max = spectrum.iter().map(|w| w.unsigned_abs()).max().unwrap_or(0);
    128 - max / 2
}

/// Fraction of inputs for which flipping input bit `flip` flips the component.
fn component_avalanche(table: &[u8; 256], out_mask: u8, flip: usize) -> f64 {
    let flips = (0..256usize)
        .filter(|&x| parity(u32::from((table[x] ^ table[x ^ (1 << flip)]) & out_mask)) == 1)
        .count();
    flips as f64 / 256.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearityReport {
    pub per_coordinate: [u32; 8],
    pub mean: f64,
    pub min: u32,
}

pub fn nonlinearity(table: &[u8; 256]) -> NonlinearityReport {
    let mut per_coordinate = [0u32; 8];
    for (bit, nl) in per_coordinate.iter_mut().enumerate() {
        *nl = component_nonlinearity(table, 1 << bit);
    }
    NonlinearityReport {
        per_coordinate,
        mean: per_coordinate.iter().map(|&v| f64::from(v)).sum::<f64>() / 8.0,
        min: *per_coordinate.iter().min().expect("eight coordinates"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SacReport {
    /// `matrix[i][j]`: probability that flipping input bit `i` flips output bit `j`.
    pub matrix: [[f64; 8]; 8],
    pub mean: f64,
}

pub fn sac_matrix(table: &[u8; 256]) -> SacReport {
    let mut matrix = [[0.0; 8]; 8];
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = component_avalanche(table, 1 << j, i);
        }
    }
    let mean = matrix.iter().flatten().sum::<f64>() / 64.0;
    SacReport { matrix, mean }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BicReport {
    pub nl_mean: f64,
    pub nl_min: u32,
    pub sac_mean: f64,
}

/// Nonlinearity and SAC of `bit_j XOR bit_k` over all 28 output-bit pairs.
pub fn bic(table: &[u8; 256]) -> BicReport {
    let mut nl_sum = 0.0;
    let mut nl_min = u32::MAX;
    let mut sac_sum = 0.0;
    let mut pairs = 0;
    for j in 0..8 {
        for k in j + 1..8 {
            let mask = (1u8 << j) | (1u8 << k);
            let nl = component_nonlinearity(table, mask);
            nl_sum += f64::from(nl);
            nl_min = nl_min.min(nl);
            sac_sum += (0..8)
                .map(|i| component_avalanche(table, mask, i))
                .sum::<f64>()
                / 8.0;
            pairs += 1;
        }
    }
    BicReport {
        nl_mean: nl_sum / f64::from(pairs),
        nl_min,
        sac_mean: sac_sum / f64::from(pairs),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearReport {
    /// Largest agreement count over nonzero mask pairs.
    pub max_count: u32,
    /// `max |count/256 - 1/2|` over nonzero mask pairs.
    pub bias: f64,
}

impl fmt::Display for LinearReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{:.3}", self.max_count, self.bias)
    }
}

/// Direct count of `parity(x & gx) == parity(s(x) & gy)` for all nonzero masks.
pub fn linear_probability(table: &[u8; 256]) -> LinearReport {
    let mut max_count = 0u32;
    let mut max_dev = 0u32;
    for gx in 1..256u32 {
        for gy in 1..256u32 {
            let count = (0..256u32)
                .filter(|&x| parity(x & gx) == parity(u32::from(table[x as usize]) & gy))
                .count() as u32;
            max_count = max_count.max(count);
            max_dev = max_dev.max(count.abs_diff(128));
        }
    }
    LinearReport {
        max_count,
        bias: f64::from(max_dev) / 256.0,
    }
}

/// Same quantity through component Walsh spectra: `count = (256 + W) / 2`.
pub fn linear_probability_walsh(table: &[u8; 256]) -> LinearReport {
    let mut max_w = i32::MIN;
    let mut max_abs = 0u32;
    for gy in 1..=255u8 {
        let spectrum = component_spectrum(table, gy);
        for &w in &spectrum[1..] {
            max_w = max_w.max(w);
            max_abs = max_abs.max(w.unsigned_abs());
        }
    }
    LinearReport {
        max_count: ((256 + max_w) / 2) as u32,
        bias: f64::from(max_abs) / 512.0,
    }
}

/// Difference distribution table: `ddt[dx][dy]`.
pub fn difference_table(table: &[u8; 256]) -> Vec<[u16; 256]> {
    let mut ddt = vec![[0u16; 256]; 256];
    for (dx, row) in ddt.iter_mut().enumerate() {
        for x in 0..256 {
            row[(table[x] ^ table[x ^ dx]) as usize] += 1;
        }
    }
    ddt
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferentialReport {
    pub max_count: u16,
    pub dp: f64,
}

pub fn differential_probability(table: &[u8; 256]) -> DifferentialReport {
    let ddt = difference_table(table);
    let max_count = ddt[1..]
        .iter()
        .flat_map(|row| row.iter().copied())
        .max()
        .unwrap_or(0);
    DifferentialReport {
        max_count,
        dp: f64::from(max_count) / 256.0,
    }
}

/// All six criteria for one S-box.
#[derive(Debug, Clone, PartialEq)]
pub struct StrengthReport {
    pub nonlinearity: NonlinearityReport,
    pub sac: SacReport,
    pub bic: BicReport,
    pub lp: LinearReport,
    pub dp: DifferentialReport,
}

pub fn analyze(table: &[u8; 256]) -> StrengthReport {
    StrengthReport {
        nonlinearity: nonlinearity(table),
        sac: sac_matrix(table),
        bic: bic(table),
        lp: linear_probability(table),
        dp: differential_probability(table),
    }
}

impl StrengthReport {
    /// Structured `key=value` pairs named after the usual table columns.
    pub fn key_values(&self) -> Vec<(&'static str, String)> {
        vec![
            ("N.L", format!("{:.2}", self.nonlinearity.mean)),
            ("N.L.min", self.nonlinearity.min.to_string()),
            ("BIC", format!("{:.3}", self.bic.nl_mean)),
            ("BIC of SAC", format!("{:.3}", self.bic.sac_mean)),
            ("SAC", format!("{:.3}", self.sac.mean)),
            ("LP", self.lp.to_string()),
            ("DP", format!("{:.4}", self.dp.dp)),
        ]
    }
}

impl fmt::Display for StrengthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<10} {:<10} {:<12} {:<8} {:<12} {:<8}",
            "N.L", "BIC", "BIC of SAC", "SAC", "LP", "DP"
        )?;
        write!(
            f,
            "{:<10.2} {:<10.3} {:<12.3} {:<8.3} {:<12} {:<8.4}",
            self.nonlinearity.mean,
            self.bic.nl_mean,
            self.bic.sac_mean,
            self.sac.mean,
            self.lp.to_string(),
            self.dp.dp
        )
    }
}
