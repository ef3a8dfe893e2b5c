//! Statistical and security analyses of plain and cipher images.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::analysis::{self, StrengthReport};
use crate::cipher::{self, CipherKey};
use crate::error::{Error, Result};
use crate::image::Image;
use crate::sbox::SBox;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Horizontal,
    Vertical,
}

impl Direction {
    fn offset(self) -> (usize, usize) {
        match self {
            Direction::Horizontal => (0, 1),
            Direction::Vertical => (1, 0),
        }
    }
}

/// Pearson correlation, `None` when either side has zero variance.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len() as f64;
    if xs.is_empty() || xs.len() != ys.len() {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        None
    } else {
        Some(sxy / (sxx * syy).sqrt())
    }
}

fn adjacent_pairs(img: &Image, direction: Direction) -> Result<Vec<(usize, usize, usize)>> {
    let (dr, dc) = direction.offset();
    if img.height() <= dr || img.width() <= dc {
        return Err(Error::domain(format!(
            "image too small for {direction:?} adjacency"
        )));
    }
    let mut out = Vec::with_capacity(img.pixels() * img.channels());
    for c in 0..img.channels() {
        for r in 0..img.height() - dr {
            for col in 0..img.width() - dc {
                out.push((r, col, c));
            }
        }
    }
    Ok(out)
}

/// Correlation of every pixel with its right (or lower) neighbour, pooled over
/// channels. `Ok(None)` means the correlation is undefined (zero variance).
pub fn adjacency_correlation(img: &Image, direction: Direction) -> Result<Option<f64>> {
    let (dr, dc) = direction.offset();
    let pairs = adjacent_pairs(img, direction)?;
    let xs: Vec<f64> = pairs
        .iter()
        .map(|&(r, c, ch)| f64::from(img.get(r, c, ch)))
        .collect();
    let ys: Vec<f64> = pairs
        .iter()
        .map(|&(r, c, ch)| f64::from(img.get(r + dr, c + dc, ch)))
        .collect();
    Ok(pearson(&xs, &ys))
}

/// Same as [`adjacency_correlation`] on `samples` pairs drawn with a seeded RNG.
pub fn adjacency_correlation_sampled(
    img: &Image,
    direction: Direction,
    samples: usize,
    seed: u64,
) -> Result<Option<f64>> {
    let (dr, dc) = direction.offset();
    let pairs = adjacent_pairs(img, direction)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut xs, mut ys) = (Vec::with_capacity(samples), Vec::with_capacity(samples));
    for _ in 0..samples {
        let (r, c, ch) = pairs[rng.gen_range(0..pairs.len())];
        xs.push(f64::from(img.get(r, c, ch)));
        ys.push(f64::from(img.get(r + dr, c + dc, ch)));
    }
    Ok(pearson(&xs, &ys))
}

pub fn histogram(img: &Image) -> [u64; 256] {
    let mut h = [0u64; 256];
    for &b in img.data() {
        h[b as usize] += 1;
    }
    h
}

/// Shannon entropy of the byte histogram, in bits.
pub fn entropy(img: &Image) -> f64 {
    let h = histogram(img);
    let n = img.data().len() as f64;
    h.iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// Chi-square statistic of a histogram against the uniform distribution.
pub fn chi_square_uniform(hist: &[u64; 256]) -> f64 {
    let n: u64 = hist.iter().sum();
    let expected = n as f64 / 256.0;
    hist.iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum()
}

/// Upper quantile of the chi-square distribution, e.g. `(255, 0.999)`.
pub fn chi_square_quantile(dof: f64, p: f64) -> Result<f64> {
    let dist = ChiSquared::new(dof).map_err(|e| Error::domain(e.to_string()))?;
    Ok(dist.inverse_cdf(p))
}

/// Gray-level co-occurrence counts for one pixel-pair offset.
#[derive(Debug, Clone)]
pub struct Glcm {
    counts: Vec<u64>,
    total: u64,
    offset: (isize, isize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Texture {
    pub contrast: f64,
    pub homogeneity: f64,
    pub energy: f64,
}

impl Glcm {
    /// Counts `(img[r][c], img[r+dr][c+dc])` over every in-bounds pair, all channels.
    pub fn compute(img: &Image, offset: (isize, isize)) -> Result<Self> {
        let (dr, dc) = offset;
        let (h, w) = (img.height() as isize, img.width() as isize);
        if dr.abs() >= h || dc.abs() >= w {
            return Err(Error::domain(format!(
                "offset {offset:?} does not fit a {w}x{h} image"
            )));
        }
        let mut counts = vec![0u64; 256 * 256];
        let mut total = 0u64;
        for ch in 0..img.channels() {
            for r in 0.max(-dr)..h.min(h - dr) {
                for c in 0.max(-dc)..w.min(w - dc) {
                    let i = img.get(r as usize, c as usize, ch) as usize;
                    let j = img.get((r + dr) as usize, (c + dc) as usize, ch) as usize;
                    counts[i * 256 + j] += 1;
                    total += 1;
                }
            }
        }
        Ok(Glcm {
            counts,
            total,
            offset,
        })
    }

    pub fn offset(&self) -> (isize, isize) {
        self.offset
    }

    pub fn count(&self, i: u8, j: u8) -> u64 {
        self.counts[i as usize * 256 + j as usize]
    }

    pub fn normalized(&self, i: u8, j: u8) -> f64 {
        self.count(i, j) as f64 / self.total as f64
    }

    pub fn nonzero_cells(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn normalized_sum(&self) -> f64 {
        self.counts
            .iter()
            .map(|&c| c as f64 / self.total as f64)
            .sum()
    }

    pub fn texture(&self) -> Texture {
        let mut t = Texture {
            contrast: 0.0,
            homogeneity: 0.0,
            energy: 0.0,
        };
        for (idx, &c) in self.counts.iter().enumerate().filter(|(_, &c)| c > 0) {
            let p = c as f64 / self.total as f64;
            let d = (idx / 256).abs_diff(idx % 256) as f64;
            t.contrast += d * d * p;
            t.homogeneity += p / (1.0 + d);
            t.energy += p * p;
        }
        t
    }
}

pub fn glcm_features(img: &Image, offset: (isize, isize)) -> Result<Texture> {
    Ok(Glcm::compute(img, offset)?.texture())
}

/// Where a single plaintext bit was flipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlipLocation {
    pub byte: usize,
    pub bit: u8,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AvalancheReport {
    pub npcr: f64,
    pub uaci: f64,
    pub location: Option<FlipLocation>,
}

pub fn npcr_uaci(c1: &Image, c2: &Image) -> Result<AvalancheReport> {
    if !c1.same_shape(c2) {
        return Err(Error::domain("NPCR/UACI need images of identical shape"));
    }
    let n = c1.data().len() as f64;
    let (mut changed, mut diff) = (0u64, 0u64);
    for (&a, &b) in c1.data().iter().zip(c2.data()) {
        if a != b {
            changed += 1;
        }
        diff += u64::from(a.abs_diff(b));
    }
    Ok(AvalancheReport {
        npcr: changed as f64 / n * 100.0,
        uaci: diff as f64 / 255.0 / n * 100.0,
        location: None,
    })
}

/// Positions used for single-bit plaintext changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipPosition {
    First,
    Middle,
    Last,
}

impl FlipPosition {
    pub fn byte_index(self, img: &Image) -> usize {
        let n = img.data().len();
        match self {
            FlipPosition::First => 0,
            FlipPosition::Middle => n / 2,
            FlipPosition::Last => n - 1,
        }
    }
}

/// Encrypts `img` and a copy with one bit flipped, and compares the ciphertexts.
pub fn plaintext_avalanche(
    img: &Image,
    key: &CipherKey,
    location: FlipLocation,
) -> Result<AvalancheReport> {
    if location.byte >= img.data().len() || location.bit > 7 {
        return Err(Error::domain("flip location outside the image"));
    }
    let ks = key.keystream(img.pixels())?;
    let mut flipped = img.clone();
    flipped.data_mut()[location.byte] ^= 1 << location.bit;
    let c1 = cipher::encrypt_with(img, key, &ks)?;
    let c2 = cipher::encrypt_with(&flipped, key, &ks)?;
    Ok(AvalancheReport {
        location: Some(location),
        ..npcr_uaci(&c1, &c2)?
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeySensitivityReport {
    /// Fraction of bytes equal to the plaintext after decrypting with the wrong key.
    pub wrong_key_match: f64,
    /// Ciphertext under the right key vs ciphertext under the perturbed key.
    pub ciphertexts: AvalancheReport,
}

pub fn key_sensitivity(
    img: &Image,
    key: &CipherKey,
    perturbed: &CipherKey,
) -> Result<KeySensitivityReport> {
    let c1 = cipher::encrypt(img, key)?;
    let c2 = cipher::encrypt(img, perturbed)?;
    let wrong = cipher::decrypt(&c1, perturbed)?;
    Ok(KeySensitivityReport {
        wrong_key_match: match_fraction(img, &wrong)?,
        ciphertexts: npcr_uaci(&c1, &c2)?,
    })
}

pub fn match_fraction(a: &Image, b: &Image) -> Result<f64> {
    if !a.same_shape(b) {
        return Err(Error::domain("images differ in shape"));
    }
    let same = a
        .data()
        .iter()
        .zip(b.data())
        .filter(|(x, y)| x == y)
        .count();
    Ok(same as f64 / a.data().len() as f64)
}

#[derive(Debug, Clone)]
pub struct NoiseReport {
    pub corrupted: usize,
    pub match_fraction: f64,
    pub mean_abs_error: f64,
    pub recovered: Image,
}

/// Encrypts, whitens the first `corrupted` ciphertext pixels (all channels set
/// to 255), decrypts, and compares with the plaintext.
pub fn noise_experiment(img: &Image, key: &CipherKey, corrupted: usize) -> Result<NoiseReport> {
    if corrupted > img.pixels() {
        return Err(Error::domain(format!(
            "cannot corrupt {corrupted} of {} pixels",
            img.pixels()
        )));
    }
    let ks = key.keystream(img.pixels())?;
    let mut ct = cipher::encrypt_with(img, key, &ks)?;
    let end = corrupted * img.channels();
    ct.data_mut()[..end].fill(255);
    let recovered = cipher::decrypt_with(&ct, key, &ks)?;
    let mae = img
        .data()
        .iter()
        .zip(recovered.data())
        .map(|(&a, &b)| f64::from(a.abs_diff(b)))
        .sum::<f64>()
        / img.data().len() as f64;
    Ok(NoiseReport {
        corrupted,
        match_fraction: match_fraction(img, &recovered)?,
        mean_abs_error: mae,
        recovered,
    })
}

/// Order of PGL(2, GF(2^8)): (q^2 - 1)(q^2 - q) / (q - 1) with q = 256.
pub const PGL2_GF256_ORDER: u64 = 16_776_960;

/// Informational summary of the key space actually implemented.
pub fn keyspace_report(key: &CipherKey) -> String {
    let ic_bits = 3.0 * 53.0;
    let lft_bits = (PGL2_GF256_ORDER as f64).log2();
    let poly_bits = 16f64.log2();
    let total = ic_bits + lft_bits + poly_bits;
    let mut out = String::new();
    out.push_str("claimed key space: 10^60 (published claim)\n");
    out.push_str(&format!(
        "initial conditions: 3 x 64-bit floats, ~2^{ic_bits:.0} (53-bit mantissas)\n"
    ));
    out.push_str(&format!(
        "LFT choice: |PGL(2,GF(2^8))| = {PGL2_GF256_ORDER}, ~2^{lft_bits:.2} per field\n"
    ));
    out.push_str(&format!("polynomial choice: 16, 2^{poly_bits:.0}\n"));
    out.push_str(&format!("implementation total: ~2^{total:.2}\n"));
    out.push_str(&format!(
        "this key: x0={:e} y0={:e} z0={:e}, lft={:?}, {} S-boxes\n",
        key.lorenz().x0,
        key.lorenz().y0,
        key.lorenz().z0,
        key.lft(),
        key.sboxes().len()
    ));
    out
}

/// Multi-box extrapolation built on measured per-box LP/DP maxima.
#[derive(Debug, Clone, PartialEq)]
pub struct ActiveBoxHeuristic {
    pub reports: Vec<StrengthReport>,
    /// Mean over boxes of `log2` of the maximum LP bias.
    pub mean_log2_lp: f64,
    /// Mean over boxes of `log2` of the maximum DP.
    pub mean_log2_dp: f64,
    pub active_boxes: u32,
}

impl ActiveBoxHeuristic {
    pub fn measure(sboxes: &[SBox], active_boxes: u32) -> Self {
        let reports: Vec<StrengthReport> = sboxes
            .iter()
            .map(|s| analysis::analyze(s.table()))
            .collect();
        let n = reports.len() as f64;
        let mean_log2_lp = reports.iter().map(|r| r.lp.bias.log2()).sum::<f64>() / n;
        let mean_log2_dp = reports.iter().map(|r| r.dp.dp.log2()).sum::<f64>() / n;
        ActiveBoxHeuristic {
            reports,
            mean_log2_lp,
            mean_log2_dp,
            active_boxes,
        }
    }
}

impl fmt::Display for ActiveBoxHeuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = f64::from(self.active_boxes);
        writeln!(
            f,
            "heuristic (independent active S-boxes, not a proven bound):"
        )?;
        writeln!(
            f,
            "  LP_max = 2^{:.2}, over {} boxes 2^{:.0}",
            self.mean_log2_lp,
            self.active_boxes,
            self.mean_log2_lp * k
        )?;
        write!(
            f,
            "  DP_max = 2^{:.2}, over {} boxes 2^{:.0}",
            self.mean_log2_dp,
            self.active_boxes,
            self.mean_log2_dp * k
        )
    }
}

/// One row of correlation/entropy/texture statistics for an image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatsRow {
    pub correlation_h: Option<f64>,
    pub correlation_v: Option<f64>,
    pub entropy: f64,
    pub texture: Texture,
    pub chi_square: f64,
}

pub fn stats_row(img: &Image, offset: (isize, isize)) -> Result<StatsRow> {
    Ok(StatsRow {
        correlation_h: adjacency_correlation(img, Direction::Horizontal)?,
        correlation_v: adjacency_correlation(img, Direction::Vertical)?,
        entropy: entropy(img),
        texture: glcm_features(img, offset)?,
        chi_square: chi_square_uniform(&histogram(img)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorenz::LorenzParams;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;

    fn gray(w: usize, h: usize, f: impl Fn(usize, usize) -> u8) -> Image {
        let data = (0..h)
            .flat_map(|r| (0..w).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect();
        Image::new(w, h, 1, data).unwrap()
    }

    #[test]
    fn correlation_examples() {
        assert_eq!(
            adjacency_correlation(&gray(16, 16, |_, _| 9), Direction::Horizontal).unwrap(),
            None
        );
        let rows_constant = gray(16, 16, |r, _| (r * 10) as u8);
        assert_eq!(
            adjacency_correlation(&rows_constant, Direction::Horizontal).unwrap(),
            Some(1.0)
        );
        let gradient = gray(256, 4, |_, c| c as u8);
        let r = adjacency_correlation(&gradient, Direction::Horizontal)
            .unwrap()
            .unwrap();
        assert!((r - 1.0).abs() < 1e-6);
        assert!(adjacency_correlation(&gray(1, 4, |_, _| 0), Direction::Horizontal).is_err());
    }

    #[test]
    fn correlation_transpose_symmetry() {
        let img = gray(23, 17, |r, c| {
            ((r * 7 + c * 3) as u8).wrapping_add(rng_byte(r, c))
        });
        let t = img.transpose();
        let corr = |i: &Image, d| adjacency_correlation(i, d).unwrap().unwrap();
        assert!((corr(&img, Direction::Horizontal) - corr(&t, Direction::Vertical)).abs() < 1e-12);
        assert!((corr(&img, Direction::Vertical) - corr(&t, Direction::Horizontal)).abs() < 1e-12);
    }

    fn rng_byte(r: usize, c: usize) -> u8 {
        ((r * 2654435761 + c * 40503) >> 5) as u8
    }

    #[test]
    fn sampled_correlation_is_seeded() {
        let img = gray(64, 64, |r, c| (r + c) as u8);
        let a = adjacency_correlation_sampled(&img, Direction::Vertical, 1000, 3).unwrap();
        let b = adjacency_correlation_sampled(&img, Direction::Vertical, 1000, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.unwrap() > 0.9);
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&gray(8, 8, |_, _| 124)), 0.0);
        let all = gray(256, 2, |_, c| c as u8);
        assert_eq!(entropy(&all), 8.0);
    }

    #[test]
    fn entropy_is_permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let img = gray(40, 30, |r, c| (r * c % 97) as u8);
        let e = entropy(&img);
        for _ in 0..5 {
            let mut data = img.data().to_vec();
            data.shuffle(&mut rng);
            let shuffled = Image::new(40, 30, 1, data).unwrap();
            assert!((entropy(&shuffled) - e).abs() < 1e-12);
        }
    }

    #[test]
    fn glcm_examples() {
        let constant = gray(10, 10, |_, _| 77);
        let g = Glcm::compute(&constant, (0, 1)).unwrap();
        assert_eq!(g.nonzero_cells(), 1);
        let t = g.texture();
        assert_eq!((t.contrast, t.homogeneity, t.energy), (0.0, 1.0, 1.0));

        let checker = gray(8, 8, |r, c| if (r + c) % 2 == 0 { 0 } else { 255 });
        let t = glcm_features(&checker, (0, 1)).unwrap();
        assert_eq!(t.contrast, 255.0 * 255.0);
        assert_eq!(t.energy, 0.5);
        assert!((t.homogeneity - 1.0 / 256.0).abs() < 1e-15);

        assert!(glcm_features(&gray(1, 5, |_, _| 0), (0, 1)).is_err());
        let g = Glcm::compute(&gray(9, 7, |r, c| (r * 31 + c * 17) as u8), (-1, 2)).unwrap();
        assert!((g.normalized_sum() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn npcr_uaci_examples() {
        let c1 = gray(16, 16, |r, c| (r * 16 + c) as u8);
        let same = npcr_uaci(&c1, &c1).unwrap();
        assert_eq!((same.npcr, same.uaci), (0.0, 0.0));
        let not = Image::new(16, 16, 1, c1.data().iter().map(|b| !b).collect()).unwrap();
        let r = npcr_uaci(&c1, &not).unwrap();
        assert_eq!(r.npcr, 100.0);
        let closed: f64 = c1
            .data()
            .iter()
            .map(|&x| (2.0 * f64::from(x) - 255.0).abs())
            .sum::<f64>()
            / 256.0
            / 255.0
            * 100.0;
        assert!((r.uaci - closed).abs() < 1e-9);
        assert!(npcr_uaci(&c1, &gray(4, 4, |_, _| 0)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn npcr_uaci_symmetric(a in proptest::collection::vec(any::<u8>(), 64), b in proptest::collection::vec(any::<u8>(), 64)) {
            let (x, y) = (Image::new(8, 8, 1, a).unwrap(), Image::new(8, 8, 1, b).unwrap());
            let (r1, r2) = (npcr_uaci(&x, &y).unwrap(), npcr_uaci(&y, &x).unwrap());
            prop_assert_eq!(r1, r2);
            prop_assert!((0.0..=100.0).contains(&r1.npcr) && (0.0..=100.0).contains(&r1.uaci));
        }
    }

    #[test]
    fn chi_square_quantile_value() {
        let q = chi_square_quantile(255.0, 0.999).unwrap();
        assert!((q - 330.52).abs() < 0.01, "{q}");
        let flat = [10u64; 256];
        assert_eq!(chi_square_uniform(&flat), 0.0);
    }

    fn key() -> CipherKey {
        CipherKey::with_lorenz(LorenzParams::with_initial(0.1, 0.2, 0.3)).unwrap()
    }

    #[test]
    fn noise_extremes() {
        let img = gray(64, 64, |r, c| (r * 4 + c / 3) as u8);
        let key = key();
        let none = noise_experiment(&img, &key, 0).unwrap();
        assert_eq!(none.match_fraction, 1.0);
        assert_eq!(none.recovered, img);
        let all = noise_experiment(&img, &key, img.pixels()).unwrap();
        assert!(
            (all.match_fraction - 1.0 / 256.0).abs() < 0.01,
            "{}",
            all.match_fraction
        );
        assert!(noise_experiment(&img, &key, img.pixels() + 1).is_err());
    }

    #[test]
    fn keyspace_text() {
        let text = keyspace_report(&key());
        assert!(text.contains("2^"));
        assert!(text.contains("10^60 (published claim)"));
        assert!(text.contains("16776960"));
        assert!(text.contains("2^24.00"));
    }

    #[test]
    fn heuristic_uses_measured_maxima() {
        let key = key();
        let h = ActiveBoxHeuristic::measure(&key.sboxes()[..2], 256);
        assert_eq!(h.reports.len(), 2);
        assert!((h.mean_log2_dp - (4.0f64 / 256.0).log2()).abs() < 1e-12);
        assert!(h.to_string().contains("not a proven bound"));
    }
}
