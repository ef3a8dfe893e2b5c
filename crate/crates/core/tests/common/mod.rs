//! Deterministic synthetic "natural" test images: smooth illumination,
//! a few solid shapes and low-amplitude texture, no external files.

#![allow(dead_code)]

use std::path::Path;

use pglbox::image::Image;
use pglbox::lorenz::LorenzParams;
use pglbox::CipherKey;

fn hash(mut v: u64) -> u64 {
    v ^= v >> 33;
    v = v.wrapping_mul(0xff51afd7ed558ccd);
    v ^= v >> 33;
    v = v.wrapping_mul(0xc4ceb9fe1a85ec53);
    v ^ (v >> 33)
}

fn texture(variant: u64, r: usize, c: usize, amplitude: f64) -> f64 {
    let h = hash(variant << 40 ^ (r as u64) << 20 ^ c as u64);
    ((h % 1000) as f64 / 1000.0 - 0.5) * amplitude
}

/// Intensity of scene `variant` at normalised coordinates `(y, x)` in `[0, 1)`.
fn scene(variant: u64, y: f64, x: f64) -> f64 {
    let sky = match variant % 5 {
        0 => 170.0 - 60.0 * y,
        1 => 60.0 + 120.0 * x,
        2 => 200.0 - 150.0 * (x - 0.5).abs() - 40.0 * y,
        3 => 90.0 + 50.0 * (6.0 * x).sin() * (4.0 * y).cos(),
        _ => 30.0 + 180.0 * y * y,
    };
    let mut v = sky;
    let (cy, cx, rad) = (0.35 + 0.05 * variant as f64, 0.45, 0.18);
    if (y - cy).powi(2) + (x - cx).powi(2) < rad * rad {
        v = 25.0 + 30.0 * (y - cy) / rad;
    }
    if y > 0.7 && x > 0.1 + 0.1 * (variant % 3) as f64 && x < 0.8 {
        v = 120.0 + 40.0 * (20.0 * x).sin();
    }
    if (0.15..0.3).contains(&y) && (0.7..0.9).contains(&x) {
        v = 235.0;
    }
    v
}

pub fn natural_gray(size: usize, variant: u64) -> Image {
    let mut data = Vec::with_capacity(size * size);
    for r in 0..size {
        for c in 0..size {
            let v = scene(variant, r as f64 / size as f64, c as f64 / size as f64)
                + texture(variant, r, c, 12.0);
            data.push(v.round().clamp(0.0, 255.0) as u8);
        }
    }
    Image::new(size, size, 1, data).unwrap()
}

pub fn natural_rgb(size: usize, variant: u64) -> Image {
    let mut data = Vec::with_capacity(size * size * 3);
    for r in 0..size {
        for c in 0..size {
            let base = scene(variant, r as f64 / size as f64, c as f64 / size as f64);
            for (ch, gain) in [1.0, 0.85, 0.7].iter().enumerate() {
                let v =
                    base * gain + 20.0 * ch as f64 + texture(variant * 3 + ch as u64, r, c, 10.0);
                data.push(v.round().clamp(0.0, 255.0) as u8);
            }
        }
    }
    Image::new(size, size, 3, data).unwrap()
}

/// The five fixture variants at 256x256, grayscale.
pub fn fixtures() -> Vec<Image> {
    (0..5).map(|v| natural_gray(256, v)).collect()
}

pub fn default_key() -> CipherKey {
    CipherKey::with_lorenz(LorenzParams::with_initial(0.1, 0.2, 0.3)).unwrap()
}

pub fn write_default_key(path: &Path) {
    std::fs::write(path, "x0 = 0.1\ny0 = 0.2\nz0 = 0.3\n").unwrap();
}
