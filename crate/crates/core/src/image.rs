//! Byte rasters and binary PGM (P5) / PPM (P6) I/O.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// An `height x width` raster with 1 or 3 interleaved channels, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<u8>,
}

impl Image {
    pub fn new(width: usize, height: usize, channels: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::domain("image dimensions must be positive"));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::domain(format!(
                "unsupported channel count {channels}"
            )));
        }
        let expected = width * height * channels;
        if data.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: data.len(),
            });
        }
        Ok(Image {
            width,
            height,
            channels,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, channels: usize, value: u8) -> Result<Self> {
        Image::new(
            width,
            height,
            channels,
            vec![value; width * height * channels],
        )
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn pixels(&self) -> usize {
        self.width * self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [u8] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    pub fn get(&self, row: usize, col: usize, channel: usize) -> u8 {
        self.data[(row * self.width + col) * self.channels + channel]
    }

    pub fn same_shape(&self, other: &Image) -> bool {
        self.width == other.width && self.height == other.height && self.channels == other.channels
    }

    /// Channel planes concatenated, each plane row-major.
    pub fn to_planes(&self) -> Vec<u8> {
        if self.channels == 1 {
            return self.data.clone();
        }
        let n = self.pixels();
        let mut out = vec![0u8; self.data.len()];
        for (i, px) in self.data.chunks_exact(self.channels).enumerate() {
            for (c, &v) in px.iter().enumerate() {
                out[c * n + i] = v;
            }
        }
        out
    }

    /// Inverse of [`Image::to_planes`].
    pub fn from_planes(
        width: usize,
        height: usize,
        channels: usize,
        planes: &[u8],
    ) -> Result<Self> {
        let n = width * height;
        if planes.len() != n * channels {
            return Err(Error::LengthMismatch {
                expected: n * channels,
                actual: planes.len(),
            });
        }
        let mut data = vec![0u8; planes.len()];
        for i in 0..n {
            for c in 0..channels {
                data[i * channels + c] = planes[c * n + i];
            }
        }
        Image::new(width, height, channels, data)
    }

    /// A single channel as a grayscale image.
    pub fn plane(&self, channel: usize) -> Result<Image> {
        if channel >= self.channels {
            return Err(Error::domain(format!("no channel {channel}")));
        }
        let data = self
            .data
            .iter()
            .skip(channel)
            .step_by(self.channels)
            .copied()
            .collect();
        Image::new(self.width, self.height, 1, data)
    }

    pub fn transpose(&self) -> Image {
        let mut data = Vec::with_capacity(self.data.len());
        for col in 0..self.width {
            for row in 0..self.height {
                for c in 0..self.channels {
                    data.push(self.get(row, col, c));
                }
            }
        }
        Image {
            width: self.height,
            height: self.width,
            channels: self.channels,
            data,
        }
    }
}

/// Serialises as P5 (grayscale) or P6 (RGB), maxval 255.
pub fn encode_pnm(img: &Image) -> Vec<u8> {
    let magic = if img.channels == 1 { "P5" } else { "P6" };
    let mut out = format!("{magic}\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.data);
    out
}

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderCursor<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::ImageParse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::ImageParse {
                offset: start,
                message: format!("{what} out of range"),
            })
    }
}

pub fn decode_pnm(bytes: &[u8]) -> Result<Image> {
    let mut cur = HeaderCursor { bytes, pos: 0 };
    let channels = match bytes.get(..2) {
        Some(b"P5") => 1,
        Some(b"P6") => 3,
        _ => return Err(cur.err("expected P5 or P6 magic")),
    };
    cur.pos = 2;
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    cur.skip_space_and_comments();
    let maxval_at = cur.pos;
    let maxval = cur.number("maxval")?;
    if maxval != 255 {
        return Err(Error::ImageParse {
            offset: maxval_at,
            message: format!("unsupported maxval {maxval}"),
        });
    }
    match bytes.get(cur.pos) {
        Some(c) if c.is_ascii_whitespace() => cur.pos += 1,
        _ => return Err(cur.err("expected single whitespace after maxval")),
    }
    if width == 0 || height == 0 {
        return Err(cur.err("zero image dimension"));
    }
    let expected = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| cur.err("image dimensions overflow"))?;
    let payload = &bytes[cur.pos..];
    if payload.len() < expected {
        return Err(Error::ImageParse {
            offset: bytes.len(),
            message: format!(
                "truncated payload: expected {expected} bytes, found {}",
                payload.len()
            ),
        });
    }
    Image::new(width, height, channels, payload[..expected].to_vec())
}

/// `WxH` or `WxHxC` as used for headerless raw input.
pub fn parse_raw_dims(dims: &str) -> Result<(usize, usize, usize)> {
    let parts: Vec<&str> = dims.split(['x', 'X']).collect();
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::Format(format!("bad raw dimension `{dims}`")))
    };
    match parts.as_slice() {
        [w, h] => Ok((num(w)?, num(h)?, 1)),
        [w, h, c] => Ok((num(w)?, num(h)?, num(c)?)),
        _ => Err(Error::Format(format!(
            "raw dimensions must be WxH[xC], got `{dims}`"
        ))),
    }
}

pub fn read_image(path: &Path) -> Result<Image> {
    decode_pnm(&fs::read(path)?)
}

pub fn read_raw(path: &Path, dims: (usize, usize, usize)) -> Result<Image> {
    let (w, h, c) = dims;
    Image::new(w, h, c, fs::read(path)?)
}

pub fn write_image(img: &Image, path: &Path) -> Result<()> {
    fs::write(path, encode_pnm(img))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decodes_minimal_p5() {
        let mut bytes = b"P5\n2 2\n255\n".to_vec();
        bytes.extend_from_slice(&[1, 2, 3, 4]);
        let img = decode_pnm(&bytes).unwrap();
        assert_eq!((img.width(), img.height(), img.channels()), (2, 2, 1));
        assert_eq!(img.data(), &[1, 2, 3, 4]);
    }

    #[test]
    fn header_comments_are_skipped() {
        let mut bytes = b"P6 # rgb\n1 # w\n1\n255\n".to_vec();
        bytes.extend_from_slice(&[9, 8, 7]);
        assert_eq!(decode_pnm(&bytes).unwrap().data(), &[9, 8, 7]);
    }

    #[test]
    fn rejects_bad_inputs() {
        let err = decode_pnm(b"P5\n2 2\n65535\n\0\0\0\0\0\0\0\0").unwrap_err();
        assert!(err.to_string().contains("unsupported maxval"));
        assert!(matches!(err, Error::ImageParse { offset: 7, .. }));
        let err = decode_pnm(b"P5\n2 2\n255\n\x01\x02").unwrap_err();
        assert!(err.to_string().contains("truncated"));
        assert!(decode_pnm(b"P2\n2 2\n255\n").is_err());
        assert!(decode_pnm(b"P5\nx 2\n255\n").is_err());
        assert!(decode_pnm(b"P5\n0 2\n255\n").is_err());
    }

    #[test]
    fn planes_and_transpose() {
        let img = Image::new(2, 1, 3, vec![1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(img.to_planes(), vec![1, 4, 2, 5, 3, 6]);
        assert_eq!(Image::from_planes(2, 1, 3, &img.to_planes()).unwrap(), img);
        assert_eq!(img.plane(1).unwrap().data(), &[2, 5]);
        let t = img.transpose();
        assert_eq!((t.width(), t.height()), (1, 2));
        assert_eq!(t.transpose(), img);
    }

    #[test]
    fn raw_dims() {
        assert_eq!(parse_raw_dims("256x128").unwrap(), (256, 128, 1));
        assert_eq!(parse_raw_dims("4x4x3").unwrap(), (4, 4, 3));
        assert!(parse_raw_dims("4").is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.ppm");
        let img = Image::new(3, 2, 3, (0..18).collect()).unwrap();
        write_image(&img, &path).unwrap();
        assert_eq!(read_image(&path).unwrap(), img);
    }

    proptest! {
        #[test]
        fn pnm_round_trip(w in 1usize..20, h in 1usize..20, rgb in any::<bool>(), seed in any::<u64>()) {
            let c = if rgb { 3 } else { 1 };
            let data: Vec<u8> = (0..w * h * c).map(|i| (seed.wrapping_mul(i as u64 + 1) >> 7) as u8).collect();
            let img = Image::new(w, h, c, data).unwrap();
            prop_assert_eq!(decode_pnm(&encode_pnm(&img)).unwrap(), img);
        }
    }
}
