//! Permute, XOR-mask and substitute image cipher, and its inverse.
//!
//! Each channel plane is flattened row-major and processed with the same
//! keystream of length `width * height`.

use crate::error::{Error, Result};
use crate::golden;
use crate::image::Image;
use crate::lorenz::{self, Keystream, LorenzParams};
use crate::sbox::{self, SBox};

/// Secret key: Lorenz initial state and coefficients plus the S-box family.
#[derive(Debug, Clone)]
pub struct CipherKey {
    lorenz: LorenzParams,
    lft: [u8; 4],
    poly_indices: Vec<usize>,
    sboxes: Vec<SBox>,
}

impl CipherKey {
    /// Builds the S-box family for `poly_indices` (each in `1..=16`).
    pub fn new(lorenz: LorenzParams, lft: [u8; 4], poly_indices: Vec<usize>) -> Result<Self> {
        lorenz.validate()?;
        if poly_indices.is_empty() || poly_indices.len() > 256 {
            return Err(Error::domain(
                "S-box family needs 1..=256 polynomial indices",
            ));
        }
        let sboxes = sbox::build_family_for(lft, &poly_indices)?;
        Ok(CipherKey {
            lorenz,
            lft,
            poly_indices,
            sboxes,
        })
    }

    /// Default LFT `(32, 22, 11, 8)` over all 16 primitive polynomials.
    pub fn with_lorenz(lorenz: LorenzParams) -> Result<Self> {
        CipherKey::new(
            lorenz,
            golden::DEFAULT_LFT,
            (1..=golden::PRIMITIVE_DEGREE8.len()).collect(),
        )
    }

    pub fn lorenz(&self) -> &LorenzParams {
        &self.lorenz
    }

    pub fn lft(&self) -> [u8; 4] {
        self.lft
    }

    pub fn poly_indices(&self) -> &[usize] {
        &self.poly_indices
    }

    pub fn sboxes(&self) -> &[SBox] {
        &self.sboxes
    }

    /// Same S-boxes, different Lorenz parameters.
    pub fn with_lorenz_params(&self, lorenz: LorenzParams) -> Result<Self> {
        lorenz.validate()?;
        Ok(CipherKey {
            lorenz,
            ..self.clone()
        })
    }

    pub fn keystream(&self, length: usize) -> Result<Keystream> {
        lorenz::keystream(&self.lorenz, length, self.sboxes.len())
    }
}

/// Row-major flattening, channel planes concatenated.
pub fn flatten(img: &Image) -> Vec<u8> {
    img.to_planes()
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, actual })
    }
}

/// `out[i] = v[perm[i]]`.
pub fn permute(v: &[u8], perm: &[usize]) -> Result<Vec<u8>> {
    check_len(v.len(), perm.len())?;
    perm.iter()
        .map(|&p| {
            v.get(p)
                .copied()
                .ok_or_else(|| Error::domain(format!("permutation index {p} out of range")))
        })
        .collect()
}

/// `out[perm[i]] = v[i]`.
pub fn inverse_permute(v: &[u8], perm: &[usize]) -> Result<Vec<u8>> {
    check_len(v.len(), perm.len())?;
    let mut out = vec![0u8; v.len()];
    for (&p, &b) in perm.iter().zip(v) {
        *out.get_mut(p)
            .ok_or_else(|| Error::domain(format!("permutation index {p} out of range")))? = b;
    }
    Ok(out)
}

pub fn xor_mask(v: &[u8], mask: &[u8]) -> Result<Vec<u8>> {
    check_len(v.len(), mask.len())?;
    Ok(v.iter().zip(mask).map(|(a, b)| a ^ b).collect())
}

fn check_selectors(selectors: &[u8], count: usize) -> Result<()> {
    match selectors.iter().position(|&s| s as usize >= count) {
        Some(position) => Err(Error::SelectorOutOfRange {
            selector: selectors[position],
            position,
            count,
        }),
        None => Ok(()),
    }
}

/// Byte `v[i]` (row = high nibble, column = low nibble) through S-box `selectors[i]`.
pub fn substitute(v: &[u8], selectors: &[u8], sboxes: &[SBox]) -> Result<Vec<u8>> {
    check_len(v.len(), selectors.len())?;
    check_selectors(selectors, sboxes.len())?;
    Ok(v.iter()
        .zip(selectors)
        .map(|(&b, &s)| {
            let (row, col) = (b >> 4, b & 0x0F);
            sboxes[s as usize].apply((row << 4) | col)
        })
        .collect())
}

pub fn inverse_substitute(v: &[u8], selectors: &[u8], sboxes: &[SBox]) -> Result<Vec<u8>> {
    check_len(v.len(), selectors.len())?;
    check_selectors(selectors, sboxes.len())?;
    Ok(v.iter()
        .zip(selectors)
        .map(|(&b, &s)| sboxes[s as usize].apply_inverse(b))
        .collect())
}

fn encrypt_plane(plane: &[u8], ks: &Keystream, sboxes: &[SBox]) -> Result<Vec<u8>> {
    let permuted = permute(plane, &ks.perm)?;
    let masked = xor_mask(&permuted, &ks.mask)?;
    substitute(&masked, &ks.selectors, sboxes)
}

fn decrypt_plane(plane: &[u8], ks: &Keystream, sboxes: &[SBox]) -> Result<Vec<u8>> {
    let unsubstituted = inverse_substitute(plane, &ks.selectors, sboxes)?;
    let unmasked = xor_mask(&unsubstituted, &ks.mask)?;
    inverse_permute(&unmasked, &ks.perm)
}

fn map_planes(img: &Image, ks: &Keystream, f: impl Fn(&[u8]) -> Result<Vec<u8>>) -> Result<Image> {
    check_len(img.pixels(), ks.len())?;
    let planes = flatten(img);
    let mut out = Vec::with_capacity(planes.len());
    for plane in planes.chunks_exact(img.pixels()) {
        out.extend(f(plane)?);
    }
    Image::from_planes(img.width(), img.height(), img.channels(), &out)
}

/// Encrypts with a precomputed keystream of length `width * height`.
pub fn encrypt_with(img: &Image, key: &CipherKey, ks: &Keystream) -> Result<Image> {
    map_planes(img, ks, |p| encrypt_plane(p, ks, key.sboxes()))
}

pub fn decrypt_with(img: &Image, key: &CipherKey, ks: &Keystream) -> Result<Image> {
    map_planes(img, ks, |p| decrypt_plane(p, ks, key.sboxes()))
}

pub fn encrypt(img: &Image, key: &CipherKey) -> Result<Image> {
    let ks = key.keystream(img.pixels())?;
    encrypt_with(img, key, &ks)
}

pub fn decrypt(img: &Image, key: &CipherKey) -> Result<Image> {
    let ks = key.keystream(img.pixels())?;
    decrypt_with(img, key, &ks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sbox::{build_sbox, LftParams};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn key() -> CipherKey {
        CipherKey::with_lorenz(LorenzParams::with_initial(0.1, 0.2, 0.3)).unwrap()
    }

    #[test]
    fn flatten_examples() {
        assert_eq!(flatten(&Image::new(1, 1, 1, vec![7]).unwrap()), vec![7]);
        assert_eq!(
            flatten(&Image::new(2, 2, 1, vec![1, 2, 3, 4]).unwrap()),
            vec![1, 2, 3, 4]
        );
        let rgb = Image::new(2, 2, 3, (0..12).collect()).unwrap();
        assert_eq!(flatten(&rgb), vec![0, 3, 6, 9, 1, 4, 7, 10, 2, 5, 8, 11]);
    }

    #[test]
    fn permute_examples() {
        assert_eq!(
            permute(&[10, 20, 30], &[0, 1, 2]).unwrap(),
            vec![10, 20, 30]
        );
        assert_eq!(
            permute(&[10, 20, 30], &[2, 0, 1]).unwrap(),
            vec![30, 10, 20]
        );
        assert!(matches!(
            permute(&[1, 2], &[0]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(permute(&[1, 2], &[0, 5]).is_err());
    }

    #[test]
    fn permute_round_trip_65536() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let v: Vec<u8> = (0..65_536).map(|_| rng.gen()).collect();
        let k: Vec<f64> = (0..65_536).map(|_| rng.gen()).collect();
        let perm = lorenz::rank_permutation(&k);
        let p = permute(&v, &perm).unwrap();
        assert_eq!(inverse_permute(&p, &perm).unwrap(), v);
    }

    #[test]
    fn xor_examples() {
        assert_eq!(xor_mask(&[1, 2, 3], &[0, 0, 0]).unwrap(), vec![1, 2, 3]);
        assert_eq!(xor_mask(&[0xFF], &[0x0F]).unwrap(), vec![0xF0]);
        let v = [5u8, 200, 17];
        let m = [99u8, 1, 255];
        assert_eq!(xor_mask(&xor_mask(&v, &m).unwrap(), &m).unwrap(), v);
        assert!(xor_mask(&[1], &[]).is_err());
    }

    #[test]
    fn substitute_examples() {
        let ids = vec![SBox::identity(); 16];
        let v: Vec<u8> = (0..=255).collect();
        let sel: Vec<u8> = (0..256).map(|i| (i % 16) as u8).collect();
        assert_eq!(substitute(&v, &sel, &ids).unwrap(), v);

        let family = sbox::build_family(golden::DEFAULT_LFT).unwrap();
        let p1 = build_sbox(LftParams::new(golden::DEFAULT_LFT, 1)).unwrap();
        assert_eq!(substitute(&[0], &[0], &family).unwrap(), vec![p1.apply(0)]);

        // a table whose entry at row 0, column 0 is 237
        let mut t: [u8; 256] = std::array::from_fn(|i| i as u8);
        t.swap(0, 237);
        let custom = sbox::load_external_sbox(&t).unwrap();
        assert_eq!(substitute(&[0x00], &[0], &[custom]).unwrap(), vec![237]);

        let err = substitute(&[1], &[16], &family).unwrap_err();
        assert!(matches!(
            err,
            Error::SelectorOutOfRange { selector: 16, .. }
        ));
    }

    #[test]
    fn encrypt_decrypt_small_shapes() {
        let key = key();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for (w, h) in [(1, 1), (1, 9), (31, 17)] {
            for c in [1, 3] {
                let img = Image::new(w, h, c, (0..w * h * c).map(|_| rng.gen()).collect()).unwrap();
                let ct = encrypt(&img, &key).unwrap();
                assert!(ct.same_shape(&img));
                assert_eq!(decrypt(&ct, &key).unwrap(), img);
                assert_eq!(encrypt(&img, &key).unwrap(), ct);
            }
        }
    }

    #[test]
    fn keystream_length_must_match() {
        let key = key();
        let img = Image::filled(4, 4, 1, 0).unwrap();
        let ks = key.keystream(15).unwrap();
        assert!(encrypt_with(&img, &key, &ks).is_err());
    }

    #[test]
    fn encryption_is_injective_on_random_images() {
        let key = key();
        let ks = key.keystream(64).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let mut seen = std::collections::HashSet::new();
        let mut plains = std::collections::HashSet::new();
        for _ in 0..1000 {
            let img = Image::new(8, 8, 1, (0..64).map(|_| rng.gen()).collect()).unwrap();
            if plains.insert(img.data().to_vec()) {
                let ct = encrypt_with(&img, &key, &ks).unwrap();
                assert!(seen.insert(ct.into_data()));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn substitution_inverts(v in proptest::collection::vec(any::<u8>(), 1..200), seed in any::<u64>()) {
            let family = sbox::build_family(golden::DEFAULT_LFT).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let sel: Vec<u8> = v.iter().map(|_| rng.gen_range(0..16)).collect();
            let s = substitute(&v, &sel, &family).unwrap();
            prop_assert_eq!(inverse_substitute(&s, &sel, &family).unwrap(), v);
        }
    }
}
