//! S-boxes built from linear fractional transformations over GF(2^8) under
//! every primitive degree-8 polynomial, a Lorenz-driven keystream, and an
//! image cipher that chains pixel permutation, XOR masking and per-pixel
//! S-box substitution. Analysis tooling covers S-box strength criteria and
//! the usual image-cipher statistics.

pub mod analysis;
pub mod cipher;
pub mod error;
pub mod gf2n;
pub mod golden;
pub mod image;
pub mod keyfile;
pub mod lorenz;
pub mod metrics;
pub mod poly;
pub mod polyfind;
pub mod sbox;

pub use cipher::{decrypt, encrypt, CipherKey};
pub use error::{Error, Result};
pub use gf2n::Field;
pub use image::Image;
pub use lorenz::LorenzParams;
pub use poly::BinaryPoly;
pub use sbox::{build_sbox, LftParams, SBox};
