//! C ABI over `pglbox`.
//!
//! Every fallible function returns a [`PglStatus`]; on failure the message is
//! available from [`pgl_last_error_message`] on the same thread. Objects are
//! opaque handles released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::slice;

use pglbox::analysis;
use pglbox::error::Error;
use pglbox::golden;
use pglbox::image::Image;
use pglbox::keyfile;
use pglbox::metrics;
use pglbox::polyfind;
use pglbox::sbox::{self, LftParams};
use pglbox::{cipher, CipherKey, LorenzParams, SBox};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PglStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Range = 3,
    NoInverse = 4,
    Reducible = 5,
    NotPrimitive = 6,
    Degenerate = 7,
    NotBijective = 8,
    Length = 9,
    Selector = 10,
    NonFinite = 11,
    Trajectory = 12,
    Format = 13,
    Image = 14,
    Key = 15,
    Io = 16,
    Panic = 17,
}

impl From<&Error> for PglStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::OutOfRange { .. } => PglStatus::Range,
            Error::NoInverse => PglStatus::NoInverse,
            Error::Domain(_) => PglStatus::Domain,
            Error::Reducible(_) => PglStatus::Reducible,
            Error::NotPrimitive(_) => PglStatus::NotPrimitive,
            Error::Degenerate { .. } => PglStatus::Degenerate,
            Error::NotBijective(_) => PglStatus::NotBijective,
            Error::LengthMismatch { .. } => PglStatus::Length,
            Error::SelectorOutOfRange { .. } => PglStatus::Selector,
            Error::NonFinite { .. } => PglStatus::NonFinite,
            Error::InsufficientTrajectory { .. } => PglStatus::Trajectory,
            Error::Format(_) => PglStatus::Format,
            Error::ImageParse { .. } => PglStatus::Image,
            Error::KeyFile { .. } => PglStatus::Key,
            Error::Io(_) => PglStatus::Io,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PglStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PglStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("{what} is null"));
            PglStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(format!("{}: {e}", e.code()));
            PglStatus::from(&e)
        }
        Err(_) => {
            set_last_error("internal panic".into());
            PglStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, what: &'static str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure::Null(what))
    } else {
        Ok(())
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pgl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pgl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Opaque S-box handle.
pub struct PglSBox {
    inner: SBox,
}

/// Opaque cipher key handle.
pub struct PglKey {
    inner: CipherKey,
}

/// Builds the LFT S-box `(a z + b) / (c z + d)` over primitive polynomial
/// `poly_index` (1..=16).
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn pgl_sbox_build(
    a: u8,
    b: u8,
    c: u8,
    d: u8,
    poly_index: u32,
    out: *mut *mut PglSBox,
) -> PglStatus {
    guard(|| {
        non_null(out, "out")?;
        let s = sbox::build_sbox(LftParams::new([a, b, c, d], poly_index as usize))?;
        *out = Box::into_raw(Box::new(PglSBox { inner: s }));
        Ok(())
    })
}

/// Wraps an external 256-byte table; fails with `NOT_BIJECTIVE` otherwise.
///
/// # Safety
/// `table` must point to 256 readable bytes and `out` be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn pgl_sbox_from_table(
    table: *const u8,
    out: *mut *mut PglSBox,
) -> PglStatus {
    guard(|| {
        non_null(table, "table")?;
        non_null(out, "out")?;
        let s = sbox::load_external_sbox(slice::from_raw_parts(table, 256))?;
        *out = Box::into_raw(Box::new(PglSBox { inner: s }));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pgl_sbox_free(s: *mut PglSBox) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Copies the forward (or, with `inverse` set, the inverse) table into `out`.
///
/// # Safety
/// `s` must be a live handle and `out` must have room for 256 bytes.
#[no_mangle]
pub unsafe extern "C" fn pgl_sbox_table(
    s: *const PglSBox,
    inverse: bool,
    out: *mut u8,
) -> PglStatus {
    guard(|| {
        non_null(s, "sbox")?;
        non_null(out, "out")?;
        let s = &(*s).inner;
        let t = if inverse {
            s.inverse_table()
        } else {
            s.table()
        };
        ptr::copy_nonoverlapping(t.as_ptr(), out, 256);
        Ok(())
    })
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PglStrength {
    pub nl_mean: f64,
    pub nl_min: u32,
    pub bic_nl_mean: f64,
    pub bic_sac_mean: f64,
    pub sac_mean: f64,
    pub lp_max_count: u32,
    pub lp_bias: f64,
    pub dp_max_count: u32,
    pub dp: f64,
}

/// Strength criteria of any 256-byte table (bijective or not).
///
/// # Safety
/// `table` must point to 256 readable bytes and `out` be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn pgl_analyze_table(table: *const u8, out: *mut PglStrength) -> PglStatus {
    guard(|| {
        non_null(table, "table")?;
        non_null(out, "out")?;
        let t: &[u8; 256] = slice::from_raw_parts(table, 256)
            .try_into()
            .expect("256 bytes");
        let r = analysis::analyze(t);
        *out = PglStrength {
            nl_mean: r.nonlinearity.mean,
            nl_min: r.nonlinearity.min,
            bic_nl_mean: r.bic.nl_mean,
            bic_sac_mean: r.bic.sac_mean,
            sac_mean: r.sac.mean,
            lp_max_count: r.lp.max_count,
            lp_bias: r.lp.bias,
            dp_max_count: u32::from(r.dp.max_count),
            dp: r.dp.dp,
        };
        Ok(())
    })
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PglLorenzParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub x0: f64,
    pub y0: f64,
    pub z0: f64,
    pub step: f64,
    pub burn_in: usize,
}

impl From<LorenzParams> for PglLorenzParams {
    fn from(l: LorenzParams) -> Self {
        PglLorenzParams {
            a: l.a,
            b: l.b,
            c: l.c,
            x0: l.x0,
            y0: l.y0,
            z0: l.z0,
            step: l.step,
            burn_in: l.burn_in,
        }
    }
}

impl From<PglLorenzParams> for LorenzParams {
    fn from(l: PglLorenzParams) -> Self {
        LorenzParams {
            a: l.a,
            b: l.b,
            c: l.c,
            x0: l.x0,
            y0: l.y0,
            z0: l.z0,
            step: l.step,
            burn_in: l.burn_in,
        }
    }
}

/// Default coefficients (10, 28, 8/3), step 0.01, burn-in 100.
#[no_mangle]
pub extern "C" fn pgl_lorenz_default(x0: f64, y0: f64, z0: f64) -> PglLorenzParams {
    LorenzParams::with_initial(x0, y0, z0).into()
}

/// Creates a key. `lft` (4 bytes) may be null for the default (32, 22, 11, 8);
/// `poly_indices` may be null for all 16 primitive polynomials.
///
/// # Safety
/// Non-null pointers must be readable for the stated lengths; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pgl_key_new(
    params: *const PglLorenzParams,
    lft: *const u8,
    poly_indices: *const u32,
    poly_count: usize,
    out: *mut *mut PglKey,
) -> PglStatus {
    guard(|| {
        non_null(params, "params")?;
        non_null(out, "out")?;
        let lft: [u8; 4] = if lft.is_null() {
            golden::DEFAULT_LFT
        } else {
            slice::from_raw_parts(lft, 4).try_into().expect("4 bytes")
        };
        let indices: Vec<usize> = if poly_indices.is_null() {
            (1..=golden::PRIMITIVE_DEGREE8.len()).collect()
        } else {
            slice::from_raw_parts(poly_indices, poly_count)
                .iter()
                .map(|&i| i as usize)
                .collect()
        };
        let key = CipherKey::new((*params).into(), lft, indices)?;
        *out = Box::into_raw(Box::new(PglKey { inner: key }));
        Ok(())
    })
}

/// Reads a `name = value` key file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pgl_key_from_file(
    path: *const c_char,
    out: *mut *mut PglKey,
) -> PglStatus {
    guard(|| {
        non_null(path, "path")?;
        non_null(out, "out")?;
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| Error::Format("key path is not UTF-8".into()))?;
        let key = keyfile::read_key(Path::new(path))?;
        *out = Box::into_raw(Box::new(PglKey { inner: key }));
        Ok(())
    })
}

/// # Safety
/// `key` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pgl_key_lorenz(
    key: *const PglKey,
    out: *mut PglLorenzParams,
) -> PglStatus {
    guard(|| {
        non_null(key, "key")?;
        non_null(out, "out")?;
        *out = (*(*key).inner.lorenz()).into();
        Ok(())
    })
}

/// # Safety
/// `key` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pgl_key_free(key: *mut PglKey) {
    if !key.is_null() {
        drop(Box::from_raw(key));
    }
}

unsafe fn crypt(
    key: *const PglKey,
    width: usize,
    height: usize,
    channels: usize,
    input: *const u8,
    output: *mut u8,
    forward: bool,
) -> PglStatus {
    guard(|| {
        non_null(key, "key")?;
        non_null(input, "input")?;
        non_null(output, "output")?;
        let len = width
            .checked_mul(height)
            .and_then(|n| n.checked_mul(channels))
            .ok_or_else(|| Error::Domain("image dimensions overflow".into()))?;
        let img = Image::new(
            width,
            height,
            channels,
            slice::from_raw_parts(input, len).to_vec(),
        )?;
        let key = &(*key).inner;
        let res = if forward {
            cipher::encrypt(&img, key)?
        } else {
            cipher::decrypt(&img, key)?
        };
        ptr::copy_nonoverlapping(res.data().as_ptr(), output, len);
        Ok(())
    })
}

/// Encrypts an interleaved row-major image of `width * height * channels` bytes
/// (`channels` 1 or 3). `input` and `output` may be the same buffer.
///
/// # Safety
/// Both buffers must hold `width * height * channels` bytes.
#[no_mangle]
pub unsafe extern "C" fn pgl_encrypt(
    key: *const PglKey,
    width: usize,
    height: usize,
    channels: usize,
    input: *const u8,
    output: *mut u8,
) -> PglStatus {
    crypt(key, width, height, channels, input, output, true)
}

/// Inverse of [`pgl_encrypt`].
///
/// # Safety
/// Both buffers must hold `width * height * channels` bytes.
#[no_mangle]
pub unsafe extern "C" fn pgl_decrypt(
    key: *const PglKey,
    width: usize,
    height: usize,
    channels: usize,
    input: *const u8,
    output: *mut u8,
) -> PglStatus {
    crypt(key, width, height, channels, input, output, false)
}

/// NPCR and UACI, in percent, between two equal-length byte buffers.
///
/// # Safety
/// `a` and `b` must hold `len` bytes; `npcr` and `uaci` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pgl_npcr_uaci(
    a: *const u8,
    b: *const u8,
    len: usize,
    npcr: *mut f64,
    uaci: *mut f64,
) -> PglStatus {
    guard(|| {
        non_null(a, "a")?;
        non_null(b, "b")?;
        non_null(npcr, "npcr")?;
        non_null(uaci, "uaci")?;
        let x = Image::new(len, 1, 1, slice::from_raw_parts(a, len).to_vec())?;
        let y = Image::new(len, 1, 1, slice::from_raw_parts(b, len).to_vec())?;
        let r = metrics::npcr_uaci(&x, &y)?;
        *npcr = r.npcr;
        *uaci = r.uaci;
        Ok(())
    })
}

/// Shannon entropy in bits of the byte histogram of `data`.
///
/// # Safety
/// `data` must hold `len` bytes and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn pgl_entropy(data: *const u8, len: usize, out: *mut f64) -> PglStatus {
    guard(|| {
        non_null(data, "data")?;
        non_null(out, "out")?;
        let img = Image::new(len, 1, 1, slice::from_raw_parts(data, len).to_vec())?;
        *out = metrics::entropy(&img);
        Ok(())
    })
}

/// Closed-form numbers of irreducible and primitive binary polynomials of degree `n` (1..=16).
///
/// # Safety
/// `irreducible` and `primitive` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pgl_poly_counts(
    n: u32,
    irreducible: *mut u64,
    primitive: *mut u64,
) -> PglStatus {
    guard(|| {
        non_null(irreducible, "irreducible")?;
        non_null(primitive, "primitive")?;
        if !(1..=16).contains(&n) {
            return Err(Error::Domain(format!("degree {n} outside 1..=16")).into());
        }
        *irreducible = polyfind::count_irreducible(n, 2)? as u64;
        *primitive = polyfind::count_primitive(n, 2)? as u64;
        Ok(())
    })
}
