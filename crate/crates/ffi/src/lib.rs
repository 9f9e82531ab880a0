//! C ABI for `qcsampling`.
//!
//! Every fallible function returns a [`QcsStatus`]; on failure a message is
//! available from [`qcs_last_error_message`] on the same thread. Objects are
//! opaque handles owned by the caller and released with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use qcsampling::harness::{self, Method, TestImage};
use qcsampling::reconstruct::{gouraud, psnr, sample_colors, shepard};
use qcsampling::samplers::{generate, QuasicrystalConfig};
use qcsampling::{QcError, RasterImage, SampleSequence, Strategy};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Overflow = 3,
    Degenerate = 4,
    DimensionMismatch = 5,
    Parse = 6,
    Io = 7,
    Panic = 8,
}

/// Opaque sample sequence.
pub struct QcsSequence(SampleSequence);

/// Opaque RGB image.
pub struct QcsImage(RasterImage);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &QcError) -> QcsStatus {
    match e {
        QcError::Overflow(_) | QcError::BoundOverflow { .. } => QcsStatus::Overflow,
        QcError::Degenerate(_) | QcError::DuplicatePoint(_) => QcsStatus::Degenerate,
        QcError::InvalidArgument(_) => QcsStatus::InvalidArgument,
        QcError::DimensionMismatch(..) => QcsStatus::DimensionMismatch,
        QcError::Parse { .. } => QcsStatus::Parse,
        QcError::Io(_) => QcsStatus::Io,
    }
}

enum Failure {
    Null(&'static str),
    Lib(QcError),
}

impl From<QcError> for Failure {
    fn from(e: QcError) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QcsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QcsStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("{what} is null"));
            QcsStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            QcsStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Lib(QcError::InvalidArgument(format!("{what} is not valid UTF-8"))))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

/// Message of the last failed call on this thread; empty if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qcs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qcs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Generates `n` samples. `strategy` is one of `periodic`, `quasicrystal`,
/// `farthest`, `jittered`, `quasirandom`, `random`. The quasicrystal sampler
/// uses its default windows.
///
/// # Safety
/// `strategy` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qcs_sequence_generate(
    strategy: *const c_char,
    n: usize,
    seed: u64,
    out: *mut *mut QcsSequence,
) -> QcsStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let s: Strategy = str_arg(strategy, "strategy")?.parse()?;
        let seq = generate(s, n, seed, &QuasicrystalConfig::default())?;
        *out = Box::into_raw(Box::new(QcsSequence(seq)));
        Ok(())
    })
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `seq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcs_sequence_len(seq: *const QcsSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.0.len())
}

/// Copies the points as interleaved `x, y` pairs into `xy`, which holds `capacity` doubles.
///
/// # Safety
/// `seq` must be a live handle and `xy` must point to `capacity` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qcs_sequence_points(seq: *const QcsSequence, xy: *mut f64, capacity: usize) -> QcsStatus {
    guard(|| {
        let s = ref_arg(seq, "seq")?;
        if xy.is_null() {
            return Err(Failure::Null("xy"));
        }
        let need = 2 * s.0.len();
        if capacity < need {
            return Err(QcError::InvalidArgument(format!("buffer holds {capacity} doubles, need {need}")).into());
        }
        let dst = std::slice::from_raw_parts_mut(xy, need);
        for (k, p) in s.0.points.iter().enumerate() {
            dst[2 * k] = p.x;
            dst[2 * k + 1] = p.y;
        }
        Ok(())
    })
}

/// # Safety
/// `seq` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qcs_sequence_free(seq: *mut QcsSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Creates an image from `width·height·3` bytes of packed RGB, row-major.
///
/// # Safety
/// `rgb` must point to `len` readable bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcs_image_from_rgb(
    width: u32,
    height: u32,
    rgb: *const u8,
    len: usize,
    out: *mut *mut QcsImage,
) -> QcsStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        if rgb.is_null() {
            return Err(Failure::Null("rgb"));
        }
        let bytes = std::slice::from_raw_parts(rgb, len);
        if len != width as usize * height as usize * 3 {
            return Err(QcError::InvalidArgument(format!("{len} bytes for a {width}x{height} image")).into());
        }
        let pixels = bytes.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
        *out = Box::into_raw(Box::new(QcsImage(RasterImage::from_pixels(width, height, pixels)?)));
        Ok(())
    })
}

/// Renders a synthetic image: `spiral`, `ramp`, `checker` or `checker:K`.
///
/// # Safety
/// `kind` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcs_testimage(kind: *const c_char, size: u32, out: *mut *mut QcsImage) -> QcsStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let k: TestImage = str_arg(kind, "kind")?.parse()?;
        *out = Box::into_raw(Box::new(QcsImage(harness::testimage(k, size)?)));
        Ok(())
    })
}

/// Reads a PPM (or PNG when built with that feature).
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcs_image_load(path: *const c_char, out: *mut *mut QcsImage) -> QcsStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let img = harness::load_image(Path::new(str_arg(path, "path")?))?;
        *out = Box::into_raw(Box::new(QcsImage(img)));
        Ok(())
    })
}

/// # Safety
/// `img` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qcs_image_save(img: *const QcsImage, path: *const c_char) -> QcsStatus {
    guard(|| {
        let img = ref_arg(img, "img")?;
        harness::save_image(Path::new(str_arg(path, "path")?), &img.0)?;
        Ok(())
    })
}

/// # Safety
/// `img` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcs_image_width(img: *const QcsImage) -> u32 {
    img.as_ref().map_or(0, |i| i.0.width)
}

/// # Safety
/// `img` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcs_image_height(img: *const QcsImage) -> u32 {
    img.as_ref().map_or(0, |i| i.0.height)
}

/// Packed RGB bytes, `width·height·3` long, valid while the handle lives.
///
/// # Safety
/// `img` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcs_image_data(img: *const QcsImage) -> *const u8 {
    img.as_ref().map_or(ptr::null(), |i| i.0.pixels.as_ptr().cast())
}

/// # Safety
/// `img` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qcs_image_free(img: *mut QcsImage) {
    if !img.is_null() {
        drop(Box::from_raw(img));
    }
}

/// Samples `img` at the sequence's points and reconstructs it at full size
/// with `method` = `shepard` or `gouraud`.
///
/// # Safety
/// Handles must be live, `method` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcs_reconstruct(
    img: *const QcsImage,
    seq: *const QcsSequence,
    method: *const c_char,
    out: *mut *mut QcsImage,
) -> QcsStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let img = &ref_arg(img, "img")?.0;
        let seq = &ref_arg(seq, "seq")?.0;
        let m: Method = str_arg(method, "method")?.parse()?;
        let s = sample_colors(img, &seq.points)?;
        let rec = match m {
            Method::Shepard => shepard(&s, img.width, img.height)?,
            Method::Gouraud => gouraud(&s, img.width, img.height)?,
        };
        *out = Box::into_raw(Box::new(QcsImage(rec)));
        Ok(())
    })
}

/// PSNR in dB; identical images give positive infinity.
///
/// # Safety
/// Handles must be live and `db` writable.
#[no_mangle]
pub unsafe extern "C" fn qcs_psnr(a: *const QcsImage, b: *const QcsImage, db: *mut f64) -> QcsStatus {
    guard(|| {
        let db = out_arg(db, "db")?;
        *db = psnr(&ref_arg(a, "a")?.0, &ref_arg(b, "b")?.0)?.db();
        Ok(())
    })
}
