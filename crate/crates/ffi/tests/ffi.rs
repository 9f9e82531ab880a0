use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qcsampling_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qcs_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn generate_and_copy_points() {
    unsafe {
        let mut seq = ptr::null_mut();
        assert_eq!(qcs_sequence_generate(c("periodic").as_ptr(), 4, 0, &mut seq), QcsStatus::Ok);
        assert_eq!(qcs_sequence_len(seq), 4);
        let mut xy = [0.0f64; 8];
        assert_eq!(qcs_sequence_points(seq, xy.as_mut_ptr(), 8), QcsStatus::Ok);
        assert_eq!(xy, [0.25, 0.25, 0.75, 0.25, 0.25, 0.75, 0.75, 0.75]);
        assert_eq!(qcs_sequence_points(seq, xy.as_mut_ptr(), 7), QcsStatus::InvalidArgument);
        qcs_sequence_free(seq);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut seq = ptr::null_mut();
        assert_eq!(qcs_sequence_generate(c("spiral").as_ptr(), 4, 0, &mut seq), QcsStatus::InvalidArgument);
        assert!(seq.is_null());
        assert!(last_error().contains("quasicrystal"));
        assert_eq!(qcs_sequence_generate(ptr::null(), 4, 0, &mut seq), QcsStatus::NullPointer);
        assert_eq!(last_error(), "strategy is null");
        assert_eq!(qcs_sequence_generate(c("random").as_ptr(), 0, 0, &mut seq), QcsStatus::InvalidArgument);
        assert_eq!(qcs_sequence_len(ptr::null()), 0);
        qcs_sequence_free(ptr::null_mut());
        qcs_image_free(ptr::null_mut());
        let mut img = ptr::null_mut();
        assert_eq!(qcs_image_load(c("/nonexistent/x.ppm").as_ptr(), &mut img), QcsStatus::Io);
    }
}

#[test]
fn reconstruct_and_psnr() {
    unsafe {
        let mut img = ptr::null_mut();
        assert_eq!(qcs_testimage(c("ramp").as_ptr(), 64, &mut img), QcsStatus::Ok);
        assert_eq!((qcs_image_width(img), qcs_image_height(img)), (64, 64));
        let data = std::slice::from_raw_parts(qcs_image_data(img), 64 * 64 * 3);
        assert_eq!(&data[..3], &[0, 0, 0]);
        assert_eq!(&data[data.len() - 3..], &[255, 255, 255]);

        let mut seq = ptr::null_mut();
        assert_eq!(qcs_sequence_generate(c("quasicrystal").as_ptr(), 500, 0, &mut seq), QcsStatus::Ok);
        let mut rec = ptr::null_mut();
        assert_eq!(qcs_reconstruct(img, seq, c("gouraud").as_ptr(), &mut rec), QcsStatus::Ok);
        let mut db = 0.0;
        assert_eq!(qcs_psnr(img, rec, &mut db), QcsStatus::Ok);
        assert!(db > 30.0 && db.is_finite());
        assert_eq!(qcs_psnr(img, img, &mut db), QcsStatus::Ok);
        assert_eq!(db, f64::INFINITY);

        let copy_bytes = data.to_vec();
        let mut copy = ptr::null_mut();
        assert_eq!(qcs_image_from_rgb(64, 64, copy_bytes.as_ptr(), copy_bytes.len(), &mut copy), QcsStatus::Ok);
        let mut small = ptr::null_mut();
        assert_eq!(qcs_testimage(c("checker:2").as_ptr(), 16, &mut small), QcsStatus::Ok);
        assert_eq!(qcs_psnr(copy, small, &mut db), QcsStatus::DimensionMismatch);

        let dir = tempfile::tempdir().unwrap();
        let path = c(dir.path().join("r.ppm").to_str().unwrap());
        assert_eq!(qcs_image_save(rec, path.as_ptr()), QcsStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(qcs_image_load(path.as_ptr(), &mut back), QcsStatus::Ok);
        assert_eq!(qcs_psnr(rec, back, &mut db), QcsStatus::Ok);
        assert_eq!(db, f64::INFINITY);

        for h in [img, rec, copy, small, back] {
            qcs_image_free(h);
        }
        qcs_sequence_free(seq);
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(qcs_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api_and_compiles() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/qcsampling.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["qcs_sequence_generate", "qcs_reconstruct", "qcs_psnr", "qcs_image_free", "QCS_STATUS_NULL_POINTER"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"qcsampling.h\"\nint main(void) {\n  QcsSequence *s = 0;\n  QcsStatus st = qcs_sequence_generate(\"random\", 8, 1, &s);\n  qcs_sequence_free(s);\n  return st == QCS_STATUS_OK ? 0 : 1;\n}\n",
    )
    .unwrap();
    let compiler = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    match Command::new(&compiler).arg("-fsyntax-only").arg("-Wall").arg("-I").arg(header.parent().unwrap()).arg(&src).output() {
        Ok(o) => assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr)),
        Err(_) => eprintln!("no C compiler found; header syntax check skipped"),
    }
}
