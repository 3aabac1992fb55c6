use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use serde_json::Value;
use sra_trace_ffi::*;

fn take_json(p: *mut c_char) -> Value {
    assert!(!p.is_null());
    let v = serde_json::from_str(unsafe { CStr::from_ptr(p) }.to_str().unwrap()).unwrap();
    unsafe { sra_string_free(p) };
    v
}

fn last_error() -> String {
    let p = sra_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn coincide_through_handles() {
    let mut cert = ptr::null_mut();
    let st = unsafe { sra_coincide(3, 2, 0, ptr::null(), 10, &mut cert) };
    assert_eq!(st, SraStatus::Ok);
    assert!(sra_last_error().is_null());
    unsafe {
        assert_eq!(sra_certificate_equal(cert), 1);
        assert_eq!(sra_certificate_verified(cert), 1);
        let mut json = ptr::null_mut();
        assert_eq!(sra_certificate_json(cert, &mut json), SraStatus::Ok);
        let v = take_json(json);
        assert_eq!(v["verdict"], "equal");
        assert_eq!(v["J"], 7);
        sra_certificate_free(cert);
    }
}

#[test]
fn family_values_and_moments() {
    let mut t = ptr::null_mut();
    let tau = CString::new("1").unwrap();
    let st = unsafe { sra_trace_new_family(3, SraFamily::Trace, 1, tau.as_ptr(), &mut t) };
    assert_eq!(st, SraStatus::Ok);
    unsafe {
        assert_eq!(sra_trace_kappa(t), 1);
        let mut json = ptr::null_mut();
        assert_eq!(sra_trace_values_json(t, &mut json), SraStatus::Ok);
        let v = take_json(json);
        assert_eq!(v["n"], 3);

        assert_eq!(sra_trace_moments(t, 4, 8, &mut json), SraStatus::Ok);
        let v = take_json(json);
        let m = v["m"].as_array().unwrap();
        assert_eq!(m.len(), 3);
        for row in &m[1..] {
            for e in row.as_array().unwrap() {
                assert!(e["value"]["coeffs"].as_array().unwrap().iter().all(|c| c == "0"));
            }
        }
        sra_trace_free(t);
    }
}

#[test]
fn eval_generic_trace() {
    let params: Vec<CString> = ["1", "2"].iter().map(|s| CString::new(*s).unwrap()).collect();
    let ptrs: Vec<*const c_char> = params.iter().map(|c| c.as_ptr()).collect();
    let nu = CString::new("2/7").unwrap();
    let expr = CString::new("S1").unwrap();
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(sra_trace_new(3, nu.as_ptr(), -1, ptrs.as_ptr(), 2, &mut t), SraStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(sra_trace_eval(t, expr.as_ptr(), 0, &mut json), SraStatus::Ok);
        let v = take_json(json);
        assert_eq!(v["coeffs"][0], "2");
        sra_trace_free(t);
    }
}

#[test]
fn error_codes() {
    let mut json = ptr::null_mut();
    let bad = CString::new("1/0").unwrap();
    assert_eq!(unsafe { sra_classify(3, bad.as_ptr(), &mut json) }, SraStatus::Usage);
    assert!(json.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(unsafe { sra_classify(3, ptr::null(), &mut json) }, SraStatus::NullPointer);
    assert!(last_error().contains("nu"));

    let nu = CString::new("1/3").unwrap();
    assert_eq!(unsafe { sra_classify(3, nu.as_ptr(), ptr::null_mut()) }, SraStatus::NullPointer);

    let mut t = ptr::null_mut();
    assert_eq!(unsafe { sra_trace_new(3, nu.as_ptr(), 2, ptr::null(), 0, &mut t) }, SraStatus::Usage);
    assert!(t.is_null());

    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { sra_coincide(3, 3, 0, ptr::null(), 0, &mut cert) }, SraStatus::Usage);
    assert!(cert.is_null());

    let nu = CString::new("1/4").unwrap();
    assert_eq!(unsafe { sra_trace_new(3, nu.as_ptr(), 1, ptr::null(), 0, &mut t) }, SraStatus::Usage);

    let one = CString::new("1").unwrap();
    let p = [one.as_ptr()];
    unsafe {
        assert_eq!(sra_trace_new(3, nu.as_ptr(), 1, p.as_ptr(), 1, &mut t), SraStatus::Ok);
        assert_eq!(sra_trace_moments(t, 10, 4, &mut json), SraStatus::Resource);
        sra_trace_free(t);
    }

    // success clears the previous error
    assert_eq!(unsafe { sra_classify(3, one.as_ptr(), &mut json) }, SraStatus::Ok);
    assert!(sra_last_error().is_null());
    unsafe { sra_string_free(json) };

    unsafe {
        assert_eq!(sra_certificate_equal(ptr::null()), -1);
        assert_eq!(sra_trace_kappa(ptr::null()), 0);
        sra_trace_free(ptr::null_mut());
        sra_certificate_free(ptr::null_mut());
        sra_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_exports() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let h = std::fs::read_to_string(dir.join("include/sra_trace.h")).unwrap();
    let src = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for f in exports {
        assert!(h.contains(&format!(" {f}(")) || h.contains(&format!("*{f}(")), "{f} missing");
    }
    assert!(h.contains("typedef struct SraTrace SraTrace;"));
    assert!(h.contains("SRA_STATUS_RESOURCE = 3"));
}

/// Compiles tests/c/smoke.c against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    // cargo test builds only the rlib; produce the staticlib alongside it
    let target_dir = profile_dir.parent().unwrap();
    let mut build = Command::new(env!("CARGO"));
    build.args(["build", "--quiet", "--lib", "-p", "sra-trace-ffi", "--target-dir"]).arg(target_dir);
    if profile_dir.file_name().is_some_and(|n| n == "release") {
        build.arg("--release");
    }
    assert!(build.status().expect("cargo available").success());
    let lib = profile_dir.join("libsra_trace_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("sra_trace_smoke");
    let status = Command::new(std::env::var("CC").unwrap_or_else(|_| "cc".into()))
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok 0.1.0"));
}
