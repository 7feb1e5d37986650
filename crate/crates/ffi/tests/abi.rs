use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use orbvir_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { orbvir_string_free(s) };
    out
}

fn profile(literal: &str) -> *mut OrbvirProfile {
    let lit = CString::new(literal).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { orbvir_profile_parse(lit.as_ptr(), &mut p) }, OrbvirStatus::Ok);
    p
}

#[test]
fn profile_queries() {
    let p = profile("N=2;n=6");
    let mut n = 0usize;
    let mut g = 0u64;
    unsafe {
        assert_eq!(orbvir_profile_points(p, &mut n), OrbvirStatus::Ok);
        assert_eq!(orbvir_profile_genus(p, &mut g), OrbvirStatus::Ok);
    }
    assert_eq!((n, g), (6, 2));

    let mut ranks = [0i64; 4];
    let mut len = 0usize;
    let st = unsafe { orbvir_profile_ranks(p, ranks.as_mut_ptr(), ranks.len(), &mut len) };
    assert_eq!(st, OrbvirStatus::Ok);
    assert_eq!(&ranks[..len], &[2]);
    unsafe { orbvir_profile_free(p) };
}

#[test]
fn short_rank_buffer_reports_the_needed_length() {
    let counts = [3u32, 3, 3, 3];
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { orbvir_profile_new(5, counts.as_ptr(), 4, &mut p) },
        OrbvirStatus::Ok
    );
    let mut len = 0usize;
    let st = unsafe { orbvir_profile_ranks(p, ptr::null_mut(), 0, &mut len) };
    assert_eq!(st, OrbvirStatus::Shape);
    assert_eq!(len, 4);
    unsafe { orbvir_profile_free(p) };
}

#[test]
fn invariants_and_forms() {
    let p = profile("N=3;n=3,0");
    let k = [0u32; 3];
    let gamma = CString::new("1/3,1/3,1/3").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe {
        orbvir_invariant(
            p,
            ORBVIR_CASE_CURVE,
            k.as_ptr(),
            3,
            ptr::null(),
            0,
            gamma.as_ptr(),
            &mut out,
        )
    };
    assert_eq!(st, OrbvirStatus::Ok);
    assert_eq!(take(out), "1/3");
    unsafe { orbvir_profile_free(p) };

    let p = profile("N=2;n=6");
    let k = [1u32, 0, 0, 0, 0, 0];
    let st = unsafe { orbvir_invariant_form(p, ORBVIR_CASE_CURVE, k.as_ptr(), 6, ptr::null(), 0, &mut out) };
    assert_eq!(st, OrbvirStatus::Ok);
    assert_eq!(take(out), "384*c1 + 128*c2 + 128*c3 + 128*c4 + 128*c5 + 128*c6");

    let gamma = CString::new("1,2,3,4,5,6").unwrap();
    assert_eq!(
        unsafe { orbvir_solve_c(p, ORBVIR_CASE_CURVE, gamma.as_ptr(), &mut out) },
        OrbvirStatus::Ok
    );
    assert_eq!(take(out).split(',').count(), 6);
    unsafe { orbvir_profile_free(p) };
}

#[test]
fn stringy_sides() {
    let (mut l, mut r) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { orbvir_stringy(2, 3, &mut l, &mut r) }, OrbvirStatus::Ok);
    assert_eq!(take(l), "5/9");
    assert_eq!(take(r), "5/9");
}

#[test]
fn errors_are_codes_with_messages() {
    let lit = CString::new("N=2;n=5").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { orbvir_profile_parse(lit.as_ptr(), &mut p) }, OrbvirStatus::Ok);
    let mut g = 0u64;
    assert_eq!(unsafe { orbvir_profile_genus(p, &mut g) }, OrbvirStatus::NotAdmissible);
    unsafe { orbvir_profile_free(p) };
    let msg = unsafe { CStr::from_ptr(orbvir_last_error()) }.to_str().unwrap();
    assert!(msg.contains("not admissible"), "{msg}");

    assert_eq!(
        unsafe { orbvir_profile_parse(ptr::null(), &mut p) },
        OrbvirStatus::NullPointer
    );
    assert_eq!(
        unsafe { orbvir_profile_genus(ptr::null(), &mut g) },
        OrbvirStatus::NullPointer
    );

    let q = profile("N=3;n=3,0");
    let mut out = ptr::null_mut();
    let k = [0u32; 3];
    let st = unsafe { orbvir_invariant_form(q, 7, k.as_ptr(), 3, ptr::null(), 0, &mut out) };
    assert_eq!(st, OrbvirStatus::InvalidArgument);
    unsafe { orbvir_profile_free(q) };

    let bad = CString::new("P(1,2,N=3)").unwrap();
    let mut dim = 0u32;
    assert_eq!(
        unsafe { orbvir_model_dimension(bad.as_ptr(), &mut dim) },
        OrbvirStatus::Parse
    );
    let good = CString::new("P(1,1,N=3)").unwrap();
    assert_eq!(
        unsafe { orbvir_model_dimension(good.as_ptr(), &mut dim) },
        OrbvirStatus::Ok
    );
    assert_eq!(dim, 2);
}

#[test]
fn version_is_the_package_version() {
    let v = unsafe { CStr::from_ptr(orbvir_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/orbvir.h")).unwrap();
    for name in [
        "orbvir_profile_parse",
        "orbvir_profile_free",
        "orbvir_invariant",
        "orbvir_invariant_form",
        "orbvir_solve_c",
        "orbvir_string_free",
        "orbvir_last_error",
        "ORBVIR_STATUS_NOT_ADMISSIBLE",
        "typedef struct OrbvirProfile OrbvirProfile",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

fn static_lib() -> Option<PathBuf> {
    // target/<profile>/deps/abi-*  ->  target/<profile>/liborbvir_ffi.a
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("liborbvir_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = static_lib() else {
        eprintln!("static library not found; skipping");
        return;
    };
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = std::env::temp_dir().join(format!("orbvir-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status();
    let Ok(status) = status else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&out).output().unwrap();
    std::fs::remove_file(&out).ok();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "1/3");
}
