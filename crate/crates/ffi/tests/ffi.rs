use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use glim_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(glim_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    glim_string_free(s);
    out
}

#[test]
fn json_round_trip_through_handles() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(glim_limit_ball(2, true, &mut g), GlimStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(glim_graph_to_json(g, &mut text), GlimStatus::Ok);
        let json = take_string(text);
        assert!(json.contains("\"glim-graph-v1\""));

        let c = CString::new(json.clone()).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(glim_graph_from_json(c.as_ptr(), &mut back), GlimStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(glim_graph_to_json(back, &mut again), GlimStatus::Ok);
        assert_eq!(take_string(again), json);

        let (mut n, mut m) = (0, 0);
        assert_eq!(glim_graph_counts(back, &mut n, &mut m), GlimStatus::Ok);
        // tree spheres 1, 3, 6 against C4 spheres 1, 2, 1 with total distance <= 2
        assert_eq!(n, 4 + 3 * 3 + 6);
        glim_graph_free(g);
        glim_graph_free(back);
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(glim_random_regular(5, 3, 1, &mut g), GlimStatus::InvalidArgument);
        assert!(last_error().contains("parity"), "{}", last_error());
        assert!(g.is_null());

        let bad = CString::new(r#"{"version":"v0","n":1,"edges":[]}"#).unwrap();
        assert_eq!(glim_graph_from_json(bad.as_ptr(), &mut g), GlimStatus::Format);
        assert_eq!(glim_graph_from_json(ptr::null(), &mut g), GlimStatus::NullPointer);

        let mut girth = 0;
        assert_eq!(glim_girth(ptr::null(), &mut girth), GlimStatus::NullPointer);

        assert_eq!(glim_random_regular(10, 3, 1, &mut g), GlimStatus::Ok);
        assert_eq!(last_error(), "");
        assert_eq!(glim_graph_counts(g, ptr::null_mut(), ptr::null_mut()), GlimStatus::NullPointer);
        glim_graph_free(g);
    }
}

#[test]
fn graph_queries() {
    let petersen = r#"{"version":"glim-graph-v1","n":10,"edges":[[0,1],[0,4],[0,5],[1,2],[1,6],[2,3],[2,7],[3,4],[3,8],[4,9],[5,7],[5,8],[6,8],[6,9],[7,9]]}"#;
    unsafe {
        let c = CString::new(petersen).unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(glim_graph_from_json(c.as_ptr(), &mut g), GlimStatus::Ok);
        let mut girth = 0;
        assert_eq!(glim_girth(g, &mut girth), GlimStatus::Ok);
        assert_eq!(girth, 5);
        let (mut size, mut exact) = (0, false);
        assert_eq!(glim_mis(g, 150, &mut size, &mut exact), GlimStatus::Ok);
        assert_eq!((size, exact), (4, true));

        let mut csv = ptr::null_mut();
        assert_eq!(glim_ball_census_csv(g, 1, &mut csv), GlimStatus::Ok);
        let csv = take_string(csv);
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.trim_end().ends_with(",10,1"), "{csv}");

        let mut code = ptr::null_mut();
        assert_eq!(glim_canonical_code(g, 3, 1, &mut code), GlimStatus::Ok);
        assert!(csv.contains(&take_string(code)));
        assert_eq!(glim_canonical_code(g, 99, 1, &mut code), GlimStatus::InvalidArgument);

        let mut p = ptr::null_mut();
        assert_eq!(glim_product_c4(g, &mut p), GlimStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(glim_graph_to_json(p, &mut text), GlimStatus::Ok);
        assert!(take_string(text).contains("\"fibers\""));
        glim_graph_free(p);
        glim_graph_free(g);
    }
}

#[test]
fn reports() {
    unsafe {
        let (mut json, mut pass) = (ptr::null_mut(), false);
        assert_eq!(glim_theorem2_report(1, 1, &mut json, &mut pass), GlimStatus::Ok);
        assert!(pass);
        let text = take_string(json);
        assert!(text.contains("\"pass\": true"));

        assert_eq!(glim_theorem1_report(20, 4, 3, 2, 5, &mut json, ptr::null_mut()), GlimStatus::Ok);
        let first = take_string(json);
        assert_eq!(glim_theorem1_report(20, 4, 3, 2, 5, &mut json, &mut pass), GlimStatus::Ok);
        assert_eq!(take_string(json), first);

        assert_eq!(glim_theorem1_report(20, 2, 3, 2, 5, &mut json, &mut pass), GlimStatus::InvalidArgument);
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(crate_dir().join("include/glim.h")).unwrap();
    for name in [
        "typedef struct GlimGraph GlimGraph",
        "GLIM_STATUS_OK = 0",
        "glim_graph_from_json",
        "glim_graph_to_json",
        "glim_graph_free",
        "glim_string_free",
        "glim_last_error",
        "glim_theorem1_report",
        "glim_theorem2_report",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

/// Compile and run a C program against the static library, when a C compiler is present.
#[test]
fn c_program_links_and_runs() {
    let Ok(cc) = which_cc() else { return };
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libglim_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let out = tempfile::tempdir().unwrap();
    let bin = out.path().join("smoke");
    let status = Command::new(cc)
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc);
        }
    }
    Err(())
}
