use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use batchplate_ffi::*;

const CASE_STUDY: &str = include_str!("../../core/fixtures/case_study.json");

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { bp_string_free(p) };
    s
}

fn last_error() -> String {
    let p = bp_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn case_study() -> *mut BpInstance {
    let json = CString::new(CASE_STUDY).unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(
        unsafe { bp_instance_from_json(json.as_ptr(), &mut inst) },
        BpStatus::Ok
    );
    inst
}

#[test]
fn pack_through_handles() {
    let inst = case_study();
    assert_eq!(unsafe { bp_instance_part_count(inst) }, 10);

    let mut cfg = bp_search_config_default();
    cfg.threads = 2;
    let mut winner = ptr::null_mut();
    assert_eq!(unsafe { bp_pack(inst, &cfg, &mut winner) }, BpStatus::Ok);
    assert_eq!(unsafe { bp_layout_total_mass(winner) }, 1_523_500.0);
    assert_eq!(unsafe { bp_layout_covered_area(winner) }, 37_075.0);
    assert!((unsafe { bp_layout_coverage(winner) } - 37_075.0 / 40_000.0).abs() < 1e-12);

    let n = unsafe { bp_layout_part_count(winner) };
    let mut area = 0.0;
    for i in 0..n {
        let mut p = BpPlacement::default();
        assert_eq!(
            unsafe { bp_layout_placement(winner, i, &mut p) },
            BpStatus::Ok
        );
        area += p.length * p.width;
        let mut name = ptr::null_mut();
        assert_eq!(
            unsafe { bp_layout_part_name(winner, i, &mut name) },
            BpStatus::Ok
        );
        assert!(take_string(name).starts_with('P'));
    }
    assert_eq!(area, 37_075.0);

    let mut svg = ptr::null_mut();
    assert_eq!(unsafe { bp_layout_to_svg(winner, &mut svg) }, BpStatus::Ok);
    assert_eq!(take_string(svg).matches("class=\"placement\"").count(), n);

    unsafe {
        bp_layout_free(winner);
        bp_instance_free(inst);
    }
}

#[test]
fn report_json_matches_core() {
    let inst = case_study();
    let mut cfg = bp_search_config_default();
    cfg.iterations = 30;
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { bp_pack_report_json(inst, &cfg, &mut out) },
        BpStatus::Ok
    );
    let text = take_string(out);

    let core_inst = batchplate::io::parse_instance(CASE_STUDY).unwrap();
    let core_cfg = batchplate::packer::SearchConfig {
        iterations: 30,
        ..Default::default()
    };
    let res = batchplate::packer::multi_start(&core_inst, &core_cfg).unwrap();
    let expected = batchplate::io::PackReport::new(&res, &core_cfg, None).to_json();
    assert_eq!(text, expected);
    unsafe { bp_instance_free(inst) };
}

#[test]
fn oracle_and_limit() {
    let inst = case_study();
    let mut best = ptr::null_mut();
    assert_eq!(
        unsafe { bp_oracle(inst, 100, false, 0, &mut best) },
        BpStatus::OracleLimit
    );
    assert!(last_error().contains("37800"), "{}", last_error());
    assert!(best.is_null());
    assert_eq!(
        unsafe { bp_oracle(inst, 5_000_000, false, 0, &mut best) },
        BpStatus::Ok
    );
    assert_eq!(unsafe { bp_layout_total_mass(best) }, 1_523_500.0);
    unsafe {
        bp_layout_free(best);
        bp_instance_free(inst);
    }
}

#[test]
fn error_codes() {
    let mut inst = ptr::null_mut();
    assert_eq!(
        unsafe { bp_instance_from_json(ptr::null(), &mut inst) },
        BpStatus::NullPointer
    );
    assert_eq!(
        unsafe { bp_instance_from_json(c"{}".as_ptr(), ptr::null_mut()) },
        BpStatus::NullPointer
    );

    let bad_utf8 = [0xffu8, 0xfe, 0];
    assert_eq!(
        unsafe { bp_instance_from_json(bad_utf8.as_ptr().cast(), &mut inst) },
        BpStatus::InvalidUtf8
    );

    assert_eq!(
        unsafe { bp_instance_from_json(c"{ nope".as_ptr(), &mut inst) },
        BpStatus::InvalidInstance
    );
    let empty =
        cr#"{"platform": {"name": "A", "length": 1, "width": 1, "height": 1}, "parts": []}"#;
    assert_eq!(
        unsafe { bp_instance_from_json(empty.as_ptr(), &mut inst) },
        BpStatus::InvalidInstance
    );
    assert_eq!(last_error(), "no parts");
    assert!(inst.is_null());

    let inst = case_study();
    let mut cfg = bp_search_config_default();
    cfg.iterations = 0;
    let mut layout = ptr::null_mut();
    assert_eq!(
        unsafe { bp_pack(inst, &cfg, &mut layout) },
        BpStatus::InvalidConfig
    );
    assert_eq!(unsafe { bp_layout_part_count(ptr::null()) }, 0);
    unsafe {
        bp_layout_free(ptr::null_mut());
        bp_instance_free(inst);
        bp_string_free(ptr::null_mut());
    }
}

#[test]
fn space_size_is_exact() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { bp_search_space_size(25, &mut out) }, BpStatus::Ok);
    assert_eq!(take_string(out), "520469842636666622693081088000000");
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/batchplate.h")
}

#[test]
fn header_declares_every_export() {
    let text = std::fs::read_to_string(header()).unwrap();
    let src = include_str!("../src/lib.rs");
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() > 15);
    for name in exports {
        assert!(
            text.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    assert!(text.contains("typedef struct BpInstance BpInstance;"));
    assert!(text.contains("typedef struct BpLayout BpLayout;"));
    assert!(text.contains("BP_STATUS_ORACLE_LIMIT = 5"));
}

#[test]
fn c_program_links_against_static_lib() {
    let target = Path::new(env!("CARGO_TARGET_TMPDIR")).parent().unwrap();
    let lib_dir = ["debug", "release"]
        .iter()
        .map(|p| target.join(p))
        .find(|d| d.join("libbatchplate_ffi.a").exists());
    let (Some(lib_dir), Ok(cc)) = (lib_dir, which_cc()) else {
        eprintln!("skipping: no C compiler or static library");
        return;
    };
    let exe = Path::new(env!("CARGO_TARGET_TMPDIR")).join("bp_smoke");
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/c/smoke.c");
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(lib_dir.join("libbatchplate_ffi.a"))
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success());
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/case_study.json");
    let out = Command::new(&exe).arg(fixture).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).starts_with(env!("CARGO_PKG_VERSION")));
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| {
            Command::new(c)
                .arg("--version")
                .output()
                .is_ok_and(|o| o.status.success())
        })
        .ok_or(())
}
