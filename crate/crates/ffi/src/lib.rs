//! C ABI over the batchplate solver.
//!
//! Instances and layouts cross the boundary as opaque handles. Every
//! fallible call returns a [`BpStatus`]; on failure a message is kept per
//! thread and can be read with [`bp_last_error_message`]. Strings returned
//! through `char **` outputs are owned by the caller and released with
//! [`bp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use batchplate::io::{self, LayoutReport, PackReport};
use batchplate::oracle::{self, OracleConfig};
use batchplate::packer::{self, AreaInsertion, FitRule, PackOptions, SearchConfig};
use batchplate::{EconomicParams, Error, Instance, Layout};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInstance = 3,
    InvalidConfig = 4,
    OracleLimit = 5,
    Io = 6,
    OutOfRange = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BpOrdering {
    Random = 0,
    LargestFirst = 1,
    SmallestFirst = 2,
    AsGiven = 3,
}

/// Search parameters. Start from [`bp_search_config_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct BpSearchConfig {
    pub iterations: u64,
    pub seed: u64,
    pub ordering: BpOrdering,
    pub keep_top: u64,
    /// 0 picks one thread per core.
    pub threads: u32,
    pub strict_fit: bool,
    pub append_areas: bool,
}

/// One placed part. `length`/`width` are the placed extents.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BpPlacement {
    pub x: f64,
    pub y: f64,
    pub length: f64,
    pub width: f64,
    pub rotated: bool,
}

/// Opaque validated instance.
pub struct BpInstance {
    inner: Instance,
}

/// Opaque layout.
pub struct BpLayout {
    inner: Layout,
    economics: Option<EconomicParams>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> BpStatus {
    match e {
        Error::Io(_) => BpStatus::Io,
        Error::OracleLimitExceeded { .. } => BpStatus::OracleLimit,
        Error::InvalidConfig(_) | Error::NoCandidates | Error::ExperimentPrecondition { .. } => {
            BpStatus::InvalidConfig
        }
        _ => BpStatus::InvalidInstance,
    }
}

fn fail(e: Error) -> BpStatus {
    set_error(e.to_string());
    status_of(&e)
}

/// Runs `f`, turning panics into `BpStatus::Panic`.
fn guard(f: impl FnOnce() -> BpStatus) -> BpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            BpStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, BpStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(BpStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        BpStatus::InvalidUtf8
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> BpStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            BpStatus::Ok
        }
        Err(_) => {
            set_error("output contains an interior NUL");
            BpStatus::InvalidUtf8
        }
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_error("null pointer argument");
            return BpStatus::NullPointer;
        }
    };
}

impl BpSearchConfig {
    fn to_config(self) -> Result<SearchConfig, BpStatus> {
        let too_big = |what: &str| {
            set_error(format!("{what} does not fit in usize"));
            BpStatus::InvalidConfig
        };
        Ok(SearchConfig {
            iterations: usize::try_from(self.iterations).map_err(|_| too_big("iterations"))?,
            master_seed: self.seed,
            ordering: match self.ordering {
                BpOrdering::Random => packer::Ordering::Random,
                BpOrdering::LargestFirst => packer::Ordering::LargestFirst,
                BpOrdering::SmallestFirst => packer::Ordering::SmallestFirst,
                BpOrdering::AsGiven => packer::Ordering::AsGiven,
            },
            keep_top: usize::try_from(self.keep_top).map_err(|_| too_big("keep_top"))?,
            pack: pack_options(self.strict_fit, self.append_areas),
            threads: self.threads as usize,
        })
    }
}

fn pack_options(strict_fit: bool, append_areas: bool) -> PackOptions {
    PackOptions {
        fit_rule: if strict_fit {
            FitRule::Strict
        } else {
            FitRule::Inclusive
        },
        insertion: if append_areas {
            AreaInsertion::Append
        } else {
            AreaInsertion::InPlace
        },
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn bp_search_config_default() -> BpSearchConfig {
    let d = SearchConfig::default();
    BpSearchConfig {
        iterations: d.iterations as u64,
        seed: d.master_seed,
        ordering: BpOrdering::Random,
        keep_top: d.keep_top as u64,
        threads: 0,
        strict_fit: false,
        append_areas: false,
    }
}

/// Parses and validates an instance document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_instance_from_json(
    json: *const c_char,
    out: *mut *mut BpInstance,
) -> BpStatus {
    non_null!(out);
    guard(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match io::parse_instance(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(BpInstance { inner }));
                BpStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Loads an instance document from a file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_instance_load(
    path: *const c_char,
    out: *mut *mut BpInstance,
) -> BpStatus {
    non_null!(out);
    guard(|| {
        let path = match read_str(path) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match io::load_instance(path) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(BpInstance { inner }));
                BpStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `instance` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn bp_instance_part_count(instance: *const BpInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.inner.parts().len())
}

/// # Safety
/// `instance` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bp_instance_free(instance: *mut BpInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Multi-start search; writes the winning layout.
///
/// # Safety
/// Pointers must be valid; `config` may be NULL for defaults.
#[no_mangle]
pub unsafe extern "C" fn bp_pack(
    instance: *const BpInstance,
    config: *const BpSearchConfig,
    winner: *mut *mut BpLayout,
) -> BpStatus {
    non_null!(instance, winner);
    guard(|| {
        let inst = &(*instance).inner;
        let cfg = match config
            .as_ref()
            .copied()
            .unwrap_or_else(|| bp_search_config_default())
            .to_config()
        {
            Ok(c) => c,
            Err(s) => return s,
        };
        match packer::multi_start(inst, &cfg) {
            Ok(res) => {
                *winner = Box::into_raw(Box::new(BpLayout {
                    inner: res.winner().layout.clone(),
                    economics: inst.economics().copied(),
                }));
                BpStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Multi-start search; writes the full report document as JSON.
///
/// # Safety
/// Pointers must be valid; `config` may be NULL for defaults.
#[no_mangle]
pub unsafe extern "C" fn bp_pack_report_json(
    instance: *const BpInstance,
    config: *const BpSearchConfig,
    out: *mut *mut c_char,
) -> BpStatus {
    non_null!(instance, out);
    guard(|| {
        let inst = &(*instance).inner;
        let cfg = match config
            .as_ref()
            .copied()
            .unwrap_or_else(|| bp_search_config_default())
            .to_config()
        {
            Ok(c) => c,
            Err(s) => return s,
        };
        match packer::multi_start(inst, &cfg) {
            Ok(res) => write_string(out, PackReport::new(&res, &cfg, inst.economics()).to_json()),
            Err(e) => fail(e),
        }
    })
}

/// Exhaustive search over part orderings; writes the heaviest layout.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bp_oracle(
    instance: *const BpInstance,
    limit: u64,
    full_rotation: bool,
    threads: u32,
    best_by_mass: *mut *mut BpLayout,
) -> BpStatus {
    non_null!(instance, best_by_mass);
    guard(|| {
        let inst = &(*instance).inner;
        let cfg = OracleConfig {
            limit,
            full_rotation,
            threads: threads as usize,
            ..Default::default()
        };
        match oracle::enumerate_optimal_with(inst, &cfg) {
            Ok(res) => {
                *best_by_mass = Box::into_raw(Box::new(BpLayout {
                    inner: res.best_by_mass,
                    economics: inst.economics().copied(),
                }));
                BpStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `layout` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn bp_layout_total_mass(layout: *const BpLayout) -> f64 {
    layout.as_ref().map_or(0.0, |l| l.inner.total_mass())
}

/// # Safety
/// `layout` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn bp_layout_covered_area(layout: *const BpLayout) -> f64 {
    layout.as_ref().map_or(0.0, |l| l.inner.covered_area())
}

/// Covered fraction of the platform, in `[0, 1]`.
///
/// # Safety
/// `layout` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn bp_layout_coverage(layout: *const BpLayout) -> f64 {
    layout.as_ref().map_or(0.0, |l| l.inner.coverage())
}

/// # Safety
/// `layout` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn bp_layout_part_count(layout: *const BpLayout) -> usize {
    layout.as_ref().map_or(0, |l| l.inner.part_count())
}

/// # Safety
/// `layout` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_layout_placement(
    layout: *const BpLayout,
    index: usize,
    out: *mut BpPlacement,
) -> BpStatus {
    non_null!(layout, out);
    match (*layout).inner.placements().get(index) {
        Some(p) => {
            *out = BpPlacement {
                x: p.x(),
                y: p.y(),
                length: p.placed_length(),
                width: p.placed_width(),
                rotated: p.rotated(),
            };
            BpStatus::Ok
        }
        None => {
            set_error(format!("placement index {index} out of range"));
            BpStatus::OutOfRange
        }
    }
}

/// Name of the part at `index`.
///
/// # Safety
/// `layout` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_layout_part_name(
    layout: *const BpLayout,
    index: usize,
    out: *mut *mut c_char,
) -> BpStatus {
    non_null!(layout, out);
    match (*layout).inner.placements().get(index) {
        Some(p) => write_string(out, p.part().name().to_owned()),
        None => {
            set_error(format!("placement index {index} out of range"));
            BpStatus::OutOfRange
        }
    }
}

/// # Safety
/// `layout` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_layout_to_json(
    layout: *const BpLayout,
    out: *mut *mut c_char,
) -> BpStatus {
    non_null!(layout, out);
    guard(|| {
        let l = &*layout;
        let report = LayoutReport::new(&l.inner, l.economics.as_ref(), None);
        write_string(
            out,
            serde_json::to_string_pretty(&report).expect("serializable"),
        )
    })
}

/// # Safety
/// `layout` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_layout_to_svg(
    layout: *const BpLayout,
    out: *mut *mut c_char,
) -> BpStatus {
    non_null!(layout, out);
    guard(|| write_string(out, io::render_svg(&(*layout).inner)))
}

/// # Safety
/// `layout` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bp_layout_free(layout: *mut BpLayout) {
    if !layout.is_null() {
        drop(Box::from_raw(layout));
    }
}

/// `2^n · n!` in decimal.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_search_space_size(n: u32, out: *mut *mut c_char) -> BpStatus {
    non_null!(out);
    guard(|| write_string(out, batchplate::search_space_size(n).to_string()))
}
