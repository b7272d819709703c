//! C ABI for the classifiability estimator.
//!
//! Datasets are opaque handles created by `clsf_dataset_*` constructors and
//! released with `clsf_dataset_free`. Every fallible call returns a
//! [`ClsfStatus`]; on failure, `clsf_last_error` returns a thread-local
//! message describing what went wrong. Strings returned through out
//! parameters are owned by the caller and must be released with
//! `clsf_string_free`.

use classifiability::{
    classifiability as estimate, synth, ClassTable, LabeledDataset, MetricKind, NeighborhoodSpec,
};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::str::FromStr;

/// Result code of every fallible FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClsfStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument failed validation (bad metric name, bad JSON, bad k).
    InvalidArgument = 2,
    /// The dataset violated an invariant (non-finite value, empty class).
    DataError = 3,
    /// The computation rejected its inputs (e.g. k exceeds n - 1).
    ComputeError = 4,
    /// File access failed.
    IoError = 5,
}

/// Opaque dataset handle.
pub struct ClsfDataset(LabeledDataset);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: impl Into<Vec<u8>>) {
    let text = CString::new(message).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn fail(status: ClsfStatus, message: impl ToString) -> ClsfStatus {
    set_last_error(message.to_string());
    status
}

/// Message describing the most recent failure on this thread.
///
/// The pointer stays valid until the next failing call on the same thread.
/// Never free it.
#[no_mangle]
pub extern "C" fn clsf_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string. Never free it.
#[no_mangle]
pub extern "C" fn clsf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

unsafe fn cstr_arg<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, ClsfStatus> {
    if ptr.is_null() {
        return Err(fail(ClsfStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(ClsfStatus::InvalidArgument, format!("{name} is not valid UTF-8")))
}

fn export_dataset(dataset: LabeledDataset, out: *mut *mut ClsfDataset) -> ClsfStatus {
    unsafe {
        *out = Box::into_raw(Box::new(ClsfDataset(dataset)));
    }
    ClsfStatus::Ok
}

/// Loads a dataset from a CSV file with a header row.
///
/// All non-label columns are read as numeric features; the label column
/// maps to classes in first-appearance order.
///
/// # Safety
/// `path` and `label_column` must be NUL-terminated strings; `out` must be
/// a valid pointer to a dataset-handle slot.
#[no_mangle]
pub unsafe extern "C" fn clsf_dataset_from_csv(
    path: *const c_char,
    label_column: *const c_char,
    out: *mut *mut ClsfDataset,
) -> ClsfStatus {
    if out.is_null() {
        return fail(ClsfStatus::NullPointer, "out is null");
    }
    let path = match cstr_arg(path, "path") {
        Ok(s) => s,
        Err(status) => return status,
    };
    let label = match cstr_arg(label_column, "label_column") {
        Ok(s) => s,
        Err(status) => return status,
    };
    let schema = match classifiability::io::infer_schema(Path::new(path), label, &[]) {
        Ok(schema) => schema,
        Err(e) => return fail(ClsfStatus::IoError, e),
    };
    match classifiability::io::load_csv(Path::new(path), &schema) {
        Ok(dataset) => export_dataset(dataset, out),
        Err(e) => fail(ClsfStatus::DataError, e),
    }
}

/// Builds a dataset from a row-major feature buffer and integer labels.
///
/// Classes are named "0".."n_classes - 1"; every class must appear in
/// `labels` at least once.
///
/// # Safety
/// `features` must point to `n * d` doubles, `labels` to `n` values in
/// `0..n_classes`; `out` must be a valid pointer to a dataset-handle slot.
#[no_mangle]
pub unsafe extern "C" fn clsf_dataset_from_arrays(
    features: *const f64,
    n: usize,
    d: usize,
    labels: *const u32,
    n_classes: u32,
    out: *mut *mut ClsfDataset,
) -> ClsfStatus {
    if out.is_null() || features.is_null() || labels.is_null() {
        return fail(ClsfStatus::NullPointer, "features, labels and out must not be null");
    }
    if n == 0 || d == 0 || n_classes == 0 {
        return fail(ClsfStatus::InvalidArgument, "n, d and n_classes must be positive");
    }
    let features = std::slice::from_raw_parts(features, n * d).to_vec();
    let labels: Vec<usize> =
        std::slice::from_raw_parts(labels, n).iter().map(|&l| l as usize).collect();
    let classes = match ClassTable::numbered(n_classes as usize) {
        Ok(classes) => classes,
        Err(e) => return fail(ClsfStatus::InvalidArgument, e),
    };
    match LabeledDataset::new(features, d, labels, classes) {
        Ok(dataset) => export_dataset(dataset, out),
        Err(e) => fail(ClsfStatus::DataError, e),
    }
}

/// Generates a synthetic dataset from a JSON spec, e.g.
/// `{"kind":"moons","n":500,"noise":0.1,"seed":7}`.
///
/// # Safety
/// `spec_json` must be a NUL-terminated string; `out` must be a valid
/// pointer to a dataset-handle slot.
#[no_mangle]
pub unsafe extern "C" fn clsf_dataset_generate(
    spec_json: *const c_char,
    out: *mut *mut ClsfDataset,
) -> ClsfStatus {
    if out.is_null() {
        return fail(ClsfStatus::NullPointer, "out is null");
    }
    let text = match cstr_arg(spec_json, "spec_json") {
        Ok(s) => s,
        Err(status) => return status,
    };
    let spec: synth::SynthSpec = match serde_json::from_str(text) {
        Ok(spec) => spec,
        Err(e) => return fail(ClsfStatus::InvalidArgument, e),
    };
    match synth::generate(&spec) {
        Ok(dataset) => export_dataset(dataset, out),
        Err(e) => fail(ClsfStatus::DataError, e),
    }
}

/// Releases a dataset handle. Passing null is a no-op.
///
/// # Safety
/// `dataset` must be a handle returned by a `clsf_dataset_*` constructor
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn clsf_dataset_free(dataset: *mut ClsfDataset) {
    if !dataset.is_null() {
        drop(Box::from_raw(dataset));
    }
}

/// Number of rows, or 0 for a null handle.
///
/// # Safety
/// `dataset` must be a live dataset handle or null.
#[no_mangle]
pub unsafe extern "C" fn clsf_dataset_rows(dataset: *const ClsfDataset) -> usize {
    dataset.as_ref().map_or(0, |d| d.0.n())
}

/// Number of feature columns, or 0 for a null handle.
///
/// # Safety
/// `dataset` must be a live dataset handle or null.
#[no_mangle]
pub unsafe extern "C" fn clsf_dataset_cols(dataset: *const ClsfDataset) -> usize {
    dataset.as_ref().map_or(0, |d| d.0.d())
}

/// Number of classes, or 0 for a null handle.
///
/// # Safety
/// `dataset` must be a live dataset handle or null.
#[no_mangle]
pub unsafe extern "C" fn clsf_dataset_classes(dataset: *const ClsfDataset) -> usize {
    dataset.as_ref().map_or(0, |d| d.0.num_classes())
}

unsafe fn estimate_with(
    dataset: *const ClsfDataset,
    spec: Result<NeighborhoodSpec, ClsfStatus>,
    out_limit: *mut f64,
) -> ClsfStatus {
    if out_limit.is_null() {
        return fail(ClsfStatus::NullPointer, "out_limit is null");
    }
    let dataset = match dataset.as_ref() {
        Some(d) => &d.0,
        None => return fail(ClsfStatus::NullPointer, "dataset is null"),
    };
    let spec = match spec {
        Ok(spec) => spec,
        Err(status) => return status,
    };
    match estimate(dataset, &spec) {
        Ok(report) => {
            *out_limit = report.limit;
            ClsfStatus::Ok
        }
        Err(e) => fail(ClsfStatus::ComputeError, e),
    }
}

unsafe fn parse_metric(metric: *const c_char) -> Result<MetricKind, ClsfStatus> {
    let name = cstr_arg(metric, "metric")?;
    MetricKind::from_str(name).map_err(|e| fail(ClsfStatus::InvalidArgument, e))
}

/// Classifiability limit with a k-nearest neighborhood.
///
/// `metric` is one of `l1|l2|chebyshev|hamming|canberra|braycurtis`.
///
/// # Safety
/// `dataset` must be a live dataset handle; `metric` a NUL-terminated
/// string; `out_limit` a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn clsf_estimate_knn(
    dataset: *const ClsfDataset,
    k: usize,
    metric: *const c_char,
    out_limit: *mut f64,
) -> ClsfStatus {
    let spec = parse_metric(metric).and_then(|m| {
        NeighborhoodSpec::k_nearest(k, m).map_err(|e| fail(ClsfStatus::InvalidArgument, e))
    });
    estimate_with(dataset, spec, out_limit)
}

/// Classifiability limit with a strict radius neighborhood.
///
/// # Safety
/// Same contract as [`clsf_estimate_knn`].
#[no_mangle]
pub unsafe extern "C" fn clsf_estimate_radius(
    dataset: *const ClsfDataset,
    theta: f64,
    metric: *const c_char,
    out_limit: *mut f64,
) -> ClsfStatus {
    let spec = parse_metric(metric).and_then(|m| {
        NeighborhoodSpec::radius(theta, m).map_err(|e| fail(ClsfStatus::InvalidArgument, e))
    });
    estimate_with(dataset, spec, out_limit)
}

/// Full estimate report as a JSON string.
///
/// `spec_json` is a neighborhood spec, e.g.
/// `{"mode":"k_nearest","k":16,"metric":"l2"}` or
/// `{"mode":"radius","theta":0.5,"metric":"l1"}`. The returned string must
/// be released with [`clsf_string_free`].
///
/// # Safety
/// `dataset` must be a live dataset handle; `spec_json` a NUL-terminated
/// string; `out_json` a valid pointer to a string slot.
#[no_mangle]
pub unsafe extern "C" fn clsf_estimate_report_json(
    dataset: *const ClsfDataset,
    spec_json: *const c_char,
    out_json: *mut *mut c_char,
) -> ClsfStatus {
    if out_json.is_null() {
        return fail(ClsfStatus::NullPointer, "out_json is null");
    }
    let dataset = match dataset.as_ref() {
        Some(d) => &d.0,
        None => return fail(ClsfStatus::NullPointer, "dataset is null"),
    };
    let text = match cstr_arg(spec_json, "spec_json") {
        Ok(s) => s,
        Err(status) => return status,
    };
    let spec: NeighborhoodSpec = match serde_json::from_str(text) {
        Ok(spec) => spec,
        Err(e) => return fail(ClsfStatus::InvalidArgument, e),
    };
    let report = match estimate(dataset, &spec) {
        Ok(report) => report,
        Err(e) => return fail(ClsfStatus::ComputeError, e),
    };
    let json = serde_json::to_string(&report).expect("report serializes");
    match CString::new(json) {
        Ok(cstring) => {
            *out_json = cstring.into_raw();
            ClsfStatus::Ok
        }
        Err(e) => fail(ClsfStatus::InvalidArgument, e),
    }
}

/// Releases a string returned by this library. Passing null is a no-op.
///
/// # Safety
/// `s` must be a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn clsf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
