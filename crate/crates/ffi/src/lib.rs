//! C ABI over the `hyperrad` solver.
//!
//! Handles (`HrParams`, `HrSteady`, `HrPoint`) are opaque and owned by the
//! caller once returned; each has a matching `*_free`. Every fallible call
//! returns an [`HrStatus`]; on failure a message is available from
//! [`hr_last_error_message`] on the same thread until the next failing call.
//! Panics never cross the boundary and are reported as `HR_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use hyperrad::steady::{converge_cutoff_with, ConvergenceConfig, SteadyStateResult};
use hyperrad::sweep::{figure_preset, parse_config, run_sweep, write_csv_file};
use hyperrad::witness::{classify, radiance_witness_with, semiclassical_field, RadianceClass, RadiancePoint};
use hyperrad::{Error, SystemParams};

mod status;

pub use status::HrStatus;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).ok());
}

fn fail(status: HrStatus, message: impl Into<String>) -> HrStatus {
    set_last_error(message);
    status
}

fn fail_with(err: Error) -> HrStatus {
    fail(HrStatus::from(&err), err.to_string())
}

/// Runs `body`, converting panics into `HR_STATUS_PANIC`.
fn guard(body: impl FnOnce() -> HrStatus) -> HrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(HrStatus::Panic, format!("internal panic: {msg}"))
        }
    }
}

macro_rules! deref {
    ($ptr:expr, $name:literal) => {
        match unsafe { $ptr.as_ref() } {
            Some(v) => v,
            None => return fail(HrStatus::NullPointer, concat!($name, " is null")),
        }
    };
}

macro_rules! out {
    ($ptr:expr, $name:literal) => {
        match unsafe { $ptr.as_mut() } {
            Some(v) => v,
            None => return fail(HrStatus::NullPointer, concat!($name, " is null")),
        }
    };
}

fn c_str<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, HrStatus> {
    if ptr.is_null() {
        return Err(fail(HrStatus::NullPointer, format!("{name} is null")));
    }
    // SAFETY: non-null and, per the API contract, NUL-terminated.
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| fail(HrStatus::InvalidArgument, format!("{name} is not valid UTF-8")))
}

/// Message describing the most recent failure on this thread, or NULL.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

// ---------------------------------------------------------------- parameters

/// Opaque system parameters.
pub struct HrParams(SystemParams);

/// Settable scalar fields of [`HrParams`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HrParam {
    G = 0,
    Kappa = 1,
    Gamma = 2,
    Eta = 3,
    DeltaC = 4,
    DeltaA = 5,
    PhiZ = 6,
}

/// New two-atom resonant parameter set (`κ = 1`, `δ = Δ = 0`).
/// Returns NULL if any value is invalid; see [`hr_last_error_message`].
#[no_mangle]
pub extern "C" fn hr_params_new(g: f64, gamma: f64, eta: f64, phi_z: f64) -> *mut HrParams {
    let mut handle = ptr::null_mut();
    let status = guard(|| {
        let params = SystemParams::new(g, gamma, eta).with_phi_z(phi_z);
        if let Err(e) = params.validate() {
            return fail_with(e);
        }
        handle = Box::into_raw(Box::new(HrParams(params)));
        HrStatus::Ok
    });
    if status == HrStatus::Ok {
        handle
    } else {
        ptr::null_mut()
    }
}

/// # Safety
/// `params` must be NULL or a handle from [`hr_params_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hr_params_free(params: *mut HrParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Sets one field; the handle is left unchanged if the result is invalid.
///
/// # Safety
/// `params` must be a live handle from [`hr_params_new`].
#[no_mangle]
pub unsafe extern "C" fn hr_params_set(params: *mut HrParams, field: HrParam, value: f64) -> HrStatus {
    guard(|| {
        let handle = out!(params, "params");
        let mut p = handle.0;
        match field {
            HrParam::G => p.g = value,
            HrParam::Kappa => p.kappa = value,
            HrParam::Gamma => p.gamma = value,
            HrParam::Eta => p.eta = value,
            HrParam::DeltaC => p.delta_c = value,
            HrParam::DeltaA => p.delta_a = value,
            HrParam::PhiZ => p = p.with_phi_z(value),
        }
        match p.validate() {
            Ok(()) => {
                handle.0 = p;
                HrStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}

/// # Safety
/// `params` must be a live handle; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hr_params_get(params: *const HrParams, field: HrParam, value: *mut f64) -> HrStatus {
    guard(|| {
        let p = deref!(params, "params").0;
        *out!(value, "value") = match field {
            HrParam::G => p.g,
            HrParam::Kappa => p.kappa,
            HrParam::Gamma => p.gamma,
            HrParam::Eta => p.eta,
            HrParam::DeltaC => p.delta_c,
            HrParam::DeltaA => p.delta_a,
            HrParam::PhiZ => p.phi_z,
        };
        HrStatus::Ok
    })
}

/// Number of atoms (1 or 2).
///
/// # Safety
/// `params` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hr_params_set_atoms(params: *mut HrParams, n_atoms: usize) -> HrStatus {
    guard(|| {
        let handle = out!(params, "params");
        let p = handle.0.with_atoms(n_atoms);
        match p.validate() {
            Ok(()) => {
                handle.0 = p;
                HrStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}

fn convergence(rel_tol: f64, max_cutoff: usize) -> ConvergenceConfig {
    let config = ConvergenceConfig::default().with_rel_tol(rel_tol);
    if max_cutoff == 0 {
        config
    } else {
        config.with_max_cutoff(max_cutoff)
    }
}

// -------------------------------------------------------------- steady state

/// Opaque converged steady state.
pub struct HrSteady(SteadyStateResult);

/// Converged steady state of `params`. `max_cutoff = 0` selects the default cap.
///
/// # Safety
/// `params` must be a live handle; `out` must be writable. On success `*out`
/// receives a handle to release with [`hr_steady_free`].
#[no_mangle]
pub unsafe extern "C" fn hr_steady_compute(
    params: *const HrParams,
    rel_tol: f64,
    max_cutoff: usize,
    out: *mut *mut HrSteady,
) -> HrStatus {
    guard(|| {
        let p = deref!(params, "params").0;
        let slot = out!(out, "out");
        *slot = ptr::null_mut();
        match converge_cutoff_with(&p, &convergence(rel_tol, max_cutoff)) {
            Ok(result) => {
                *slot = Box::into_raw(Box::new(HrSteady(result)));
                HrStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}

/// # Safety
/// `steady` must be NULL or a handle from [`hr_steady_compute`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hr_steady_free(steady: *mut HrSteady) {
    if !steady.is_null() {
        drop(Box::from_raw(steady));
    }
}

/// Scalar observables of a steady state. `g2_zero` is NaN when the cavity is
/// (numerically) empty.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HrSteadySummary {
    pub mean_photon: f64,
    pub coherent_amp_re: f64,
    pub coherent_amp_im: f64,
    pub atomic_excitation: f64,
    pub g2_zero: f64,
    pub cutoff_used: usize,
    pub residual: f64,
    /// Side length of the density matrix.
    pub dim: usize,
}

/// # Safety
/// `steady` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hr_steady_summary(steady: *const HrSteady, out: *mut HrSteadySummary) -> HrStatus {
    guard(|| {
        let s = &deref!(steady, "steady").0;
        *out!(out, "out") = HrSteadySummary {
            mean_photon: s.mean_photon,
            coherent_amp_re: s.coherent_amp.re,
            coherent_amp_im: s.coherent_amp.im,
            atomic_excitation: s.atomic_excitation,
            g2_zero: s.g2_zero.unwrap_or(f64::NAN),
            cutoff_used: s.cutoff_used,
            residual: s.residual,
            dim: s.rho.side(),
        };
        HrStatus::Ok
    })
}

/// Copies ρ in row-major order into `re` and `im`, each of length `len`,
/// which must equal `dim²`.
///
/// # Safety
/// `steady` must be a live handle; `re` and `im` must each point to `len`
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn hr_steady_density(
    steady: *const HrSteady,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> HrStatus {
    guard(|| {
        let rho = &deref!(steady, "steady").0.rho;
        let d = rho.side();
        if len != d * d {
            return fail(HrStatus::InvalidArgument, format!("buffer length {len} != {}", d * d));
        }
        if re.is_null() || im.is_null() {
            return fail(HrStatus::NullPointer, "density buffers are null");
        }
        let re = std::slice::from_raw_parts_mut(re, len);
        let im = std::slice::from_raw_parts_mut(im, len);
        for i in 0..d {
            for j in 0..d {
                let z = rho.get(i, j);
                re[i * d + j] = z.re;
                im[i * d + j] = z.im;
            }
        }
        HrStatus::Ok
    })
}

// ------------------------------------------------------------------ witness

/// Radiance regimes in increasing order of `R`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HrRadianceClass {
    ExtremelySubradiant = 0,
    Subradiant = 1,
    Uncorrelated = 2,
    Enhanced = 3,
    Superradiant = 4,
    Hyperradiant = 5,
}

impl From<RadianceClass> for HrRadianceClass {
    fn from(c: RadianceClass) -> Self {
        match c {
            RadianceClass::ExtremelySubradiant => Self::ExtremelySubradiant,
            RadianceClass::Subradiant => Self::Subradiant,
            RadianceClass::Uncorrelated => Self::Uncorrelated,
            RadianceClass::Enhanced => Self::Enhanced,
            RadianceClass::Superradiant => Self::Superradiant,
            RadianceClass::Hyperradiant => Self::Hyperradiant,
        }
    }
}

/// Lowercase token of a class, e.g. `"hyperradiant"`; static storage.
#[no_mangle]
pub extern "C" fn hr_radiance_class_name(class: HrRadianceClass) -> *const c_char {
    let s: &'static str = match class {
        HrRadianceClass::ExtremelySubradiant => "extremely_subradiant\0",
        HrRadianceClass::Subradiant => "subradiant\0",
        HrRadianceClass::Uncorrelated => "uncorrelated\0",
        HrRadianceClass::Enhanced => "enhanced\0",
        HrRadianceClass::Superradiant => "superradiant\0",
        HrRadianceClass::Hyperradiant => "hyperradiant\0",
    };
    s.as_ptr().cast()
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hr_classify(r: f64, band: f64, out: *mut HrRadianceClass) -> HrStatus {
    guard(|| {
        let slot = out!(out, "out");
        match classify(r, band) {
            Ok(c) => {
                *slot = c.into();
                HrStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}

/// Mean-field cavity amplitude of `params`.
///
/// # Safety
/// `params` must be a live handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hr_semiclassical_field(params: *const HrParams, re: *mut f64, im: *mut f64) -> HrStatus {
    guard(|| {
        let p = deref!(params, "params").0;
        let (re, im) = (out!(re, "re"), out!(im, "im"));
        match semiclassical_field(&p) {
            Ok(a) => {
                *re = a.re;
                *im = a.im;
                HrStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}

/// Opaque evaluated radiance point.
pub struct HrPoint(RadiancePoint);

/// Scalar content of an [`HrPoint`]. Absent observables are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct HrPointSummary {
    pub r: f64,
    pub regime: HrRadianceClass,
    pub n1: f64,
    pub n2: f64,
    pub g2: f64,
    pub quantumness: f64,
    pub semiclassical_intensity: f64,
    pub cutoff_used: usize,
    pub residual: f64,
}

/// Evaluates the radiance witness for a two-atom `params`.
/// `max_cutoff = 0` selects the default cap.
///
/// # Safety
/// `params` must be a live handle; `out` must be writable. On success `*out`
/// receives a handle to release with [`hr_point_free`].
#[no_mangle]
pub unsafe extern "C" fn hr_point_compute(
    params: *const HrParams,
    rel_tol: f64,
    max_cutoff: usize,
    class_band: f64,
    out: *mut *mut HrPoint,
) -> HrStatus {
    guard(|| {
        let p = deref!(params, "params").0;
        let slot = out!(out, "out");
        *slot = ptr::null_mut();
        match radiance_witness_with(&p, &convergence(rel_tol, max_cutoff), class_band) {
            Ok(point) => {
                *slot = Box::into_raw(Box::new(HrPoint(point)));
                HrStatus::Ok
            }
            Err(e) => fail_with(e),
        }
    })
}

/// # Safety
/// `point` must be NULL or a handle from [`hr_point_compute`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hr_point_free(point: *mut HrPoint) {
    if !point.is_null() {
        drop(Box::from_raw(point));
    }
}

/// # Safety
/// `point` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hr_point_summary(point: *const HrPoint, out: *mut HrPointSummary) -> HrStatus {
    guard(|| {
        let p = &deref!(point, "point").0;
        *out!(out, "out") = HrPointSummary {
            r: p.r,
            regime: p.regime.into(),
            n1: p.n1,
            n2: p.n2,
            g2: p.g2.unwrap_or(f64::NAN),
            quantumness: p.quantumness.unwrap_or(f64::NAN),
            semiclassical_intensity: p.semiclassical_intensity().unwrap_or(f64::NAN),
            cutoff_used: p.cutoff_used,
            residual: p.residual,
        };
        HrStatus::Ok
    })
}

// ------------------------------------------------------------------- sweeps

fn sweep_to_file(spec: hyperrad::Result<hyperrad::sweep::SweepSpec>, path: &str, workers: usize) -> HrStatus {
    let rows = match spec.and_then(|s| run_sweep(&s, workers)) {
        Ok(rows) => rows,
        Err(e) => return fail_with(e),
    };
    match write_csv_file(&rows, Path::new(path)) {
        Ok(()) => HrStatus::Ok,
        Err(e) => fail_with(e),
    }
}

/// Runs the sweep described by configuration text and writes CSV to `out_path`.
/// `workers = 0` uses one thread per core.
///
/// # Safety
/// `config_text` and `out_path` must be NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn hr_sweep_config_to_csv(
    config_text: *const c_char,
    out_path: *const c_char,
    workers: usize,
) -> HrStatus {
    guard(|| {
        let text = match c_str(config_text, "config_text") {
            Ok(s) => s,
            Err(status) => return status,
        };
        let path = match c_str(out_path, "out_path") {
            Ok(s) => s,
            Err(status) => return status,
        };
        sweep_to_file(parse_config(text), path, workers)
    })
}

/// Runs a named figure preset (e.g. `"fig5"`) and writes CSV to `out_path`.
///
/// # Safety
/// `name` and `out_path` must be NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn hr_figure_to_csv(name: *const c_char, out_path: *const c_char, workers: usize) -> HrStatus {
    guard(|| {
        let name = match c_str(name, "name") {
            Ok(s) => s,
            Err(status) => return status,
        };
        let path = match c_str(out_path, "out_path") {
            Ok(s) => s,
            Err(status) => return status,
        };
        sweep_to_file(figure_preset(name), path, workers)
    })
}
