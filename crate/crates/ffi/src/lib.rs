//! C ABI over the `vclde` library.
//!
//! Models are opaque handles created by `vclde_model_*` and released with
//! [`vclde_model_free`]. Every fallible call returns a [`VcldeStatus`]; on
//! failure [`vclde_last_error_message`] describes the error for the calling
//! thread. Strings handed out by the library are released with
//! [`vclde_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use serde_json::{json, Value};
use vclde::hessenberg::{det_leibniz_oracle, HessenbergMatrix, LowerHessenberg};
use vclde::leibnizian::{det_leibnizian, enumerate_seps, DEFAULT_ENUM_LIMIT};
use vclde::scalar::{Float64, ParseScalar, Rational, Ring, ToJson};
use vclde::vclde::{
    casorati, casoratian, green_by, model_from_json, run_verification, solve_by, ConstantModel,
    GreenMethod, SharedModel, SolutionProblem, SolveMethod, TableModel,
};
use vclde::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcldeStatus {
    Ok = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
    LimitExceeded = 3,
    MissingData = 4,
    NullPointer = -1,
    Panic = -2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcldeArith {
    Rational = 0,
    Float64 = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcldeGreenMethod {
    Recurrence = 0,
    Leibnizian = 1,
    Nested = 2,
    Companion = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcldeSolveMethod {
    Green = 0,
    Kittappa = 1,
    Leibnizian = 2,
    Nested = 3,
    Recursion = 4,
}

impl From<VcldeGreenMethod> for GreenMethod {
    fn from(m: VcldeGreenMethod) -> Self {
        match m {
            VcldeGreenMethod::Recurrence => GreenMethod::Recurrence,
            VcldeGreenMethod::Leibnizian => GreenMethod::Leibnizian,
            VcldeGreenMethod::Nested => GreenMethod::Nested,
            VcldeGreenMethod::Companion => GreenMethod::Companion,
        }
    }
}

impl From<VcldeSolveMethod> for SolveMethod {
    fn from(m: VcldeSolveMethod) -> Self {
        match m {
            VcldeSolveMethod::Green => SolveMethod::Green,
            VcldeSolveMethod::Kittappa => SolveMethod::Kittappa,
            VcldeSolveMethod::Leibnizian => SolveMethod::Leibnizian,
            VcldeSolveMethod::Nested => SolveMethod::Nested,
            VcldeSolveMethod::Recursion => SolveMethod::Recursion,
        }
    }
}

enum Inner {
    Rational(SharedModel<Rational>),
    Float64(SharedModel<Float64>),
}

/// Coefficient model handle.
pub struct VcldeModel {
    inner: Inner,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

enum Failure {
    Lib(Error),
    Status(VcldeStatus, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn status_of(e: &Error) -> VcldeStatus {
    match e.exit_code() {
        3 => VcldeStatus::LimitExceeded,
        4 => VcldeStatus::MissingData,
        _ => VcldeStatus::InvalidInput,
    }
}

/// Runs `f`, mapping errors and panics onto status codes.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> VcldeStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VcldeStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_last_error(msg);
            s
        }
        Err(_) => {
            set_last_error("internal panic".into());
            VcldeStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(VcldeStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Lib(Error::Parse(format!("{what} is not valid UTF-8"))))
}

unsafe fn json_arg(p: *const c_char, what: &str) -> Result<Value, Failure> {
    let s = str_arg(p, what)?;
    serde_json::from_str(s).map_err(|e| Failure::Lib(Error::Parse(format!("{what}: {e}"))))
}

unsafe fn model_arg<'a>(p: *const VcldeModel) -> Result<&'a VcldeModel, Failure> {
    p.as_ref().ok_or_else(|| null("model"))
}

fn give_string(s: String, out: *mut *mut c_char) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::Lib(Error::Parse("output holds a NUL byte".into())))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn give_model(inner: Inner, out: *mut *mut VcldeModel) {
    unsafe { *out = Box::into_raw(Box::new(VcldeModel { inner })) };
}

/// Parses a coefficient document (`{"p", "kind", ...}`) with the chosen
/// arithmetic and stores a new handle in `*out`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vclde_model_from_json(
    json: *const c_char,
    arith: VcldeArith,
    out: *mut *mut VcldeModel,
) -> VcldeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let v = json_arg(json, "json")?;
        let inner = match arith {
            VcldeArith::Rational => Inner::Rational(model_from_json(&v)?),
            VcldeArith::Float64 => Inner::Float64(model_from_json(&v)?),
        };
        give_model(inner, out);
        Ok(())
    })
}

/// Constant binary64 coefficients `phi[0..p]`.
///
/// # Safety
/// `phi` must point to `p` doubles and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vclde_model_new_constant_f64(
    phi: *const f64,
    p: usize,
    out: *mut *mut VcldeModel,
) -> VcldeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if phi.is_null() {
            return Err(null("phi"));
        }
        let values = std::slice::from_raw_parts(phi, p).iter().map(|&x| Float64(x)).collect();
        let model: SharedModel<Float64> = Arc::new(ConstantModel::new(values)?);
        give_model(Inner::Float64(model), out);
        Ok(())
    })
}

/// Binary64 coefficient table: `rows` is row-major with `n_rows` rows of
/// `p` values, row `r` holding `phi_1..phi_p` at `t = start + r`.
///
/// # Safety
/// `rows` must point to `n_rows * p` doubles and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vclde_model_new_table_f64(
    rows: *const f64,
    p: usize,
    n_rows: usize,
    start: i64,
    out: *mut *mut VcldeModel,
) -> VcldeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if rows.is_null() {
            return Err(null("rows"));
        }
        let n = p
            .checked_mul(n_rows)
            .ok_or_else(|| Failure::Lib(Error::Parse("table size overflows".into())))?;
        let flat = std::slice::from_raw_parts(rows, n);
        let rows = flat
            .chunks(p.max(1))
            .take(n_rows)
            .map(|r| r.iter().map(|&x| Float64(x)).collect())
            .collect();
        let model: SharedModel<Float64> = Arc::new(TableModel::new(p, start, rows)?);
        give_model(Inner::Float64(model), out);
        Ok(())
    })
}

/// Releases a handle; NULL is ignored.
///
/// # Safety
/// `model` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vclde_model_free(model: *mut VcldeModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Order `p` of the model, or 0 for NULL.
///
/// # Safety
/// `model` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vclde_model_order(model: *const VcldeModel) -> usize {
    match model.as_ref().map(|m| &m.inner) {
        Some(Inner::Rational(m)) => m.order(),
        Some(Inner::Float64(m)) => m.order(),
        None => 0,
    }
}

fn green_scalar<R: Ring>(model: &SharedModel<R>, t: i64, s: i64, method: VcldeGreenMethod) -> Result<R, Failure> {
    Ok(green_by(model.as_ref(), t, s, method.into(), DEFAULT_ENUM_LIMIT)?)
}

/// `H(t,s)` as a double; rational models are evaluated exactly, then
/// rounded.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vclde_green_f64(
    model: *const VcldeModel,
    t: i64,
    s: i64,
    method: VcldeGreenMethod,
    out: *mut f64,
) -> VcldeStatus {
    guard(|| {
        let m = model_arg(model)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = match &m.inner {
            Inner::Rational(r) => green_scalar(r, t, s, method)?.to_f64(),
            Inner::Float64(f) => green_scalar(f, t, s, method)?.value(),
        };
        Ok(())
    })
}

/// `H(t,s)` as text: `"n/d"` for rational models, shortest round-trip
/// decimal for binary64 ones.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer; free the
/// result with [`vclde_string_free`].
#[no_mangle]
pub unsafe extern "C" fn vclde_green_string(
    model: *const VcldeModel,
    t: i64,
    s: i64,
    method: VcldeGreenMethod,
    out: *mut *mut c_char,
) -> VcldeStatus {
    guard(|| {
        let m = model_arg(model)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let text = match &m.inner {
            Inner::Rational(r) => green_scalar(r, t, s, method)?.to_string(),
            Inner::Float64(f) => green_scalar(f, t, s, method)?.to_string(),
        };
        give_string(text, out)
    })
}

fn solve_scalar<R: ParseScalar>(
    model: &SharedModel<R>,
    problem: &Value,
    t: i64,
    method: VcldeSolveMethod,
) -> Result<R, Failure> {
    let problem = SolutionProblem::from_json(model.clone(), problem)?;
    Ok(solve_by(&problem, t, method.into(), DEFAULT_ENUM_LIMIT)?)
}

/// `y_t` for the problem document `{"s", "init", "forcing"}`, as a double.
///
/// # Safety
/// `model` must be a live handle, `problem_json` a NUL-terminated string
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vclde_solve_f64(
    model: *const VcldeModel,
    problem_json: *const c_char,
    t: i64,
    method: VcldeSolveMethod,
    out: *mut f64,
) -> VcldeStatus {
    guard(|| {
        let m = model_arg(model)?;
        let problem = json_arg(problem_json, "problem_json")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = match &m.inner {
            Inner::Rational(r) => solve_scalar(r, &problem, t, method)?.to_f64(),
            Inner::Float64(f) => solve_scalar(f, &problem, t, method)?.value(),
        };
        Ok(())
    })
}

/// `y_t` as text, exact for rational models.
///
/// # Safety
/// As [`vclde_solve_f64`]; free the result with [`vclde_string_free`].
#[no_mangle]
pub unsafe extern "C" fn vclde_solve_string(
    model: *const VcldeModel,
    problem_json: *const c_char,
    t: i64,
    method: VcldeSolveMethod,
    out: *mut *mut c_char,
) -> VcldeStatus {
    guard(|| {
        let m = model_arg(model)?;
        let problem = json_arg(problem_json, "problem_json")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let text = match &m.inner {
            Inner::Rational(r) => solve_scalar(r, &problem, t, method)?.to_string(),
            Inner::Float64(f) => solve_scalar(f, &problem, t, method)?.to_string(),
        };
        give_string(text, out)
    })
}

fn fundamental_doc<R: Ring + ToJson>(model: &SharedModel<R>, t: i64, s: i64) -> Result<Value, Failure> {
    let xi = casorati(model.as_ref(), t, s)?;
    let det = casoratian(model.as_ref(), t, s)?;
    Ok(json!({"t": t, "s": s, "matrix": xi.to_json(), "casoratian": det.to_json()}))
}

/// Fundamental matrix and Casoratian as
/// `{"t", "s", "matrix": [[..]], "casoratian"}`.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer; free the
/// result with [`vclde_string_free`].
#[no_mangle]
pub unsafe extern "C" fn vclde_fundamental_json(
    model: *const VcldeModel,
    t: i64,
    s: i64,
    out: *mut *mut c_char,
) -> VcldeStatus {
    guard(|| {
        let m = model_arg(model)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let doc = match &m.inner {
            Inner::Rational(r) => fundamental_doc(r, t, s)?,
            Inner::Float64(f) => fundamental_doc(f, t, s)?,
        };
        give_string(doc.to_string(), out)
    })
}

/// Symbolic expansion of the order-`order` Hessenbergian as
/// `{"order", "terms": [..], "verdict": "TRUE"}`; `order` is 1 to 12.
///
/// # Safety
/// `out` must be a valid pointer; free the result with
/// [`vclde_string_free`].
#[no_mangle]
pub unsafe extern "C" fn vclde_expand_json(order: usize, out: *mut *mut c_char) -> VcldeStatus {
    const LIMIT: usize = 12;
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if order == 0 {
            return Err(Failure::Lib(Error::Domain("order must be at least 1".into())));
        }
        if order > LIMIT {
            return Err(Failure::Lib(Error::LimitExceeded {
                what: "expansion order",
                requested: order,
                limit: LIMIT,
            }));
        }
        let h = HessenbergMatrix::symbolic(order);
        let terms: Vec<String> = enumerate_seps(order, LIMIT)?.map(|t| t.to_string()).collect();
        let same = det_leibnizian(&h, LIMIT)? == det_leibniz_oracle(&h.to_square(), LIMIT)?;
        let doc = json!({
            "order": order,
            "terms": terms,
            "verdict": if same { "TRUE" } else { "FALSE" },
        });
        give_string(doc.to_string(), out)
    })
}

fn verify_doc<R: ParseScalar + std::fmt::Display>(
    model: &SharedModel<R>,
    problem: Option<&Value>,
    t: i64,
    s: i64,
) -> Result<(Value, bool), Failure> {
    let problem = problem
        .map(|p| SolutionProblem::from_json(model.clone(), p))
        .transpose()?;
    let report = run_verification(model.as_ref(), problem.as_ref(), t, s, DEFAULT_ENUM_LIMIT, None)?;
    let doc = serde_json::to_value(&report).expect("report serializes");
    Ok((doc, report.passed))
}

/// Runs the identity suite; `problem_json` may be NULL. The JSON report is
/// stored in `*out` either way, and the status is
/// `VCLDE_STATUS_VERIFICATION_FAILED` when a check fails.
///
/// # Safety
/// `model` must be a live handle, `problem_json` NULL or NUL-terminated,
/// and `out` a valid pointer; free the result with [`vclde_string_free`].
#[no_mangle]
pub unsafe extern "C" fn vclde_verify_json(
    model: *const VcldeModel,
    problem_json: *const c_char,
    t: i64,
    s: i64,
    out: *mut *mut c_char,
) -> VcldeStatus {
    guard(|| {
        let m = model_arg(model)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let problem = if problem_json.is_null() {
            None
        } else {
            Some(json_arg(problem_json, "problem_json")?)
        };
        let (doc, passed) = match &m.inner {
            Inner::Rational(r) => verify_doc(r, problem.as_ref(), t, s)?,
            Inner::Float64(f) => verify_doc(f, problem.as_ref(), t, s)?,
        };
        give_string(doc.to_string(), out)?;
        if passed {
            Ok(())
        } else {
            Err(Failure::Status(VcldeStatus::VerificationFailed, "verification failed".into()))
        }
    })
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next library call on the same thread.
#[no_mangle]
pub extern "C" fn vclde_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library; NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vclde_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
