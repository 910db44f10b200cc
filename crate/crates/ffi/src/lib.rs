//! C ABI for the exsynth library.
//!
//! The interface exchanges data as NUL-terminated UTF-8 strings in the same
//! formats the `exsynth` CLI uses: quaternion literals (`"1+2*i"`,
//! `"2+w/2+w/2*j"`) and gate words (one `GEN`/`UNIT`/`CENTRAL` token per
//! line).  All allocation crosses the boundary explicitly: strings returned
//! through `char **` out-parameters must be released with
//! [`exs_string_free`], contexts with [`exs_context_free`].
//!
//! Every function returns an [`ExsStatus`]; on any status other than
//! `Ok`, [`exs_last_error`] returns a thread-local message describing the
//! failure.  Panics are caught at the boundary and reported as
//! `InternalError`.
//!
//! The C header is generated into `include/exsynth.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use exsynth::config::GateSet;
use exsynth::literal::{parse_quaternion, print_quaternion};
use exsynth::synth::{GateWord, SynthesisContext};
use exsynth::Error;

/// Result of every ABI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExsStatus {
    /// Success.
    Ok = 0,
    /// Failure not covered by a more specific status (parse errors, config
    /// errors, indefinite algebras, ...); see `exs_last_error`.
    Error = 1,
    /// The input's reduced norm has a prime factor outside the gate set's
    /// prime support, or a word names an unknown generator label.
    Unsupported = 2,
    /// An ideal with no single generator was encountered (class-number
    /// obstruction) or the complexity descent stalled.
    ClassNumber = 3,
    /// A required pointer was NULL or a string was not valid UTF-8.
    BadArgument = 4,
    /// A panic was caught at the ABI boundary.
    InternalError = 5,
}

/// Opaque handle holding a loaded gate set and its synthesis tables.
pub struct ExsContext {
    gate_set: GateSet,
    ctx: SynthesisContext,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(sanitized).unwrap());
}

fn status_of(err: &Error) -> ExsStatus {
    match err.exit_code() {
        2 => ExsStatus::Unsupported,
        3 => ExsStatus::ClassNumber,
        _ => ExsStatus::Error,
    }
}

fn fail(err: &Error) -> ExsStatus {
    set_error(&err.to_string());
    status_of(err)
}

/// Run `f` with panics converted into `InternalError`.
fn guarded<F: FnOnce() -> ExsStatus>(f: F) -> ExsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            ExsStatus::InternalError
        }
    }
}

/// # Safety
/// `ptr` must be NULL or a NUL-terminated string.
unsafe fn utf8_arg<'a>(ptr: *const c_char) -> Result<&'a str, ExsStatus> {
    if ptr.is_null() {
        set_error("NULL string argument");
        return Err(ExsStatus::BadArgument);
    }
    match CStr::from_ptr(ptr).to_str() {
        Ok(s) => Ok(s),
        Err(_) => {
            set_error("string argument is not valid UTF-8");
            Err(ExsStatus::BadArgument)
        }
    }
}

fn return_string(out: *mut *mut c_char, s: String) -> ExsStatus {
    let c = CString::new(s.replace('\0', " ")).unwrap();
    unsafe { *out = c.into_raw() };
    ExsStatus::Ok
}

unsafe fn build_context(
    loaded: Result<GateSet, Error>,
    out: *mut *mut ExsContext,
) -> ExsStatus {
    if out.is_null() {
        set_error("NULL out-parameter");
        return ExsStatus::BadArgument;
    }
    let gate_set = match loaded {
        Ok(gs) => gs,
        Err(e) => return fail(&e),
    };
    match gate_set.context() {
        Ok(ctx) => {
            *out = Box::into_raw(Box::new(ExsContext { gate_set, ctx }));
            ExsStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Message for the most recent failure on this thread.  The pointer stays
/// valid until the next failing ABI call on the same thread.
#[no_mangle]
pub extern "C" fn exs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string (do not free).
#[no_mangle]
pub extern "C" fn exs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Create a context for a built-in gate set (`"clifford-t"`,
/// `"clifford-t-v"`, `"v-basis"`; `"fibonacci"` loads but is rejected here
/// because synthesis requires a definite algebra).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn exs_context_new_builtin(
    name: *const c_char,
    out: *mut *mut ExsContext,
) -> ExsStatus {
    guarded(|| {
        let name = match utf8_arg(name) {
            Ok(s) => s,
            Err(st) => return st,
        };
        build_context(GateSet::builtin(name), out)
    })
}

/// Create a context from a JSON gate-set config (same schema as the CLI's
/// `--config` files).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn exs_context_new_from_json(
    json: *const c_char,
    out: *mut *mut ExsContext,
) -> ExsStatus {
    guarded(|| {
        let json = match utf8_arg(json) {
            Ok(s) => s,
            Err(st) => return st,
        };
        build_context(GateSet::from_json(json), out)
    })
}

/// Release a context created by one of the constructors.  NULL is ignored.
///
/// # Safety
/// `ctx` must be NULL or a pointer returned by a constructor, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn exs_context_free(ctx: *mut ExsContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Number of ideal generators (gate alphabet size, excluding units) in the
/// context's gate set.
///
/// # Safety
/// `ctx` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn exs_generator_count(
    ctx: *const ExsContext,
    out: *mut usize,
) -> ExsStatus {
    guarded(|| {
        if ctx.is_null() || out.is_null() {
            set_error("NULL argument");
            return ExsStatus::BadArgument;
        }
        let c = &(*ctx).ctx;
        *out = c.leaves.len() + c.ram_gens.len();
        ExsStatus::Ok
    })
}

/// Decompose the quaternion literal `q` into a gate word.  On success,
/// `*word_out` receives the word text (one token per line; free it with
/// `exs_string_free`).  Nonzero `greedy` selects the greedy strategy instead
/// of the canonical chain.
///
/// # Safety
/// `ctx` must be a live context; `q` a NUL-terminated string; `word_out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn exs_synthesize(
    ctx: *const ExsContext,
    q: *const c_char,
    greedy: i32,
    word_out: *mut *mut c_char,
) -> ExsStatus {
    guarded(|| {
        if ctx.is_null() || word_out.is_null() {
            set_error("NULL argument");
            return ExsStatus::BadArgument;
        }
        let input = match utf8_arg(q) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let handle = &*ctx;
        let quat = match parse_quaternion(handle.gate_set.ring, input) {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        let word = if greedy != 0 {
            handle.ctx.synthesize_greedy(&quat)
        } else {
            handle.ctx.synthesize_chain(&quat)
        };
        match word {
            Ok(w) => return_string(word_out, w.to_text()),
            Err(e) => fail(&e),
        }
    })
}

/// Multiply out a gate word (text format) and return the quaternion literal
/// of its exact value in `*q_out` (free with `exs_string_free`).
///
/// # Safety
/// `ctx` must be a live context; `word` a NUL-terminated string; `q_out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn exs_evaluate(
    ctx: *const ExsContext,
    word: *const c_char,
    q_out: *mut *mut c_char,
) -> ExsStatus {
    guarded(|| {
        if ctx.is_null() || q_out.is_null() {
            set_error("NULL argument");
            return ExsStatus::BadArgument;
        }
        let text = match utf8_arg(word) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let handle = &*ctx;
        let parsed = match GateWord::parse(handle.gate_set.ring, text) {
            Ok(w) => w,
            Err(e) => return fail(&e),
        };
        match handle.ctx.evaluate(&parsed) {
            Ok(q) => return_string(q_out, print_quaternion(&q)),
            Err(e) => fail(&e),
        }
    })
}

/// Complexity (minimal generator count) of the quaternion literal `q`.
///
/// # Safety
/// `ctx` must be a live context; `q` a NUL-terminated string; `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn exs_complexity(
    ctx: *const ExsContext,
    q: *const c_char,
    out: *mut u64,
) -> ExsStatus {
    guarded(|| {
        if ctx.is_null() || out.is_null() {
            set_error("NULL argument");
            return ExsStatus::BadArgument;
        }
        let input = match utf8_arg(q) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let handle = &*ctx;
        let quat = match parse_quaternion(handle.gate_set.ring, input) {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        match handle.ctx.complexity(&quat) {
            Ok(mu) => {
                *out = mu;
                ExsStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Release a string returned through a `char **` out-parameter.  NULL is
/// ignored.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn exs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
