//! Exercises the C ABI from Rust: context lifecycle, string round-trips,
//! status codes, and the generated header.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use exsynth_ffi::*;

unsafe fn last_error() -> String {
    CStr::from_ptr(exs_last_error()).to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    exs_string_free(p);
    s
}

fn builtin(name: &str) -> *mut ExsContext {
    let cname = CString::new(name).unwrap();
    let mut ctx: *mut ExsContext = ptr::null_mut();
    let st = unsafe { exs_context_new_builtin(cname.as_ptr(), &mut ctx) };
    assert_eq!(st, ExsStatus::Ok, "context for {name}");
    assert!(!ctx.is_null());
    ctx
}

#[test]
fn synthesize_and_evaluate_round_trip() {
    unsafe {
        let ctx = builtin("v-basis");

        let q = CString::new("1+2*i").unwrap();
        let mut word: *mut c_char = ptr::null_mut();
        assert_eq!(
            exs_synthesize(ctx, q.as_ptr(), 0, &mut word),
            ExsStatus::Ok,
            "{}",
            last_error()
        );
        let word_text = take_string(word);
        assert_eq!(word_text, "GEN V1+\n");

        let word_c = CString::new(word_text).unwrap();
        let mut back: *mut c_char = ptr::null_mut();
        assert_eq!(exs_evaluate(ctx, word_c.as_ptr(), &mut back), ExsStatus::Ok);
        assert_eq!(take_string(back), "1+2*i");

        let mut mu = u64::MAX;
        assert_eq!(exs_complexity(ctx, q.as_ptr(), &mut mu), ExsStatus::Ok);
        assert_eq!(mu, 1);

        let mut n = 0usize;
        assert_eq!(exs_generator_count(ctx, &mut n), ExsStatus::Ok);
        assert_eq!(n, 6);

        exs_context_free(ctx);
    }
}

#[test]
fn status_codes_distinguish_failures() {
    unsafe {
        let ctx = builtin("v-basis");

        // Norm with a factor outside the prime support.
        let q = CString::new("1+i").unwrap();
        let mut word: *mut c_char = ptr::null_mut();
        assert_eq!(
            exs_synthesize(ctx, q.as_ptr(), 0, &mut word),
            ExsStatus::Unsupported
        );
        assert!(word.is_null());
        assert!(!last_error().is_empty());

        // Unparseable literal.
        let bad = CString::new("1+**i").unwrap();
        assert_eq!(
            exs_synthesize(ctx, bad.as_ptr(), 0, &mut word),
            ExsStatus::Error
        );

        // Unknown word label.
        let badword = CString::new("GEN NOPE\n").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            exs_evaluate(ctx, badword.as_ptr(), &mut out),
            ExsStatus::Unsupported
        );

        // NULL pointers.
        assert_eq!(
            exs_synthesize(ctx, ptr::null(), 0, &mut word),
            ExsStatus::BadArgument
        );
        assert_eq!(
            exs_synthesize(ctx, q.as_ptr(), 0, ptr::null_mut()),
            ExsStatus::BadArgument
        );

        exs_context_free(ctx);
    }
}

#[test]
fn indefinite_builtin_is_rejected() {
    let cname = CString::new("fibonacci").unwrap();
    let mut ctx: *mut ExsContext = ptr::null_mut();
    let st = unsafe { exs_context_new_builtin(cname.as_ptr(), &mut ctx) };
    assert_eq!(st, ExsStatus::Error);
    assert!(ctx.is_null());
    assert!(unsafe { last_error() }.contains("definite"));
}

#[test]
fn context_from_json_config() {
    let json = r#"{
  "name": "custom",
  "field": "rational",
  "D": "1",
  "b": "1",
  "order_basis": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["1/2","1/2","1/2","1/2"]],
  "primes": [{"p": 5, "ramified": false}],
  "generators": {},
  "unit_generators": {}
}"#;
    unsafe {
        let cjson = CString::new(json).unwrap();
        let mut ctx: *mut ExsContext = ptr::null_mut();
        assert_eq!(
            exs_context_new_from_json(cjson.as_ptr(), &mut ctx),
            ExsStatus::Ok,
            "{}",
            last_error()
        );
        let mut n = 0usize;
        assert_eq!(exs_generator_count(ctx, &mut n), ExsStatus::Ok);
        assert_eq!(n, 6);
        exs_context_free(ctx);
    }
}

#[test]
fn version_and_free_are_total() {
    unsafe {
        let v = CStr::from_ptr(exs_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
        // Freeing NULL is a no-op.
        exs_string_free(ptr::null_mut());
        exs_context_free(ptr::null_mut());
    }
}

#[test]
fn generated_header_exports_the_surface() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/exsynth.h"
    ))
    .expect("header generated by build script");
    for sym in [
        "typedef struct ExsContext ExsContext;",
        "ExsStatus",
        "exs_context_new_builtin",
        "exs_context_new_from_json",
        "exs_context_free",
        "exs_synthesize",
        "exs_evaluate",
        "exs_complexity",
        "exs_generator_count",
        "exs_last_error",
        "exs_string_free",
        "exs_version",
    ] {
        assert!(header.contains(sym), "header lacks `{sym}`");
    }
}
