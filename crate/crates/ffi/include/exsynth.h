/* C interface for the exsynth exact gate-synthesis library. */

#ifndef EXSYNTH_H
#define EXSYNTH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every ABI call.
typedef enum ExsStatus {
  // Success.
  EXS_STATUS_OK = 0,
  // Failure not covered by a more specific status (parse errors, config
  // errors, indefinite algebras, ...); see `exs_last_error`.
  EXS_STATUS_ERROR = 1,
  // The input's reduced norm has a prime factor outside the gate set's
  // prime support, or a word names an unknown generator label.
  EXS_STATUS_UNSUPPORTED = 2,
  // An ideal with no single generator was encountered (class-number
  // obstruction) or the complexity descent stalled.
  EXS_STATUS_CLASS_NUMBER = 3,
  // A required pointer was NULL or a string was not valid UTF-8.
  EXS_STATUS_BAD_ARGUMENT = 4,
  // A panic was caught at the ABI boundary.
  EXS_STATUS_INTERNAL_ERROR = 5,
} ExsStatus;

// Opaque handle holding a loaded gate set and its synthesis tables.
typedef struct ExsContext ExsContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread.  The pointer stays
// valid until the next failing ABI call on the same thread.
const char *exs_last_error(void);

// Library version as a static string (do not free).
const char *exs_version(void);

// Create a context for a built-in gate set (`"clifford-t"`,
// `"clifford-t-v"`, `"v-basis"`; `"fibonacci"` loads but is rejected here
// because synthesis requires a definite algebra).
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum ExsStatus exs_context_new_builtin(const char *name, struct ExsContext **out);

// Create a context from a JSON gate-set config (same schema as the CLI's
// `--config` files).
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum ExsStatus exs_context_new_from_json(const char *json, struct ExsContext **out);

// Release a context created by one of the constructors.  NULL is ignored.
//
// # Safety
// `ctx` must be NULL or a pointer returned by a constructor, not yet freed.
void exs_context_free(struct ExsContext *ctx);

// Number of ideal generators (gate alphabet size, excluding units) in the
// context's gate set.
//
// # Safety
// `ctx` and `out` must be valid pointers.
enum ExsStatus exs_generator_count(const struct ExsContext *ctx, size_t *out);

// Decompose the quaternion literal `q` into a gate word.  On success,
// `*word_out` receives the word text (one token per line; free it with
// `exs_string_free`).  Nonzero `greedy` selects the greedy strategy instead
// of the canonical chain.
//
// # Safety
// `ctx` must be a live context; `q` a NUL-terminated string; `word_out` a
// valid pointer.
enum ExsStatus exs_synthesize(const struct ExsContext *ctx,
                              const char *q,
                              int32_t greedy,
                              char **word_out);

// Multiply out a gate word (text format) and return the quaternion literal
// of its exact value in `*q_out` (free with `exs_string_free`).
//
// # Safety
// `ctx` must be a live context; `word` a NUL-terminated string; `q_out` a
// valid pointer.
enum ExsStatus exs_evaluate(const struct ExsContext *ctx, const char *word, char **q_out);

// Complexity (minimal generator count) of the quaternion literal `q`.
//
// # Safety
// `ctx` must be a live context; `q` a NUL-terminated string; `out` a valid
// pointer.
enum ExsStatus exs_complexity(const struct ExsContext *ctx, const char *q, uint64_t *out);

// Release a string returned through a `char **` out-parameter.  NULL is
// ignored.
//
// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void exs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXSYNTH_H */
