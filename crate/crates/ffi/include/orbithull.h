#ifndef ORBITHULL_H
#define ORBITHULL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum OhStatus {
  OH_STATUS_OK = 0,
  /*
   A required pointer was null or a string was not UTF-8.
   */
  OH_STATUS_INVALID_ARGUMENT = 1,
  /*
   Malformed JSON or element syntax.
   */
  OH_STATUS_PARSE_ERROR = 2,
  /*
   Well-formed input that violates a precondition.
   */
  OH_STATUS_VALIDATION_ERROR = 3,
  /*
   The requested computation needs a finite Weyl group.
   */
  OH_STATUS_FINITE_TYPE_REQUIRED = 4,
  /*
   A verification ran and found a mismatch.
   */
  OH_STATUS_CHECK_FAILED = 5,
  /*
   An internal panic was caught at the boundary.
   */
  OH_STATUS_INTERNAL = 6,
} OhStatus;

/*
 Opaque validated problem: a realization and a dominant point.
 */
typedef struct OhProblem OhProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses and validates a problem document.

 # Safety
 `json` is a NUL-terminated string; `out` is valid for writes.
 */
enum OhStatus oh_problem_new(const char *json, struct OhProblem **out);

/*
 Releases a handle. Null is a no-op.

 # Safety
 `p` is null or was returned by [`oh_problem_new`] and not yet freed.
 */
void oh_problem_free(struct OhProblem *p);

/*
 Classification report as JSON.

 # Safety
 `p` is a live handle; `out` is valid for writes.
 */
enum OhStatus oh_classify(const struct OhProblem *p, char **out);

/*
 Number of faces reachable within `bound`, and whether that is all of them.

 # Safety
 `p` is a live handle; `count` and `complete` are valid for writes.
 */
enum OhStatus oh_face_count(const struct OhProblem *p,
                            uintptr_t bound,
                            uintptr_t *count,
                            bool *complete);

/*
 Faces within `bound` as a JSON array of `{"sigma", "I", "dim"}`.

 # Safety
 `p` is a live handle; `out` is valid for writes.
 */
enum OhStatus oh_faces_json(const struct OhProblem *p, uintptr_t bound, char **out);

/*
 Product of two Renner monoid elements given in the JSON element syntax.

 # Safety
 `p` is a live handle; `x`, `y` are NUL-terminated; `out` is valid for writes.
 */
enum OhStatus oh_renner_multiply(const struct OhProblem *p,
                                 const char *x,
                                 const char *y,
                                 char **out);

/*
 Certifies the face lattice against exact convex hulls over the document's slice.
 Returns [`OhStatus::CheckFailed`] on any mismatch.

 # Safety
 `p` is a live handle.
 */
enum OhStatus oh_oracle(const struct OhProblem *p);

/*
 Message for the last failure on this thread, or null. Valid until the next call.
 */
const char *oh_last_error(void);

/*
 Releases a string returned by this library. Null is a no-op.

 # Safety
 `s` is null or was returned by this library and not yet freed.
 */
void oh_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBITHULL_H */
