#ifndef VECCHOOSE_H
#define VECCHOOSE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call.
 */
typedef enum VcStatus {
  VC_STATUS_OK = 0,
  VC_STATUS_NULL_POINTER = 1,
  VC_STATUS_INVALID_UTF8 = 2,
  VC_STATUS_PARSE = 3,
  VC_STATUS_INVALID_ARGUMENT = 4,
  VC_STATUS_BUDGET_EXCEEDED = 5,
  VC_STATUS_NOT_APPLICABLE = 6,
  VC_STATUS_INTERNAL = 7,
} VcStatus;

/**
 * Outcome of [`vc_find_choice`].
 */
typedef enum VcVerdict {
  VC_VERDICT_CHOOSABLE = 0,
  VC_VERDICT_NO_CHOICE = 1,
  VC_VERDICT_INCONCLUSIVE = 2,
} VcVerdict;

/**
 * A graph together with a subspace assignment.
 */
typedef struct VcAssignment VcAssignment;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Release with
 * [`vc_string_free`].
 */
char *vc_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void vc_string_free(char *s);

/**
 * Parses a graph file and an assignment file (the CLI text formats).
 *
 * # Safety
 * Both strings must be nul-terminated; `out` must be writable.
 */
enum VcStatus vc_assignment_parse(const char *graph_text,
                                  const char *assignment_text,
                                  struct VcAssignment **out);

/**
 * Planes on the cycle `C_len` admitting no valid choice; `field` is a
 * prime or `"Q"`.
 *
 * # Safety
 * `field` must be nul-terminated; `out` must be writable.
 */
enum VcStatus vc_construct_cycle(size_t len, const char *field, struct VcAssignment **out);

/**
 * # Safety
 * `h` must be null or a live handle from this library.
 */
void vc_assignment_free(struct VcAssignment *h);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum VcStatus vc_assignment_vertex_count(const struct VcAssignment *h, size_t *out);

/**
 * Graph and assignment texts of a handle.
 *
 * # Safety
 * `h` must be a live handle; both out pointers must be writable.
 */
enum VcStatus vc_assignment_to_text(const struct VcAssignment *h,
                                    char **out_graph,
                                    char **out_assignment);

/**
 * Exhaustive search over a finite field. `node_budget` and `seconds` of
 * 0 mean unlimited. The certificate text is written to
 * `out_certificate` when it is not null.
 *
 * # Safety
 * `h` must be a live handle; `out_verdict` must be writable.
 */
enum VcStatus vc_find_choice(const struct VcAssignment *h,
                             uint64_t node_budget,
                             uint64_t seconds,
                             enum VcVerdict *out_verdict,
                             char **out_certificate);

/**
 * Checks a choice file against the assignment; `out_valid` is set to
 * whether it is valid, and the reason is kept as the last error otherwise.
 *
 * # Safety
 * `h` must be a live handle, `choice_text` nul-terminated, `out_valid`
 * writable.
 */
enum VcStatus vc_verify_choice(const struct VcAssignment *h,
                               const char *choice_text,
                               bool *out_valid);

/**
 * Graph text of `G_φ` for a DIMACS 3-CNF.
 *
 * # Safety
 * `cnf_text` must be nul-terminated; `out_graph` writable.
 */
enum VcStatus vc_reduce_dimacs(const char *cnf_text, char **out_graph);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VECCHOOSE_H */
