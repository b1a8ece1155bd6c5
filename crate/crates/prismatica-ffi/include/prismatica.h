#ifndef PRISMATICA_H
#define PRISMATICA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define PRISM_OK 0

/**
 * A required pointer argument was null.
 */
#define PRISM_ERR_NULL -1

/**
 * A string argument was not valid UTF-8.
 */
#define PRISM_ERR_UTF8 -2

/**
 * The input could not be parsed or named nothing known.
 */
#define PRISM_ERR_INVALID -3

/**
 * The computation itself failed.
 */
#define PRISM_ERR_COMPUTE -4

/**
 * A panic was caught at the boundary.
 */
#define PRISM_ERR_PANIC -5

/**
 * Opaque simplicial set.
 */
typedef struct PrismSimplicialSet PrismSimplicialSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a simplicial set from complex JSON (`{"vertices", "simplices"}`) or
 * simplicial-set JSON (`{"generators", ...}`), truncated at least at
 * `truncation`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
int32_t prism_simplicial_set_from_json(const char *json,
                                       size_t truncation,
                                       struct PrismSimplicialSet **out);

/**
 * Builds one of the shipped fixtures (`circle`, `torus7`, ...).
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
int32_t prism_simplicial_set_from_fixture(const char *name,
                                          size_t truncation,
                                          struct PrismSimplicialSet **out);

/**
 * # Safety
 * `s` must come from one of the constructors and not be freed twice.
 */
void prism_simplicial_set_free(struct PrismSimplicialSet *s);

/**
 * Truncation dimension of `s`, or `-1` for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
int64_t prism_simplicial_set_truncation(const struct PrismSimplicialSet *s);

/**
 * Checks the simplicial identities; writes the report as JSON.
 *
 * # Safety
 * `s` must be a live handle and `out_json` a writable pointer.
 */
int32_t prism_verify_identities(const struct PrismSimplicialSet *s, char **out_json);

/**
 * Integral homology of `construction` (`simplicial`, `P`, `Pbar` or `Pf`) up
 * to `max_degree`; writes one `{degree, betti, torsion, reliable}` entry per
 * degree.
 *
 * # Safety
 * `s` must be a live handle, `construction` a NUL-terminated string and
 * `out_json` a writable pointer.
 */
int32_t prism_homology(const struct PrismSimplicialSet *s,
                       const char *construction,
                       size_t max_degree,
                       char **out_json);

/**
 * Message for the last failing call on this thread, or null. Valid until
 * the next call on the same thread.
 */
const char *prism_last_error(void);

/**
 * # Safety
 * `p` must be null or a string returned by this library, freed once.
 */
void prism_string_free(char *p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRISMATICA_H */
