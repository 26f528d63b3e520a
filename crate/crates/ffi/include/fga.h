#ifndef FGA_H
#define FGA_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FgaStatus {
  FGA_STATUS_OK = 0,
  FGA_STATUS_NULL_POINTER = 1,
  FGA_STATUS_INVALID_UTF8 = 2,
  FGA_STATUS_PARSE_ERROR = 3,
  FGA_STATUS_DOMAIN_ERROR = 4,
  FGA_STATUS_PANIC = 5,
} FgaStatus;

/**
 * Opaque element of the group algebra.
 */
typedef struct FgaElement FgaElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message on this thread, or null. Owned by the library.
 */
const char *fga_last_error(void);

/**
 * Parses `text` over `rank` generators into a new handle.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a writable pointer.
 */
enum FgaStatus fga_element_parse(const char *text_ptr, uint32_t rank, struct FgaElement **out);

/**
 * # Safety
 * `e` must be null or a handle from this library, not yet freed.
 */
void fga_element_free(struct FgaElement *e);

/**
 * # Safety
 * `s` must be null or a string from this library, not yet freed.
 */
void fga_string_free(char *s);

/**
 * Canonical text form, for example `a^2 + ab^-1 - 1/2`.
 *
 * # Safety
 * `e` must be a live handle and `out` a writable pointer.
 */
enum FgaStatus fga_element_to_string(const struct FgaElement *e, char **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a writable pointer.
 */
enum FgaStatus fga_element_add(const struct FgaElement *a,
                               const struct FgaElement *b,
                               struct FgaElement **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a writable pointer.
 */
enum FgaStatus fga_element_mul(const struct FgaElement *a,
                               const struct FgaElement *b,
                               struct FgaElement **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a writable pointer.
 */
enum FgaStatus fga_element_commutes(const struct FgaElement *a,
                                    const struct FgaElement *b,
                                    bool *out);

/**
 * Structural report on the centralizer of `e` among words of length at
 * most `max_len`, as a JSON object.
 *
 * # Safety
 * `e` must be a live handle and `out` a writable pointer.
 */
enum FgaStatus fga_analyze_json(const struct FgaElement *e,
                                uint32_t rank,
                                uint32_t max_len,
                                char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FGA_H */
