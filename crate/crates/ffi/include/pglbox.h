/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef PGLBOX_H
#define PGLBOX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PglStatus {
  PGL_STATUS_OK = 0,
  PGL_STATUS_NULL_POINTER = 1,
  PGL_STATUS_DOMAIN = 2,
  PGL_STATUS_RANGE = 3,
  PGL_STATUS_NO_INVERSE = 4,
  PGL_STATUS_REDUCIBLE = 5,
  PGL_STATUS_NOT_PRIMITIVE = 6,
  PGL_STATUS_DEGENERATE = 7,
  PGL_STATUS_NOT_BIJECTIVE = 8,
  PGL_STATUS_LENGTH = 9,
  PGL_STATUS_SELECTOR = 10,
  PGL_STATUS_NON_FINITE = 11,
  PGL_STATUS_TRAJECTORY = 12,
  PGL_STATUS_FORMAT = 13,
  PGL_STATUS_IMAGE = 14,
  PGL_STATUS_KEY = 15,
  PGL_STATUS_IO = 16,
  PGL_STATUS_PANIC = 17,
} PglStatus;

/**
 * Opaque cipher key handle.
 */
typedef struct PglKey PglKey;

/**
 * Opaque S-box handle.
 */
typedef struct PglSBox PglSBox;

typedef struct PglStrength {
  double nl_mean;
  uint32_t nl_min;
  double bic_nl_mean;
  double bic_sac_mean;
  double sac_mean;
  uint32_t lp_max_count;
  double lp_bias;
  uint32_t dp_max_count;
  double dp;
} PglStrength;

typedef struct PglLorenzParams {
  double a;
  double b;
  double c;
  double x0;
  double y0;
  double z0;
  double step;
  size_t burn_in;
} PglLorenzParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *pgl_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pgl_version(void);

/**
 * Builds the LFT S-box `(a z + b) / (c z + d)` over primitive polynomial
 * `poly_index` (1..=16).
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum PglStatus pgl_sbox_build(uint8_t a,
                              uint8_t b,
                              uint8_t c,
                              uint8_t d,
                              uint32_t poly_index,
                              struct PglSBox **out);

/**
 * Wraps an external 256-byte table; fails with `NOT_BIJECTIVE` otherwise.
 *
 * # Safety
 * `table` must point to 256 readable bytes and `out` be valid for writing.
 */
enum PglStatus pgl_sbox_from_table(const uint8_t *table, struct PglSBox **out);

/**
 * # Safety
 * `s` must be null or a handle from this library not yet freed.
 */
void pgl_sbox_free(struct PglSBox *s);

/**
 * Copies the forward (or, with `inverse` set, the inverse) table into `out`.
 *
 * # Safety
 * `s` must be a live handle and `out` must have room for 256 bytes.
 */
enum PglStatus pgl_sbox_table(const struct PglSBox *s, bool inverse, uint8_t *out);

/**
 * Strength criteria of any 256-byte table (bijective or not).
 *
 * # Safety
 * `table` must point to 256 readable bytes and `out` be valid for writing.
 */
enum PglStatus pgl_analyze_table(const uint8_t *table, struct PglStrength *out);

/**
 * Default coefficients (10, 28, 8/3), step 0.01, burn-in 100.
 */
struct PglLorenzParams pgl_lorenz_default(double x0, double y0, double z0);

/**
 * Creates a key. `lft` (4 bytes) may be null for the default (32, 22, 11, 8);
 * `poly_indices` may be null for all 16 primitive polynomials.
 *
 * # Safety
 * Non-null pointers must be readable for the stated lengths; `out` writable.
 */
enum PglStatus pgl_key_new(const struct PglLorenzParams *params,
                           const uint8_t *lft,
                           const uint32_t *poly_indices,
                           size_t poly_count,
                           struct PglKey **out);

/**
 * Reads a `name = value` key file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum PglStatus pgl_key_from_file(const char *path, struct PglKey **out);

/**
 * # Safety
 * `key` must be a live handle and `out` writable.
 */
enum PglStatus pgl_key_lorenz(const struct PglKey *key, struct PglLorenzParams *out);

/**
 * # Safety
 * `key` must be null or a handle from this library not yet freed.
 */
void pgl_key_free(struct PglKey *key);

/**
 * Encrypts an interleaved row-major image of `width * height * channels` bytes
 * (`channels` 1 or 3). `input` and `output` may be the same buffer.
 *
 * # Safety
 * Both buffers must hold `width * height * channels` bytes.
 */
enum PglStatus pgl_encrypt(const struct PglKey *key,
                           size_t width,
                           size_t height,
                           size_t channels,
                           const uint8_t *input,
                           uint8_t *output);

/**
 * Inverse of [`pgl_encrypt`].
 *
 * # Safety
 * Both buffers must hold `width * height * channels` bytes.
 */
enum PglStatus pgl_decrypt(const struct PglKey *key,
                           size_t width,
                           size_t height,
                           size_t channels,
                           const uint8_t *input,
                           uint8_t *output);

/**
 * NPCR and UACI, in percent, between two equal-length byte buffers.
 *
 * # Safety
 * `a` and `b` must hold `len` bytes; `npcr` and `uaci` must be writable.
 */
enum PglStatus pgl_npcr_uaci(const uint8_t *a,
                             const uint8_t *b,
                             size_t len,
                             double *npcr,
                             double *uaci);

/**
 * Shannon entropy in bits of the byte histogram of `data`.
 *
 * # Safety
 * `data` must hold `len` bytes and `out` be writable.
 */
enum PglStatus pgl_entropy(const uint8_t *data, size_t len, double *out);

/**
 * Closed-form numbers of irreducible and primitive binary polynomials of degree `n` (1..=16).
 *
 * # Safety
 * `irreducible` and `primitive` must be writable.
 */
enum PglStatus pgl_poly_counts(uint32_t n, uint64_t *irreducible, uint64_t *primitive);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PGLBOX_H */
