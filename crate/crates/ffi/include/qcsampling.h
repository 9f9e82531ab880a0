#ifndef QCSAMPLING_H
#define QCSAMPLING_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum QcsStatus {
  QCS_STATUS_OK = 0,
  QCS_STATUS_NULL_POINTER = 1,
  QCS_STATUS_INVALID_ARGUMENT = 2,
  QCS_STATUS_OVERFLOW = 3,
  QCS_STATUS_DEGENERATE = 4,
  QCS_STATUS_DIMENSION_MISMATCH = 5,
  QCS_STATUS_PARSE = 6,
  QCS_STATUS_IO = 7,
  QCS_STATUS_PANIC = 8,
} QcsStatus;

/**
 * Opaque RGB image.
 */
typedef struct QcsImage QcsImage;

/**
 * Opaque sample sequence.
 */
typedef struct QcsSequence QcsSequence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *qcs_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *qcs_version(void);

/**
 * Generates `n` samples. `strategy` is one of `periodic`, `quasicrystal`,
 * `farthest`, `jittered`, `quasirandom`, `random`. The quasicrystal sampler
 * uses its default windows.
 *
 * # Safety
 * `strategy` must be a NUL-terminated string and `out` a writable pointer.
 */
enum QcsStatus qcs_sequence_generate(const char *strategy,
                                     size_t n,
                                     uint64_t seed,
                                     struct QcsSequence **out);

/**
 * Number of points, or 0 for a null handle.
 *
 * # Safety
 * `seq` must be null or a live handle.
 */
size_t qcs_sequence_len(const struct QcsSequence *seq);

/**
 * Copies the points as interleaved `x, y` pairs into `xy`, which holds `capacity` doubles.
 *
 * # Safety
 * `seq` must be a live handle and `xy` must point to `capacity` writable doubles.
 */
enum QcsStatus qcs_sequence_points(const struct QcsSequence *seq, double *xy, size_t capacity);

/**
 * # Safety
 * `seq` must be null or a handle not yet freed.
 */
void qcs_sequence_free(struct QcsSequence *seq);

/**
 * Creates an image from `width·height·3` bytes of packed RGB, row-major.
 *
 * # Safety
 * `rgb` must point to `len` readable bytes and `out` must be writable.
 */
enum QcsStatus qcs_image_from_rgb(uint32_t width,
                                  uint32_t height,
                                  const uint8_t *rgb,
                                  size_t len,
                                  struct QcsImage **out);

/**
 * Renders a synthetic image: `spiral`, `ramp`, `checker` or `checker:K`.
 *
 * # Safety
 * `kind` must be a NUL-terminated string and `out` writable.
 */
enum QcsStatus qcs_testimage(const char *kind, uint32_t size, struct QcsImage **out);

/**
 * Reads a PPM (or PNG when built with that feature).
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum QcsStatus qcs_image_load(const char *path, struct QcsImage **out);

/**
 * # Safety
 * `img` must be a live handle and `path` a NUL-terminated string.
 */
enum QcsStatus qcs_image_save(const struct QcsImage *img, const char *path);

/**
 * # Safety
 * `img` must be null or a live handle.
 */
uint32_t qcs_image_width(const struct QcsImage *img);

/**
 * # Safety
 * `img` must be null or a live handle.
 */
uint32_t qcs_image_height(const struct QcsImage *img);

/**
 * Packed RGB bytes, `width·height·3` long, valid while the handle lives.
 *
 * # Safety
 * `img` must be null or a live handle.
 */
const uint8_t *qcs_image_data(const struct QcsImage *img);

/**
 * # Safety
 * `img` must be null or a handle not yet freed.
 */
void qcs_image_free(struct QcsImage *img);

/**
 * Samples `img` at the sequence's points and reconstructs it at full size
 * with `method` = `shepard` or `gouraud`.
 *
 * # Safety
 * Handles must be live, `method` NUL-terminated and `out` writable.
 */
enum QcsStatus qcs_reconstruct(const struct QcsImage *img,
                               const struct QcsSequence *seq,
                               const char *method,
                               struct QcsImage **out);

/**
 * PSNR in dB; identical images give positive infinity.
 *
 * # Safety
 * Handles must be live and `db` writable.
 */
enum QcsStatus qcs_psnr(const struct QcsImage *a, const struct QcsImage *b, double *db);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCSAMPLING_H */
